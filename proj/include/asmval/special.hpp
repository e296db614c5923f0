#pragma once

// Complex special functions: Bernoulli numbers, Hurwitz zeta with a
// 1-periodic second argument, Riemann zeta, real log-gamma.

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace asmval::special {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

/// Throws std::domain_error if either component is NaN or infinite.
Complex require_finite(Complex z, const char* what);

/// Largest table accepted by bernoulli_numbers.
inline constexpr int max_bernoulli_count = 64;

/// Exact B_0 .. B_{count-1} from sum_{j=0}^{m} C(m+1, j) B_j = 0, with B_1 = -1/2.
class BernoulliTable {
 public:
  explicit BernoulliTable(int count);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  const Rational& exact(int n) const { return values_.at(static_cast<std::size_t>(n)); }
  double value(int n) const;

 private:
  std::vector<Rational> values_;
};

/// Throws std::invalid_argument unless 1 <= count <= max_bernoulli_count.
BernoulliTable bernoulli_numbers(int count);

/// Accuracy envelope on |Im s| for the zeta evaluators.
inline constexpr double zeta_envelope_im = 5000.0;

/// Bernoulli correction terms used after the direct sum.
inline constexpr int euler_maclaurin_tail_terms = 24;

struct ZetaValue {
  Complex value;
  bool within_envelope = true;
};

/// Maps alpha to (0, 1] using zeta(s, alpha) = zeta(s, alpha + 1); integers map to 1.
double reduce_hurwitz_argument(double alpha);

/// Number of directly summed terms for argument s.
int euler_maclaurin_cutoff(Complex s);

/// Euler-Maclaurin evaluation with explicit cutoff; alpha must already lie in (0, 1].
Complex hurwitz_zeta_em(Complex s, double alpha, int cutoff, int tail_terms = euler_maclaurin_tail_terms);

/// zeta(s, alpha) = sum_{n > -alpha} (n + alpha)^{-s}, continued analytically.
/// Throws std::domain_error at s = 1 or for non-finite input.
ZetaValue hurwitz_zeta_checked(Complex s, double alpha);
Complex hurwitz_zeta(Complex s, double alpha);

Complex riemann_zeta(Complex s);

/// log Gamma(x) for x > 0; throws std::domain_error otherwise.
double log_gamma_real(double x);

}  // namespace asmval::special
