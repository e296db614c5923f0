#include "asmval/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace asmval::special {

namespace {

using boost::multiprecision::cpp_int;

// B_{2j} / (2j)! for j = 0 .. euler_maclaurin_tail_terms.
const std::vector<double>& em_coefficients() {
  static const std::vector<double> coeffs = [] {
    const BernoulliTable table(2 * euler_maclaurin_tail_terms + 1);
    std::vector<double> out(euler_maclaurin_tail_terms + 1);
    cpp_int factorial = 1;
    for (int n = 0; n <= 2 * euler_maclaurin_tail_terms; ++n) {
      if (n > 0) factorial *= n;
      if (n % 2 == 0) {
        const Rational ratio = table.exact(n) / Rational(factorial);
        out[static_cast<std::size_t>(n / 2)] = ratio.convert_to<double>();
      }
    }
    return out;
  }();
  return coeffs;
}

}  // namespace

Complex require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::domain_error(std::string("non-finite complex value: ") + what);
  }
  return z;
}

BernoulliTable::BernoulliTable(int count) {
  if (count < 1 || count > max_bernoulli_count) {
    throw std::invalid_argument("Bernoulli table size must be in [1, " +
                                std::to_string(max_bernoulli_count) + "]");
  }
  values_.reserve(static_cast<std::size_t>(count));
  values_.emplace_back(1);
  // binomial[j] holds C(m+1, j) for the current m.
  std::vector<cpp_int> binomial{1, 1};
  for (int m = 1; m < count; ++m) {
    std::vector<cpp_int> next(binomial.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t j = 1; j + 1 < next.size(); ++j) next[j] = binomial[j - 1] + binomial[j];
    binomial = std::move(next);

    Rational acc = 0;
    for (int j = 0; j < m; ++j) acc += Rational(binomial[static_cast<std::size_t>(j)]) * values_[j];
    values_.push_back(-acc / Rational(m + 1));
  }
}

double BernoulliTable::value(int n) const { return exact(n).convert_to<double>(); }

BernoulliTable bernoulli_numbers(int count) { return BernoulliTable(count); }

double reduce_hurwitz_argument(double alpha) {
  if (!std::isfinite(alpha)) throw std::domain_error("non-finite Hurwitz argument");
  const double r = alpha - std::floor(alpha);
  return r == 0.0 ? 1.0 : r;
}

int euler_maclaurin_cutoff(Complex s) {
  const double t = std::abs(s.imag());
  return std::max(32, static_cast<int>(std::ceil(t / std::numbers::pi)) + 16);
}

Complex hurwitz_zeta_em(Complex s, double alpha, int cutoff, int tail_terms) {
  if (tail_terms < 0 || tail_terms > euler_maclaurin_tail_terms) {
    throw std::invalid_argument("unsupported Euler-Maclaurin tail length");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");

  Complex sum = 0.0;
  for (int n = cutoff - 1; n >= 0; --n) sum += std::exp(-s * std::log(n + alpha));

  const double a = cutoff + alpha;
  const Complex a_pow = std::exp(-s * std::log(a));  // a^{-s}
  sum += a * a_pow / (s - 1.0);
  sum += 0.5 * a_pow;

  const auto& coeffs = em_coefficients();
  Complex rising = s;               // s (s+1) ... (s+2j-2)
  Complex power = a_pow / a;        // a^{-s-2j+1}
  for (int j = 1; j <= tail_terms; ++j) {
    sum += coeffs[static_cast<std::size_t>(j)] * rising * power;
    rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    power /= a * a;
  }
  return sum;
}

ZetaValue hurwitz_zeta_checked(Complex s, double alpha) {
  require_finite(s, "zeta argument s");
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta has a pole at s = 1");
  const double reduced = reduce_hurwitz_argument(alpha);
  const Complex value = hurwitz_zeta_em(s, reduced, euler_maclaurin_cutoff(s));
  return {require_finite(value, "zeta value"), std::abs(s.imag()) <= zeta_envelope_im};
}

Complex hurwitz_zeta(Complex s, double alpha) { return hurwitz_zeta_checked(s, alpha).value; }

Complex riemann_zeta(Complex s) { return hurwitz_zeta(s, 1.0); }

double log_gamma_real(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("log_gamma_real needs finite x > 0");

  // Lanczos approximation with g = 7, n = 9: Paul Godfrey's coefficient set,
  // as tabulated in the Wikipedia article "Lanczos approximation".
  static constexpr double g = 7.0;
  static constexpr std::array<double, 9> coeff = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma_real(1.0 - x);
  }
  const double z = x - 1.0;
  double series = coeff[0];
  for (std::size_t i = 1; i < coeff.size(); ++i) series += coeff[i] / (z + static_cast<double>(i));
  const double t = z + g + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace asmval::special
