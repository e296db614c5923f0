#pragma once

// Closed-form analytic side of v_p(T(N)): Fourier coefficients of the periodic
// fluctuations, the exact asymptotic expansions for the three residue classes
// of p mod 3, Delange's formula for prefix digit sums, the Dirichlet series
// Lambda_j(s), and the identities tying the intermediate residue computations
// back to the final coefficients.

#include <array>
#include <optional>
#include <vector>

#include "asmval/exact.hpp"
#include "asmval/prime.hpp"
#include "asmval/special.hpp"

namespace asmval::analytic {

using exact::Count;
using exact::ValuationQuery;
using special::Complex;

/// Default truncation order for fluctuation series.
inline constexpr int default_fourier_terms = 400;

/// Largest |Im| tolerated on a supposedly real fluctuation value.
inline constexpr double realness_tolerance = 1e-9;

/// 2 k pi i / log p. `k` may be a half-integer (chi_{k/2} = k pi i / log p);
/// throws std::invalid_argument for k = 0 or a non-half-integer k.
Complex chi(double k, Prime p);

/// Fourier coefficient c_k of Phi; p = 3 uses its own formula.
Complex coeff_c(int k, Prime p);

/// Fourier coefficient d_{k,j} of psi_j, j in {-1, 0, 1}. For j = 0 this is the
/// sum d_{k,1} + d_{k,-1}. Throws std::domain_error for p = 3.
Complex coeff_d(int k, int j, Prime p);

/// Closed form of d_{k,0} via 3^chi zeta(chi); zero for odd k when p = -1 (mod 3).
Complex coeff_d0_closed_form(int k, Prime p);

/// Delange coefficients c_k^(1) (k != 0) and c_0^(1).
Complex coeff_c_delange(int k, Prime p);
double c0_delange(Prime p);

/// Coefficient of Phi^(2), the fluctuation produced by the residues at chi_k.
Complex phi2_coeff(int k, Prime p);

/// c_k rebuilt from the pieces: (2^{1+chi_k} - 1) c_k^(1) / (p-1) + c_k^(2) for p != 3,
/// and (2^{chi_k} - 1) c_k^(1) for p = 3.
Complex coeff_c_assembled(int k, Prime p);

/// Truncated Fourier series sum_{1<=|k|<=K} a_k e^{2 pi i k x / period}.
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(int period, std::vector<Complex> positive, std::vector<Complex> negative);

  int period() const noexcept { return period_; }
  int order() const noexcept { return static_cast<int>(positive_.size()); }

  /// a_k for 1 <= |k| <= order().
  Complex coefficient(int k) const;
  void set_coefficient(int k, Complex value);

  /// Summed in (+k, -k) pairs with k ascending.
  Complex eval_complex(double x) const;

  /// Real part of eval_complex; throws std::runtime_error if |Im| > realness_tolerance.
  double eval(double x) const;

 private:
  int period_ = 1;
  std::vector<Complex> positive_;
  std::vector<Complex> negative_;
};

/// Phi and (for p != 3) psi_{-1}, psi_0, psi_1 truncated at order K.
struct FourierCoefficientSet {
  Prime p{2};
  PrimeClass residue_class = PrimeClass::minus_one_mod_three;
  int order = 0;
  FourierSeries phi;
  std::optional<std::array<FourierSeries, 3>> psi;  // indexed by j + 1
  std::vector<bool> within_envelope;                // per k = 1..order

  const FourierSeries& psi_series(int j) const;

  /// OpenMP-parallel over k.
  static FourierCoefficientSet build(Prime p, int order = default_fourier_terms);

  /// Serial reference; bitwise identical to build().
  static FourierCoefficientSet build_serial(Prime p, int order = default_fourier_terms);
};

/// Phi_K(x).
double phi_eval(double x, const FourierCoefficientSet& coeffs);

/// Psi_K(N) = (N+1/3) psi_1(log_p(N+1/3)) + (N-1/3) psi_{-1}(log_p(N-1/3)) - N psi_0(log_p N).
double psi_big_eval(Count n, const FourierCoefficientSet& coeffs);

/// g_j(N) = (1 + j/(3N)) N log_p(1 + j/(3N)) and its limit j / (3 log p).
double g_j(Count n, int j, Prime p);
double g_j_limit(int j, Prime p);

/// Constant-order term of the expansion (p != 3) and its N -> infinity limit.
double f0(Count n, Prime p);
double f0_limit(Prime p);

/// f_0^(2): constant-order part contributed by the residue at s = 0.
double f0_residue_part(Count n, Prime p);

/// Coefficient of log_p N in the expansion: 1/9 for p = 1 (mod 3), else 0.
double log_coefficient(Prime p);

/// Value of the remainder integral, 2p / (9(p-1)).
double remainder_constant(Prime p);

/// Coefficient of N: log_p(2/sqrt 3), or log_3 2 - 1/2 for p = 3.
double main_term_coefficient(Prime p);

/// The same coefficient summed from the Delange constant, the residue at
/// s = 0 and the linear part of the Mellin-Perron rewrite.
double main_term_coefficient_assembled(Prime p);

struct AnalyticDecomposition {
  double main_term = 0.0;
  double phi_term = 0.0;
  double psi_term = 0.0;
  double log_term = 0.0;
  double f0_term = 0.0;
  /// main + phi + psi + log + f0, added left to right.
  double total = 0.0;
};

AnalyticDecomposition theorem_rhs(const ValuationQuery& q, const FourierCoefficientSet& coeffs);
AnalyticDecomposition theorem_rhs(const ValuationQuery& q, int order = default_fourier_terms);

/// theorem_rhs for every n in [n_min, n_max]; OpenMP-parallel over n.
std::vector<AnalyticDecomposition> theorem_rhs_sweep(Count n_min, Count n_max,
                                                     const FourierCoefficientSet& coeffs);
std::vector<AnalyticDecomposition> theorem_rhs_sweep_serial(Count n_min, Count n_max,
                                                            const FourierCoefficientSet& coeffs);

/// Delange's expansion of sum_{n<N} S_p(n) with Phi^(1) truncated at order K.
class DelangeExpansion {
 public:
  DelangeExpansion(Prime p, int order = default_fourier_terms);

  const FourierSeries& fluctuation() const noexcept { return phi1_; }
  double rhs(Count n) const;

 private:
  Prime p_;
  double c0_;
  FourierSeries phi1_;
};

double delange_rhs(Count n, Prime p, int order = default_fourier_terms);

/// Lambda_j(s) = (zeta(s, j/3) + p^s zeta(s, u j/3)) / (p^{2s} - 1).
/// Throws std::domain_error for p = 3, s = 1 or p^{2s} = 1.
Complex lambda_closed_form(Complex s, int j, Prime p);

/// max over k_min <= k <= k_max of |c_k| / (k^{-3/2} (1 + log k)).
double fit_tail_amplitude(Prime p, int k_min, int k_max);

/// Fit range used for the frozen envelope amplitudes.
inline constexpr int tail_fit_k_min = 100;
inline constexpr int tail_fit_k_max = 1000;

/// 2 A sum_{k>K} k^{-3/2} (1 + log k), bounded by the integral from K.
double tail_envelope(double amplitude, int order);

}  // namespace asmval::analytic
