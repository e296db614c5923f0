#include "asmval/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "parallel.hpp"

namespace asmval::analytic {

namespace {

using special::hurwitz_zeta;

constexpr double pi = std::numbers::pi;

Complex power(double base, Complex exponent) { return std::exp(exponent * std::log(base)); }

void require_not_three(Prime p, const char* what) {
  if (p.residue_class() == PrimeClass::three) {
    throw std::domain_error(std::string(what) + " is not defined for p = 3");
  }
}

void require_nonzero(int k) {
  if (k == 0) throw std::invalid_argument("Fourier index must be nonzero");
}

// chi (1 + chi) log p
Complex kernel_denominator(Complex x, Prime p) { return x * (1.0 + x) * p.log(); }

// (d_{k,-1}, d_{k,1}).
std::pair<Complex, Complex> d_pair(int k, Prime p) {
  require_nonzero(k);
  require_not_three(p, "psi coefficients");
  if (p.residue_class() == PrimeClass::one_mod_three) {
    const Complex x = chi(k, p);
    const Complex denom = kernel_denominator(x, p);
    return {hurwitz_zeta(x, -1.0 / 3.0) / denom, hurwitz_zeta(x, 1.0 / 3.0) / denom};
  }
  const Complex x = chi(0.5 * k, p);
  const Complex denom = 2.0 * kernel_denominator(x, p);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const Complex z_plus = hurwitz_zeta(x, 1.0 / 3.0);
  const Complex z_minus = hurwitz_zeta(x, -1.0 / 3.0);
  return {(z_minus + sign * z_plus) / denom, (z_plus + sign * z_minus) / denom};
}

std::size_t slot(int k) { return static_cast<std::size_t>(std::abs(k) - 1); }

FourierCoefficientSet make_empty_set(Prime p, int order) {
  if (order < 1) throw std::invalid_argument("Fourier order must be at least 1");
  FourierCoefficientSet set;
  set.p = p;
  set.residue_class = p.residue_class();
  set.order = order;
  const std::vector<Complex> zeros(static_cast<std::size_t>(order));
  set.phi = FourierSeries(1, zeros, zeros);
  if (set.residue_class != PrimeClass::three) {
    const int period = set.residue_class == PrimeClass::one_mod_three ? 1 : 2;
    set.psi.emplace();
    for (auto& series : *set.psi) series = FourierSeries(period, zeros, zeros);
  }
  set.within_envelope.assign(static_cast<std::size_t>(order), true);
  return set;
}

// Fills the +k and -k entries of every series in `set`; touches only index k.
void fill_index(FourierCoefficientSet& set, int k) {
  for (const int signed_k : {k, -k}) {
    set.phi.set_coefficient(signed_k, coeff_c(signed_k, set.p));
    if (set.psi) {
      const auto [d_minus, d_plus] = d_pair(signed_k, set.p);
      (*set.psi)[0].set_coefficient(signed_k, d_minus);
      (*set.psi)[1].set_coefficient(signed_k, d_minus + d_plus);
      (*set.psi)[2].set_coefficient(signed_k, d_plus);
    }
  }
}

void mark_envelope(FourierCoefficientSet& set) {
  for (int k = 1; k <= set.order; ++k) {
    set.within_envelope[slot(k)] = std::abs(chi(k, set.p).imag()) <= special::zeta_envelope_im;
  }
}

double log_base(double x, Prime p) { return std::log(x) / p.log(); }

void require_positive(Count n) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
}

}  // namespace

Complex chi(double k, Prime p) {
  if (k == 0.0) throw std::invalid_argument("chi_0 is excluded");
  if (2.0 * k != std::round(2.0 * k)) throw std::invalid_argument("chi index must be a half-integer");
  return {0.0, 2.0 * k * pi / p.log()};
}

Complex coeff_c(int k, Prime p) {
  require_nonzero(k);
  const Complex x = chi(k, p);
  const Complex z = hurwitz_zeta(x, 1.0);
  if (p.residue_class() == PrimeClass::three) {
    return 2.0 * (1.0 - power(2.0, x)) * z / kernel_denominator(x, p);
  }
  return (1.0 - power(2.0, 1.0 + x) + power(3.0, x)) * z / kernel_denominator(x, p);
}

Complex coeff_d(int k, int j, Prime p) {
  if (j < -1 || j > 1) throw std::invalid_argument("psi index j must be -1, 0 or 1");
  const auto [d_minus, d_plus] = d_pair(k, p);
  switch (j) {
    case -1: return d_minus;
    case 1: return d_plus;
    default: return d_minus + d_plus;
  }
}

Complex coeff_d0_closed_form(int k, Prime p) {
  require_nonzero(k);
  require_not_three(p, "psi coefficients");
  if (p.residue_class() == PrimeClass::minus_one_mod_three && k % 2 != 0) return 0.0;
  const Complex x = p.residue_class() == PrimeClass::one_mod_three ? chi(k, p) : chi(0.5 * k, p);
  return (power(3.0, x) - 1.0) * hurwitz_zeta(x, 1.0) / kernel_denominator(x, p);
}

Complex coeff_c_delange(int k, Prime p) {
  require_nonzero(k);
  const Complex x = chi(k, p);
  const double pm1 = static_cast<double>(p.value() - 1);
  return -(pm1 / p.log()) * hurwitz_zeta(x, 1.0) / (x * (1.0 + x));
}

double c0_delange(Prime p) {
  const double pv = static_cast<double>(p.value());
  return (pv - 1.0) / (2.0 * p.log()) * (std::log(2.0 * pi) - 1.0) - (pv + 1.0) / 4.0;
}

Complex phi2_coeff(int k, Prime p) {
  require_nonzero(k);
  require_not_three(p, "Phi^(2)");
  const Complex x = chi(k, p);
  return power(3.0, x) * hurwitz_zeta(x, 1.0) / kernel_denominator(x, p);
}

Complex coeff_c_assembled(int k, Prime p) {
  const Complex x = chi(k, p);
  const Complex c1 = coeff_c_delange(k, p);
  if (p.residue_class() == PrimeClass::three) return (power(2.0, x) - 1.0) * c1;
  const double pm1 = static_cast<double>(p.value() - 1);
  return (power(2.0, 1.0 + x) - 1.0) * c1 / pm1 + phi2_coeff(k, p);
}

FourierSeries::FourierSeries(int period, std::vector<Complex> positive, std::vector<Complex> negative)
    : period_(period), positive_(std::move(positive)), negative_(std::move(negative)) {
  if (period_ < 1) throw std::invalid_argument("period must be positive");
  if (positive_.size() != negative_.size()) {
    throw std::invalid_argument("positive and negative coefficient lists differ in length");
  }
}

Complex FourierSeries::coefficient(int k) const {
  require_nonzero(k);
  if (std::abs(k) > order()) throw std::out_of_range("Fourier index beyond truncation order");
  return k > 0 ? positive_[slot(k)] : negative_[slot(k)];
}

void FourierSeries::set_coefficient(int k, Complex value) {
  require_nonzero(k);
  if (std::abs(k) > order()) throw std::out_of_range("Fourier index beyond truncation order");
  (k > 0 ? positive_[slot(k)] : negative_[slot(k)]) = special::require_finite(value, "coefficient");
}

Complex FourierSeries::eval_complex(double x) const {
  const double scaled = x / period_;
  const double theta = 2.0 * pi * (scaled - std::floor(scaled));
  Complex sum = 0.0;
  for (std::size_t i = 0; i < positive_.size(); ++i) {
    const double angle = static_cast<double>(i + 1) * theta;
    const Complex rotation = std::polar(1.0, angle);
    sum += positive_[i] * rotation + negative_[i] * std::conj(rotation);
  }
  return sum;
}

double FourierSeries::eval(double x) const {
  const Complex v = eval_complex(x);
  if (std::abs(v.imag()) > realness_tolerance) {
    throw std::runtime_error("fluctuation series not real: imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

const FourierSeries& FourierCoefficientSet::psi_series(int j) const {
  if (!psi) throw std::domain_error("no psi functions for p = 3");
  if (j < -1 || j > 1) throw std::invalid_argument("psi index j must be -1, 0 or 1");
  return (*psi)[static_cast<std::size_t>(j + 1)];
}

FourierCoefficientSet FourierCoefficientSet::build(Prime p, int order) {
  FourierCoefficientSet set = make_empty_set(p, order);
  detail::parallel_for(order, [&](std::int64_t i) { fill_index(set, static_cast<int>(i) + 1); });
  mark_envelope(set);
  return set;
}

FourierCoefficientSet FourierCoefficientSet::build_serial(Prime p, int order) {
  FourierCoefficientSet set = make_empty_set(p, order);
  for (int k = 1; k <= order; ++k) fill_index(set, k);
  mark_envelope(set);
  return set;
}

double phi_eval(double x, const FourierCoefficientSet& coeffs) { return coeffs.phi.eval(x); }

double psi_big_eval(Count n, const FourierCoefficientSet& coeffs) {
  require_positive(n);
  const Prime p = coeffs.p;
  const double nd = static_cast<double>(n);
  const double up = nd + 1.0 / 3.0;
  const double down = nd - 1.0 / 3.0;
  return up * coeffs.psi_series(1).eval(log_base(up, p)) +
         down * coeffs.psi_series(-1).eval(log_base(down, p)) -
         nd * coeffs.psi_series(0).eval(log_base(nd, p));
}

double g_j(Count n, int j, Prime p) {
  require_positive(n);
  if (j != 1 && j != -1) throw std::invalid_argument("g_j needs j = +1 or -1");
  const double ratio = j / (3.0 * static_cast<double>(n));
  return (1.0 + ratio) * static_cast<double>(n) * std::log1p(ratio) / p.log();
}

double g_j_limit(int j, Prime p) {
  if (j != 1 && j != -1) throw std::invalid_argument("g_j needs j = +1 or -1");
  return j / (3.0 * p.log());
}

namespace {

double gamma_ratio_term(Prime p) {
  using special::log_gamma_real;
  return (log_gamma_real(1.0 / 3.0) - log_gamma_real(2.0 / 3.0)) / (3.0 * p.log());
}

double theorem_constant(Prime p) {
  const double pv = static_cast<double>(p.value());
  return (pv + 1.0) / (6.0 * (pv - 1.0));
}

}  // namespace

double f0(Count n, Prime p) {
  require_not_three(p, "f_0");
  if (p.residue_class() == PrimeClass::minus_one_mod_three) return theorem_constant(p);
  return gamma_ratio_term(p) + (g_j(n, 1, p) - g_j(n, -1, p)) / 6.0 - 1.0 / (9.0 * p.log()) +
         theorem_constant(p);
}

double f0_limit(Prime p) {
  require_not_three(p, "f_0");
  if (p.residue_class() == PrimeClass::minus_one_mod_three) return theorem_constant(p);
  return gamma_ratio_term(p) + theorem_constant(p);
}

double f0_residue_part(Count n, Prime p) {
  require_not_three(p, "f_0^(2)");
  const double pv = static_cast<double>(p.value());
  const double common = -1.0 / 18.0 - 1.0 / (9.0 * (1.0 - pv));
  if (p.residue_class() == PrimeClass::minus_one_mod_three) return common;
  return gamma_ratio_term(p) + (g_j(n, 1, p) - g_j(n, -1, p)) / 6.0 - 1.0 / (9.0 * p.log()) + common;
}

double log_coefficient(Prime p) {
  return p.residue_class() == PrimeClass::one_mod_three ? 1.0 / 9.0 : 0.0;
}

double remainder_constant(Prime p) {
  require_not_three(p, "the remainder integral");
  const double pv = static_cast<double>(p.value());
  return 2.0 * pv / (9.0 * (pv - 1.0));
}

double main_term_coefficient(Prime p) {
  if (p.residue_class() == PrimeClass::three) return std::log(2.0) / std::log(3.0) - 0.5;
  return std::log(2.0 / std::sqrt(3.0)) / p.log();
}

double main_term_coefficient_assembled(Prime p) {
  const double pm1 = static_cast<double>(p.value() - 1);
  const double c0 = c0_delange(p);
  const double from_delange = std::log(2.0) / p.log() + c0 / pm1;
  if (p.residue_class() == PrimeClass::three) {
    // S_3(3j+1) = 1 + S_3(j): a second Delange sum, scaled by 1/(1-p) = -1/2.
    return from_delange - (1.0 + c0) / 2.0;
  }
  const double residue_at_zero = -0.5 * std::log(6.0 * pi) / p.log() + 0.5 / p.log() + 0.25;
  const double mellin_linear = 1.0 / (2.0 * pm1);
  return from_delange + residue_at_zero + mellin_linear;
}

AnalyticDecomposition theorem_rhs(const ValuationQuery& q, const FourierCoefficientSet& coeffs) {
  require_positive(q.n);
  if (!(q.p == coeffs.p)) throw std::invalid_argument("coefficient set built for a different prime");
  const Prime p = q.p;
  const double nd = static_cast<double>(q.n);
  const double x = log_base(nd, p);

  AnalyticDecomposition d;
  d.main_term = nd * main_term_coefficient(p);
  d.phi_term = nd * phi_eval(x, coeffs);
  if (p.residue_class() != PrimeClass::three) {
    d.psi_term = psi_big_eval(q.n, coeffs);
    d.log_term = log_coefficient(p) * x;
    d.f0_term = f0(q.n, p);
  }
  d.total = d.main_term + d.phi_term + d.psi_term + d.log_term + d.f0_term;
  return d;
}

AnalyticDecomposition theorem_rhs(const ValuationQuery& q, int order) {
  return theorem_rhs(q, FourierCoefficientSet::build(q.p, order));
}

std::vector<AnalyticDecomposition> theorem_rhs_sweep(Count n_min, Count n_max,
                                                     const FourierCoefficientSet& coeffs) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("invalid N range");
  std::vector<AnalyticDecomposition> rows(static_cast<std::size_t>(n_max - n_min + 1));
  detail::parallel_for(static_cast<std::int64_t>(rows.size()), [&](std::int64_t i) {
    rows[static_cast<std::size_t>(i)] = theorem_rhs({coeffs.p, n_min + i}, coeffs);
  });
  return rows;
}

std::vector<AnalyticDecomposition> theorem_rhs_sweep_serial(Count n_min, Count n_max,
                                                            const FourierCoefficientSet& coeffs) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("invalid N range");
  std::vector<AnalyticDecomposition> rows;
  rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
  for (Count n = n_min; n <= n_max; ++n) rows.push_back(theorem_rhs({coeffs.p, n}, coeffs));
  return rows;
}

DelangeExpansion::DelangeExpansion(Prime p, int order) : p_(p), c0_(c0_delange(p)) {
  if (order < 1) throw std::invalid_argument("Fourier order must be at least 1");
  std::vector<Complex> positive(static_cast<std::size_t>(order));
  std::vector<Complex> negative(static_cast<std::size_t>(order));
  detail::parallel_for(order, [&](std::int64_t i) {
    const int k = static_cast<int>(i) + 1;
    positive[static_cast<std::size_t>(i)] = coeff_c_delange(k, p);
    negative[static_cast<std::size_t>(i)] = coeff_c_delange(-k, p);
  });
  phi1_ = FourierSeries(1, std::move(positive), std::move(negative));
}

double DelangeExpansion::rhs(Count n) const {
  require_positive(n);
  const double nd = static_cast<double>(n);
  const double x = log_base(nd, p_);
  const double pm1 = static_cast<double>(p_.value() - 1);
  return 0.5 * pm1 * nd * x + nd * c0_ + nd * phi1_.eval(x);
}

double delange_rhs(Count n, Prime p, int order) { return DelangeExpansion(p, order).rhs(n); }

Complex lambda_closed_form(Complex s, int j, Prime p) {
  require_not_three(p, "Lambda_j");
  if (j < -1 || j > 1) throw std::invalid_argument("Lambda index j must be -1, 0 or 1");
  if (s == Complex(1.0, 0.0)) throw std::domain_error("Lambda_j has a pole at s = 1");
  const Complex denom = power(static_cast<double>(p.value()), 2.0 * s) - 1.0;
  if (std::abs(denom) < 1e-14) throw std::domain_error("Lambda_j has a pole where p^{2s} = 1");
  const double alpha = j / 3.0;
  const double twisted = p.unit() * j / 3.0;
  return (hurwitz_zeta(s, alpha) + power(static_cast<double>(p.value()), s) * hurwitz_zeta(s, twisted)) /
         denom;
}

double fit_tail_amplitude(Prime p, int k_min, int k_max) {
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("invalid fit range");
  double amplitude = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double shape = std::pow(k, -1.5) * (1.0 + std::log(k));
    amplitude = std::max(amplitude, std::abs(coeff_c(k, p)) / shape);
  }
  return amplitude;
}

double tail_envelope(double amplitude, int order) {
  if (order < 1) throw std::invalid_argument("order must be positive");
  const double k = order;
  return 2.0 * amplitude * (6.0 + 2.0 * std::log(k)) / std::sqrt(k);
}

}  // namespace asmval::analytic
