#include "asmval/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "parallel.hpp"

namespace asmval::harness {

namespace {

using analytic::FourierCoefficientSet;
using special::Complex;

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, cell);
}

std::string summary_value(const nlohmann::json& v) {
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

const char* format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

double relative_error(Complex got, Complex want) {
  const double scale = std::abs(want);
  return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

}  // namespace

void RunConfig::validate() const {
  if (!is_prime(prime)) throw UsageError("--prime must be a prime (got " + std::to_string(prime) + ")");
  if (n_min < 1) throw UsageError("--n-min must be at least 1");
  if (n_max < n_min) throw UsageError("--n-max must be >= --n-min");
  if (fourier_terms < 1) throw UsageError("--fourier-terms must be at least 1");
}

Prime RunConfig::checked_prime() const {
  validate();
  return Prime(prime);
}

nlohmann::json RunConfig::to_json() const {
  return {{"prime", prime},
          {"n_min", n_min},
          {"n_max", n_max},
          {"fourier_terms", fourier_terms},
          {"format", format_name(format)}};
}

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_table(const Table& table, const RunConfig& config, std::ostream& out) {
  if (config.format == OutputFormat::json) {
    nlohmann::json doc;
    doc["config"] = config.to_json();
    doc["config"]["command"] = table.command;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
      doc["rows"].push_back(std::move(obj));
    }
    doc["summary"] = table.summary;
    out << doc.dump(2) << '\n';
    return;
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
    out << '\n';
  }
  for (const auto& [key, value] : table.summary.items()) out << "# " << key << ',' << summary_value(value) << '\n';
}

std::vector<ComparisonRecord> compare_records(Prime p, Count n_min, Count n_max,
                                              const FourierCoefficientSet& coeffs) {
  const auto analytic_rows = analytic::theorem_rhs_sweep(n_min, n_max, coeffs);
  std::vector<ComparisonRecord> records(analytic_rows.size());
  detail::parallel_for(static_cast<std::int64_t>(records.size()), [&](std::int64_t i) {
    const auto& a = analytic_rows[static_cast<std::size_t>(i)];
    ComparisonRecord& r = records[static_cast<std::size_t>(i)];
    r.n = n_min + i;
    r.exact = exact::vp_T_legendre({p, r.n});
    r.main_term = a.main_term;
    r.phi_term = a.phi_term;
    r.psi_term = a.psi_term;
    r.log_term = a.log_term;
    r.f0_term = a.f0_term;
    r.analytic_total = a.total;
    r.residual = static_cast<double>(r.exact) - a.total;
    r.residual_over_n = r.residual / static_cast<double>(r.n);
  });
  return records;
}

std::vector<ComparisonRecord> compare_records(const RunConfig& config) {
  const Prime p = config.checked_prime();
  const auto coeffs = FourierCoefficientSet::build(p, config.fourier_terms);
  return compare_records(p, config.n_min, config.n_max, coeffs);
}

Table exact_table(const RunConfig& config) {
  const Prime p = config.checked_prime();
  Table t;
  t.command = "exact";
  t.columns = {"N", "vp_digit_sum", "vp_legendre", "agree"};
  Count disagreements = 0;
  for (const auto& row : exact::valuation_sweep(p, config.n_min, config.n_max)) {
    t.rows.push_back({row.n, row.by_digit_sum, row.by_legendre, row.agree()});
    if (!row.agree()) ++disagreements;
  }
  t.summary["rows"] = static_cast<std::int64_t>(t.rows.size());
  t.summary["disagreements"] = disagreements;
  return t;
}

Table coeffs_table(const RunConfig& config) {
  const Prime p = config.checked_prime();
  const auto set = FourierCoefficientSet::build(p, config.fourier_terms);
  Table t;
  t.command = "coeffs";
  t.columns = {"k", "re_c", "im_c"};
  if (set.psi) {
    for (const char* name : {"d_m1", "d_0", "d_1"}) {
      t.columns.push_back(std::string("re_") + name);
      t.columns.push_back(std::string("im_") + name);
    }
  }
  t.columns.push_back("within_envelope");
  Count outside = 0;
  for (int k = 1; k <= set.order; ++k) {
    std::vector<Cell> row;
    row.emplace_back(static_cast<std::int64_t>(k));
    const Complex c = set.phi.coefficient(k);
    row.emplace_back(c.real());
    row.emplace_back(c.imag());
    if (set.psi) {
      for (int j = -1; j <= 1; ++j) {
        const Complex d = set.psi_series(j).coefficient(k);
        row.emplace_back(d.real());
        row.emplace_back(d.imag());
      }
    }
    const bool ok = set.within_envelope[static_cast<std::size_t>(k - 1)];
    if (!ok) ++outside;
    row.emplace_back(ok);
    t.rows.push_back(std::move(row));
  }
  t.summary["coefficients_outside_envelope"] = outside;
  t.summary["negative_k"] = "conjugate of positive k";
  return t;
}

Table compare_table(const RunConfig& config) {
  const Prime p = config.checked_prime();
  const auto records = compare_records(config);
  Table t;
  t.command = "compare";
  t.columns = comparison_columns();
  double worst = 0.0;
  Count worst_n = records.front().n;
  for (const auto& r : records) {
    t.rows.push_back({r.n, r.exact, r.main_term, r.phi_term, r.psi_term, r.log_term, r.f0_term,
                      r.analytic_total, r.residual, r.residual_over_n});
    if (std::abs(r.residual_over_n) > worst) {
      worst = std::abs(r.residual_over_n);
      worst_n = r.n;
    }
  }
  const double amplitude = analytic::fit_tail_amplitude(p, analytic::tail_fit_k_min, analytic::tail_fit_k_max);
  t.summary["max_abs_residual_over_N"] = worst;
  t.summary["argmax_N"] = worst_n;
  t.summary["tail_amplitude_fit"] = amplitude;
  t.summary["phi_tail_envelope"] = analytic::tail_envelope(amplitude, config.fourier_terms);
  t.summary["envelope_is_empirical"] = true;
  return t;
}

Table figure_table(const RunConfig& config) {
  const Prime p = config.checked_prime();
  const auto set = FourierCoefficientSet::build(p, config.fourier_terms);
  const double level = analytic::main_term_coefficient(p);
  Table t;
  t.command = "figure";
  t.columns = {"series", "N", "log_p_N", "value"};

  const auto exact_rows = exact::valuation_sweep(p, config.n_min, config.n_max);
  for (const auto& row : exact_rows) {
    const double nd = static_cast<double>(row.n);
    t.rows.push_back({std::string("scatter"), nd, std::log(nd) / p.log(),
                      static_cast<double>(row.by_legendre) / nd});
  }

  const double u0 = std::log(static_cast<double>(config.n_min)) / p.log();
  const double u1 = std::log(static_cast<double>(config.n_max)) / p.log();
  std::vector<double> curve(figure_curve_samples);
  detail::parallel_for(figure_curve_samples, [&](std::int64_t i) {
    const double u = u0 + (u1 - u0) * static_cast<double>(i) / (figure_curve_samples - 1);
    curve[static_cast<std::size_t>(i)] = level + analytic::phi_eval(u, set);
  });
  for (int i = 0; i < figure_curve_samples; ++i) {
    const double u = u0 + (u1 - u0) * static_cast<double>(i) / (figure_curve_samples - 1);
    t.rows.push_back({std::string("curve"), std::exp(u * p.log()), u, curve[static_cast<std::size_t>(i)]});
  }
  t.summary["main_term_coefficient"] = level;
  t.summary["scatter_points"] = static_cast<std::int64_t>(exact_rows.size());
  t.summary["curve_points"] = static_cast<std::int64_t>(figure_curve_samples);
  return t;
}

Complex lambda_direct_series(Complex s, int j, Prime p, Count terms, bool with_tail) {
  if (j < -1 || j > 1) throw std::invalid_argument("j must be -1, 0 or 1");
  if (terms < 1) throw std::invalid_argument("terms must be positive");
  const Count first = j == 1 ? 0 : 1;
  const Count last = first + terms - 1;
  const double shift = j / 3.0;
  // Compensated sum, smallest terms first.
  Complex sum = 0.0;
  Complex carry = 0.0;
  for (Count n = last; n >= first; --n) {
    const Count v = exact::vp_integer(p, 3 * n + j);
    if (v == 0) continue;
    const Complex term = static_cast<double>(v) * std::exp(-s * std::log(n + shift));
    const Complex y = term - carry;
    const Complex t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  if (with_tail) {
    const double edge = static_cast<double>(last) + 0.5 + shift;
    sum += std::exp((1.0 - s) * std::log(edge)) / ((s - 1.0) * static_cast<double>(p.value() - 1));
  }
  return sum;
}

std::vector<SuiteResult> run_verification(const RunConfig& config, const VerifyOptions& options) {
  const Prime p = config.checked_prime();
  const bool p_is_three = p.residue_class() == PrimeClass::three;
  std::vector<SuiteResult> results;

  {
    SuiteResult r{"oracle_agreement", SuiteStatus::passed, 0.0, 0.0, ""};
    Count bad = 0;
    for (const auto& row : exact::valuation_sweep(p, config.n_min, config.n_max)) {
      if (!row.agree()) ++bad;
      if (row.n <= exact::default_bignum_cap && exact::vp_T_bignum({p, row.n}) != row.by_digit_sum) ++bad;
    }
    r.worst = static_cast<double>(bad);
    r.status = bad == 0 ? SuiteStatus::passed : SuiteStatus::failed;
    r.detail = std::to_string(bad) + " disagreements over N in [" + std::to_string(config.n_min) + ", " +
               std::to_string(config.n_max) + "]";
    results.push_back(r);
  }

  {
    SuiteResult r{"zeta_identities", SuiteStatus::passed, 0.0, 1e-10, ""};
    using special::hurwitz_zeta;
    using special::riemann_zeta;
    double worst = relative_error(riemann_zeta(2.0), std::numbers::pi * std::numbers::pi / 6.0);
    for (int i = 1; i <= 10; ++i) {
      const double alpha = i / 10.0;
      worst = std::max(worst, std::abs(hurwitz_zeta(0.0, alpha) - (0.5 - alpha)));
    }
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> re(-0.5, 3.0);
    std::uniform_real_distribution<double> im(-500.0, 500.0);
    for (int i = 0; i < 20; ++i) {
      const Complex s(re(rng), im(rng));
      const Complex lhs = hurwitz_zeta(s, 1.0 / 3.0) + hurwitz_zeta(s, 2.0 / 3.0) + riemann_zeta(s);
      const Complex rhs = std::exp(s * std::log(3.0)) * riemann_zeta(s);
      worst = std::max(worst, relative_error(lhs, rhs));
    }
    r.worst = worst;
    r.status = worst < r.tolerance ? SuiteStatus::passed : SuiteStatus::failed;
    r.detail = "zeta(2), zeta(0,alpha), multiplication theorem at 20 points";
    results.push_back(r);
  }

  {
    SuiteResult r{"assembly_identities", SuiteStatus::passed, 0.0, 1e-10, ""};
    auto set = FourierCoefficientSet::build(p, std::min(config.fourier_terms, 50));
    if (options.coefficient_perturbation != 0.0) {
      for (int k = 1; k <= set.order; ++k) {
        for (const int sk : {k, -k}) {
          set.phi.set_coefficient(sk, set.phi.coefficient(sk) * (1.0 + options.coefficient_perturbation));
        }
      }
    }
    double worst = 0.0;
    for (int k = 1; k <= set.order; ++k) {
      for (const int sk : {k, -k}) {
        worst = std::max(worst, relative_error(set.phi.coefficient(sk), analytic::coeff_c_assembled(sk, p)));
        if (set.psi) {
          worst = std::max(worst, std::abs(set.psi_series(0).coefficient(sk) - analytic::coeff_d0_closed_form(sk, p)));
        }
      }
    }
    worst = std::max(worst, std::abs(analytic::main_term_coefficient_assembled(p) - analytic::main_term_coefficient(p)));
    if (!p_is_three) {
      for (const Count n : {Count{1}, Count{10}, config.n_max}) {
        const double gap = analytic::f0(n, p) - analytic::f0_residue_part(n, p);
        worst = std::max(worst, std::abs(gap - analytic::remainder_constant(p)));
      }
    }
    r.worst = worst;
    r.status = worst < r.tolerance ? SuiteStatus::passed : SuiteStatus::failed;
    r.detail = "coefficient, constant and remainder identities, |k| <= " + std::to_string(set.order);
    results.push_back(r);
  }

  {
    SuiteResult r{"delange", SuiteStatus::passed, 0.0, 1e-2, ""};
    const analytic::DelangeExpansion expansion(p, config.fourier_terms);
    const auto table = exact::prefix_digit_sums(p, config.n_max);
    const Count stride = std::max<Count>(1, (config.n_max - config.n_min) / 2000);
    double worst = 0.0;
    for (Count n = config.n_min; n <= config.n_max; n += stride) {
      const double err = std::abs(static_cast<double>(table[static_cast<std::size_t>(n)]) - expansion.rhs(n));
      worst = std::max(worst, err / static_cast<double>(n));
    }
    r.worst = worst;
    r.status = worst < r.tolerance ? SuiteStatus::passed : SuiteStatus::failed;
    r.detail = "max |prefix digit sum - Delange rhs| / N";
    results.push_back(r);
  }

  {
    SuiteResult r{"lambda_series", SuiteStatus::passed, 0.0, 1e-6, ""};
    if (p_is_three) {
      r.status = SuiteStatus::skipped;
      r.detail = "no Lambda_j for p = 3";
    } else {
      double worst = 0.0;
      for (int j = -1; j <= 1; ++j) {
        const Complex closed = analytic::lambda_closed_form(2.0, j, p);
        worst = std::max(worst, relative_error(lambda_direct_series(2.0, j, p, 1'000'000, true), closed));
      }
      r.worst = worst;
      r.status = worst < r.tolerance ? SuiteStatus::passed : SuiteStatus::failed;
      r.detail = "closed form vs 10^6-term series at s = 2";
    }
    results.push_back(r);
  }
  return results;
}

int cmd_exact(const RunConfig& config, std::ostream& out) {
  const Table t = exact_table(config);
  write_table(t, config, out);
  return t.summary["disagreements"].get<Count>() == 0 ? exit_ok : exit_verification_failed;
}

int cmd_coeffs(const RunConfig& config, std::ostream& out) {
  write_table(coeffs_table(config), config, out);
  return exit_ok;
}

int cmd_compare(const RunConfig& config, std::ostream& out) {
  write_table(compare_table(config), config, out);
  return exit_ok;
}

int cmd_figure(const RunConfig& config, std::ostream& out) {
  write_table(figure_table(config), config, out);
  return exit_ok;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& report, const VerifyOptions& options) {
  const auto results = run_verification(config, options);
  nlohmann::json doc;
  doc["config"] = config.to_json();
  doc["config"]["command"] = "verify";
  doc["rows"] = nlohmann::json::array();
  std::string first_failure;
  for (const auto& r : results) {
    const char* status = r.status == SuiteStatus::passed ? "pass" : r.status == SuiteStatus::failed ? "FAIL" : "skip";
    report << '[' << status << "] " << r.name << ": " << r.detail;
    if (r.status != SuiteStatus::skipped) report << " (worst " << format_real(r.worst) << ", tol " << format_real(r.tolerance) << ')';
    report << '\n';
    doc["rows"].push_back({{"suite", r.name}, {"status", status}, {"worst", r.worst}, {"tolerance", r.tolerance},
                           {"detail", r.detail}});
    if (r.status == SuiteStatus::failed && first_failure.empty()) first_failure = r.name;
  }
  doc["summary"] = {{"passed", first_failure.empty()}, {"first_failure", first_failure}};
  out << doc.dump(2) << '\n';
  return first_failure.empty() ? exit_ok : exit_verification_failed;
}

}  // namespace asmval::harness
