#pragma once

// Command implementations behind the `asmval` executable. Each command writes
// a table (CSV or JSON) to a stream and returns a process exit code, so tests
// can drive them without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "asmval/analytic.hpp"
#include "asmval/exact.hpp"

namespace asmval::harness {

using exact::Count;

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_verification_failed = 2,
  exit_io_error = 3,
};

enum class OutputFormat { csv, json };

/// Invalid command-line configuration (exit code 1).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::int64_t prime = 2;
  Count n_min = 1;
  Count n_max = 100;
  int fourier_terms = analytic::default_fourier_terms;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> output_path;

  /// Throws UsageError on a bad prime, range or order.
  void validate() const;
  Prime checked_prime() const;
  nlohmann::json to_json() const;
};

struct ComparisonRecord {
  Count n = 0;
  Count exact = 0;
  double main_term = 0.0;
  double phi_term = 0.0;
  double psi_term = 0.0;
  double log_term = 0.0;
  double f0_term = 0.0;
  double analytic_total = 0.0;
  double residual = 0.0;
  double residual_over_n = 0.0;
};

/// Column order of the compare table.
inline const std::vector<std::string>& comparison_columns() {
  static const std::vector<std::string> cols = {"N",        "exact",    "main_term",      "phi_term",
                                                "psi_term", "log_term", "f0_term",        "analytic_total",
                                                "residual", "residual_over_N"};
  return cols;
}

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json summary = nlohmann::json::object();
};

/// 17 significant digits, '.' decimal point, independent of the C locale.
std::string format_real(double value);

/// CSV: header, rows, then `# key,value` summary lines. JSON: {config, rows, summary}.
void write_table(const Table& table, const RunConfig& config, std::ostream& out);

/// One record per N in [n_min, n_max]; exact side from the Legendre route.
std::vector<ComparisonRecord> compare_records(const RunConfig& config);
std::vector<ComparisonRecord> compare_records(Prime p, Count n_min, Count n_max,
                                              const analytic::FourierCoefficientSet& coeffs);

Table exact_table(const RunConfig& config);
Table coeffs_table(const RunConfig& config);
Table compare_table(const RunConfig& config);
Table figure_table(const RunConfig& config);

/// Number of curve samples in figure output.
inline constexpr int figure_curve_samples = 1000;

/// sum_{n > -j/3} v_p(3n+j) / (n + j/3)^s over `terms` terms, plus the mean-value
/// tail (1/(p-1)) (n_last + 1/2 + j/3)^{1-s} / (s-1) when `with_tail` is set.
special::Complex lambda_direct_series(special::Complex s, int j, Prime p, Count terms, bool with_tail);

struct VerifyOptions {
  /// Relative perturbation applied to every Phi coefficient before the assembly suite.
  double coefficient_perturbation = 0.0;
};

enum class SuiteStatus { passed, failed, skipped };

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::passed;
  double worst = 0.0;      // worst observed error statistic
  double tolerance = 0.0;
  std::string detail;
};

std::vector<SuiteResult> run_verification(const RunConfig& config, const VerifyOptions& options = {});

int cmd_exact(const RunConfig& config, std::ostream& out);
int cmd_coeffs(const RunConfig& config, std::ostream& out);
int cmd_compare(const RunConfig& config, std::ostream& out);
int cmd_figure(const RunConfig& config, std::ostream& out);

/// Human-readable lines go to `report`, the JSON document to `out`.
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& report,
               const VerifyOptions& options = {});

}  // namespace asmval::harness
