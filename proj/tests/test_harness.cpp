#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "asmval/harness.hpp"

using namespace asmval;
using namespace asmval::harness;

namespace {

struct ParsedCsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::map<std::string, std::string> summary;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::out_of_range(name);
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

ParsedCsv parse_csv(const std::string& text) {
  ParsedCsv csv;
  std::stringstream ss(text);
  std::string line;
  std::getline(ss, line);
  csv.header = split(line);
  while (std::getline(ss, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto comma = line.find(',');
      csv.summary[line.substr(2, comma - 2)] = line.substr(comma + 1);
    } else {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  REQUIRE(res.ec == std::errc());
  return v;
}

RunConfig config(std::int64_t p, Count n_min, Count n_max, int terms = analytic::default_fourier_terms) {
  RunConfig c;
  c.prime = p;
  c.n_min = n_min;
  c.n_max = n_max;
  c.fourier_terms = terms;
  return c;
}

std::string run(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& c, int expected_exit = exit_ok) {
  std::ostringstream out;
  CHECK(cmd(c, out) == expected_exit);
  return out.str();
}

}  // namespace

TEST_CASE("RunConfig validation") {
  CHECK_NOTHROW(config(2, 1, 10).validate());
  CHECK_THROWS_AS(config(9, 1, 10).validate(), UsageError);
  CHECK_THROWS_AS(config(1, 1, 10).validate(), UsageError);
  CHECK_THROWS_AS(config(2, 0, 10).validate(), UsageError);
  CHECK_THROWS_AS(config(2, 11, 10).validate(), UsageError);
  CHECK_THROWS_AS(config(2, 1, 10, 0).validate(), UsageError);
  const auto j = config(7, 3, 4).to_json();
  CHECK(j["prime"] == 7);
  CHECK(j["fourier_terms"] == 400);
}

TEST_CASE("format_real round-trips") {
  for (const double v : {0.0, 1.0, -0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -2.2250738585072014e-308}) {
    CAPTURE(v);
    CHECK(to_double(format_real(v)) == v);
  }
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(2.0) == "2");
}

TEST_CASE("exact command") {
  const auto csv = parse_csv(run(cmd_exact, config(2, 1, 10)));
  CHECK(csv.header == std::vector<std::string>{"N", "vp_digit_sum", "vp_legendre", "agree"});
  REQUIRE(csv.rows.size() == 10);
  for (const auto& row : csv.rows) CHECK(row[3] == "true");
  // T(6) = 7436 = 2^2 * 11 * 13^2
  CHECK(csv.rows[5][1] == "2");

  const auto one = parse_csv(run(cmd_exact, config(5, 1, 1)));
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0] == std::vector<std::string>{"1", "0", "0", "true"});

  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_exact(config(9, 1, 1), sink), UsageError);
}

TEST_CASE("coeffs command") {
  const auto p3 = parse_csv(run(cmd_coeffs, config(3, 1, 1, 20)));
  CHECK(p3.header == std::vector<std::string>{"k", "re_c", "im_c", "within_envelope"});
  CHECK(p3.rows.size() == 20);

  const auto p2 = parse_csv(run(cmd_coeffs, config(2, 1, 1, 40)));
  REQUIRE(p2.rows.size() == 40);
  const auto re_d0 = p2.column("re_d_0");
  const auto im_d0 = p2.column("im_d_0");
  for (std::size_t i = 0; i < p2.rows.size(); i += 2) {
    CHECK(std::abs(to_double(p2.rows[i][re_d0])) < 1e-10);
    CHECK(std::abs(to_double(p2.rows[i][im_d0])) < 1e-10);
  }
  CHECK(std::abs(to_double(p2.rows[1][re_d0])) > 1e-3);

  // Re-sum the printed coefficients and compare with phi_eval.
  const int order = 400;
  const auto full = parse_csv(run(cmd_coeffs, config(7, 1, 1, order)));
  const auto set = analytic::FourierCoefficientSet::build(Prime(7), order);
  for (const double x : {0.0, 0.3, 0.71, 2.5}) {
    double sum = 0.0;
    for (const auto& row : full.rows) {
      const double k = to_double(row[0]);
      const special::Complex c(to_double(row[1]), to_double(row[2]));
      sum += 2.0 * (c * std::polar(1.0, 2.0 * std::numbers::pi * k * x)).real();
    }
    CHECK(std::abs(sum - analytic::phi_eval(x, set)) < 1e-9);
  }
  CHECK(full.summary.at("coefficients_outside_envelope") == "0");
}

TEST_CASE("compare command") {
  const auto single = compare_records(config(7, 50, 50));
  CHECK(single.size() == 1);

  const auto records = compare_records(config(2, 1, 300));
  REQUIRE(records.size() == 300);
  for (const auto& r : records) {
    const double addends = r.main_term + r.phi_term + r.psi_term + r.log_term + r.f0_term;
    REQUIRE(std::abs(r.analytic_total - addends) < 1e-9);
    REQUIRE(r.residual == static_cast<double>(r.exact) - r.analytic_total);
    REQUIRE(r.residual_over_n == r.residual / static_cast<double>(r.n));
    REQUIRE(r.exact == exact::vp_T_digit_sum({Prime(2), r.n}));
  }

  const auto csv = parse_csv(run(cmd_compare, config(7, 1, 20)));
  CHECK(csv.header == comparison_columns());
  CHECK(csv.rows.size() == 20);
  CHECK(csv.summary.count("max_abs_residual_over_N") == 1);
  CHECK(csv.summary.count("phi_tail_envelope") == 1);
  CHECK(csv.summary.at("envelope_is_empirical") == "true");

  auto c = config(3, 1, 200);
  c.format = OutputFormat::json;
  const auto j = nlohmann::json::parse(run(cmd_compare, c));
  CHECK(j.contains("config"));
  CHECK(j["config"]["command"] == "compare");
  REQUIRE(j["rows"].size() == 200);
  for (const auto& col : comparison_columns()) CHECK(j["rows"][0].contains(col));
  CHECK(j["summary"]["max_abs_residual_over_N"].get<double>() <= j["summary"]["phi_tail_envelope"].get<double>());
}

TEST_CASE("figure command") {
  const auto csv = parse_csv(run(cmd_figure, config(3, 1, 243)));
  CHECK(csv.header == std::vector<std::string>{"series", "N", "log_p_N", "value"});
  std::size_t scatter = 0, curve = 0;
  double mean = 0.0;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& row : csv.rows) {
    if (row[0] == "scatter") {
      ++scatter;
    } else {
      REQUIRE(row[0] == "curve");
      ++curve;
      const double x = to_double(row[2]);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      if (x < 5.0) mean += to_double(row[3]);
    }
  }
  CHECK(scatter == 243);
  CHECK(curve >= 1000);
  CHECK(lo == 0.0);
  CHECK(hi == doctest::Approx(5.0).epsilon(1e-14));
  // Five whole periods of a zero-mean Phi, so the curve averages to log_3 2 - 1/2.
  CHECK(std::abs(mean / (curve - 1) - 0.1309297535714574) < 1e-4);
  CHECK(to_double(csv.summary.at("main_term_coefficient")) == doctest::Approx(0.1309297535714574).epsilon(1e-14));
}

TEST_CASE("output is deterministic") {
  for (auto cmd : {cmd_exact, cmd_coeffs, cmd_compare, cmd_figure}) {
    const auto c = config(7, 1, 60, 50);
    CHECK(run(cmd, c) == run(cmd, c));
  }
}

TEST_CASE("CSV round-trip") {
  const auto records = compare_records(config(5, 100, 140));
  const auto csv = parse_csv(run(cmd_compare, config(5, 100, 140)));
  REQUIRE(csv.rows.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto& row = csv.rows[i];
    REQUIRE(std::stoll(row[0]) == r.n);
    REQUIRE(std::stoll(row[1]) == r.exact);
    const double values[] = {r.main_term, r.phi_term,       r.psi_term, r.log_term,
                             r.f0_term,   r.analytic_total, r.residual, r.residual_over_n};
    for (std::size_t c = 0; c < 8; ++c) REQUIRE(to_double(row[c + 2]) == values[c]);
  }
}

TEST_CASE("verify command") {
  std::ostringstream out, report;
  CHECK(cmd_verify(config(2, 1, 200), out, report) == exit_ok);
  const auto j = nlohmann::json::parse(out.str());
  CHECK(j["summary"]["passed"] == true);
  CHECK(j["rows"].size() == 5);

  std::ostringstream bad_out, bad_report;
  CHECK(cmd_verify(config(2, 1, 200), bad_out, bad_report, VerifyOptions{1e-6}) == exit_verification_failed);
  const auto bad = nlohmann::json::parse(bad_out.str());
  CHECK(bad["summary"]["passed"] == false);
  CHECK(bad["summary"]["first_failure"] == "assembly_identities");

  const auto p3 = run_verification(config(3, 1, 200));
  for (const auto& s : p3) {
    CAPTURE(s.name);
    if (s.name == "lambda_series") {
      CHECK(s.status == SuiteStatus::skipped);
    } else {
      CHECK(s.status == SuiteStatus::passed);
    }
  }
}
