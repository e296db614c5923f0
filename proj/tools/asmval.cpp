// asmval: exact and analytic p-adic valuations of the ASM counting function.
//
//   asmval exact   --prime 2 --n-min 1 --n-max 1000
//   asmval coeffs  --prime 7 --fourier-terms 400 --format json
//   asmval compare --prime 3 --n-min 1 --n-max 200
//   asmval figure  --prime 2 --n-min 32 --n-max 1024 --output fig2.csv
//   asmval verify  --prime 5
//
// Exit codes: 0 ok, 1 usage error, 2 verification failure, 3 I/O error.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "asmval/harness.hpp"

namespace {

using namespace asmval::harness;

void add_common_flags(CLI::App& cmd, RunConfig& config, std::string& format, std::string& output) {
  cmd.add_option("--prime", config.prime, "prime p")->capture_default_str();
  cmd.add_option("--n-min", config.n_min, "first N")->capture_default_str();
  cmd.add_option("--n-max", config.n_max, "last N")->capture_default_str();
  cmd.add_option("--fourier-terms", config.fourier_terms, "Fourier truncation order K")->capture_default_str();
  cmd.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd.add_option("--output", output, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic valuations of the alternating sign matrix numbers"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "csv";
  std::string output;
  VerifyOptions verify_options;

  std::map<std::string, std::function<int(std::ostream&)>> commands;
  for (const char* name : {"exact", "coeffs", "compare", "figure", "verify"}) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common_flags(*cmd, config, format, output);
    if (std::string(name) == "verify") {
      cmd->add_option("--inject-perturbation", verify_options.coefficient_perturbation,
                      "test hook: relative perturbation of Phi coefficients")
          ->group("");
    }
  }
  app.get_subcommand("exact")->description("both exact valuation routes per N");
  app.get_subcommand("coeffs")->description("Fourier coefficients of Phi and psi_j");
  app.get_subcommand("compare")->description("exact vs analytic expansion per N");
  app.get_subcommand("figure")->description("scatter v_p(T(N))/N and the fluctuation curve");
  app.get_subcommand("verify")->description("run the identity and oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  config.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (!output.empty()) config.output_path = output;

  const std::string which = app.get_subcommands().front()->get_name();
  try {
    config.validate();

    std::ofstream file;
    if (config.output_path) {
      file.open(*config.output_path, std::ios::out | std::ios::trunc | std::ios::binary);
      if (!file) {
        std::cerr << "error: cannot open " << *config.output_path << " for writing\n";
        return exit_io_error;
      }
    }
    std::ostream& out = config.output_path ? static_cast<std::ostream&>(file) : std::cout;

    int rc = exit_ok;
    if (which == "exact") rc = cmd_exact(config, out);
    else if (which == "coeffs") rc = cmd_coeffs(config, out);
    else if (which == "compare") rc = cmd_compare(config, out);
    else if (which == "figure") rc = cmd_figure(config, out);
    else rc = cmd_verify(config, out, std::cerr, verify_options);

    out.flush();
    if (!out) {
      std::cerr << "error: write failed\n";
      return exit_io_error;
    }
    return rc;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_verification_failed;
  }
}
