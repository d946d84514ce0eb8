#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"

namespace {

using namespace tuned_source::cli;

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<double> tol_quad;
  std::optional<double> tol_margin;
  int jobs = 1;
};

void apply_overrides(const Options& opt, RunConfig& cfg) {
  if (opt.out) cfg.out_path = *opt.out;
  if (opt.format) cfg.format = *opt.format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (opt.tol_quad) cfg.tolerances.quad_rel = *opt.tol_quad;
  if (opt.tol_margin) cfg.tolerances.margin = *opt.tol_margin;
}

int run(const std::string& command, const Options& opt) {
  RunConfig cfg;
  RunResult result;
  try {
    cfg = load_config(opt.config);
    apply_overrides(opt, cfg);
    if (command == "verify") {
      result = run_verify(cfg, opt.jobs);
    } else if (command == "energies") {
      result = run_energies(cfg, opt.jobs);
    } else if (command == "sweep") {
      result = run_sweep(cfg, opt.jobs);
    } else {
      result = run_tune(cfg, opt.jobs);
    }
  } catch (const tuned_source::Error& e) {
    std::cerr << "tuned-source: input error [" << tuned_source::to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string text = render(result.report, cfg.format);
  try {
    if (cfg.out_path) {
      write_report_file(*cfg.out_path, text);
    } else {
      std::cout << text << std::flush;
    }
  } catch (const std::exception& e) {
    std::cerr << "tuned-source: " << e.what() << "\n";
    return kExitInputError;
  }
  if (result.exit_code == kExitViolation) {
    std::cerr << "tuned-source: " << command << ": one or more assertions failed\n";
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical certification of tuned minimum-energy sources in spherical substrates", "tuned-source"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", opt.out, "Report path (default: standard output)");
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol-quad", opt.tol_quad, "Relative quadrature tolerance")->check(CLI::Range(1e-14, 1e-3));
  app.add_option("--tol-margin", opt.tol_margin, "Relative margin tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--jobs", opt.jobs, "Worker threads for sweep cells")->check(CLI::Range(1, 256));

  app.add_subcommand("verify", "Certify boundedness, minimality and expansion coefficients per (mode, chi)");
  app.add_subcommand("energies", "Untuned vs tuned source energies");
  app.add_subcommand("sweep", "Plot-ready margins over one swept axis");
  app.add_subcommand("tune", "Roots of the tabulated tuning constraint and chi0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }
  return run(app.get_subcommands().front()->get_name(), opt);
}
