// Batch driver for Hawking-surface foliation experiments.
//
//   hfk <experiment-kind> --config <path> [--out <dir>]
//
// Experiment kinds: validate, solve-leaf, foliate, energy-report,
// center-report, monotonicity-report.  Exit codes: 0 success,
// 2 configuration error, 3 numerical failure, 4 hypothesis violation.

#include <CLI11.hpp>
#include <cstdio>

#include "hfk/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hawking-surface foliation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<CLI::App*> subs;
  for (const char* name :
       {"validate", "solve-leaf", "foliate", "energy-report", "center-report",
        "monotonicity-report"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file")
        ->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const auto* sub = app.get_subcommands().front();
    auto config = hfk::runner::parse_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    const auto kind = hfk::runner::experiment_from_name(sub->get_name());
    return hfk::runner::run(kind, config);
  } catch (const hfk::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const hfk::HypothesisViolation& e) {
    std::fprintf(stderr, "hypothesis violation: %s\n", e.what());
    return 4;
  } catch (const hfk::Error& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
