// Command-line front end: run, validate, or resume a configured simulation.
//
// Exit codes: 0 success, 2 configuration error (bad file, bad snapshot,
// bad command line), 3 stage solver non-convergence, 1 anything else.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lpflow/run_config.hpp"
#include "lpflow/runner.hpp"
#include "lpflow/text_io.hpp"
#include "lpflow/version.hpp"

namespace {

int finish(const lpflow::RunOutcome& outcome, bool quiet) {
  if (!outcome.completed) {
    std::cerr << "stage solver failed: " << outcome.failure << "\n"
              << "partial output kept; last completed step " << outcome.steps_taken << " at t = "
              << lpflow::format_double(outcome.final_time) << std::endl;
    return 3;
  }
  if (!quiet)
    std::cout << "completed " << outcome.steps_taken << " steps, t = "
              << lpflow::format_double(outcome.final_time) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("lpflow ") + lpflow::kVersion +
               " - structure-preserving Lie-Poisson simulations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string snapshot_path;
  std::string out_dir = "out";
  bool quiet = false;

  CLI::App* run_cmd = app.add_subcommand("run", "Integrate a configured model and write outputs");
  run_cmd->add_option("config", config_path, "configuration file")->required();
  run_cmd->add_option("--out", out_dir, "output directory (default: out)");
  run_cmd->add_flag("--quiet", quiet, "suppress progress output");

  CLI::App* check_cmd =
      app.add_subcommand("check", "Validate a configuration and print the resolved settings");
  check_cmd->add_option("config", config_path, "configuration file")->required();

  CLI::App* resume_cmd = app.add_subcommand("resume", "Continue a run from a saved snapshot");
  resume_cmd->add_option("snapshot", snapshot_path, "snapshot file from a previous run")
      ->required();
  resume_cmd->add_option("config", config_path, "configuration file")->required();
  resume_cmd->add_option("--out", out_dir, "output directory (default: out)");
  resume_cmd->add_flag("--quiet", quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const lpflow::RunConfig cfg = lpflow::parse_config_file(config_path);
    if (check_cmd->parsed()) {
      std::cout << "# version " << lpflow::kVersion << "\n" << lpflow::serialize_config(cfg);
      return 0;
    }
    if (run_cmd->parsed()) {
      return finish(lpflow::run_simulation(cfg, out_dir, quiet), quiet);
    }
    const lpflow::SnapshotData snap = lpflow::read_snapshot_file(snapshot_path);
    return finish(lpflow::run_simulation(cfg, out_dir, quiet, &snap), quiet);
  } catch (const lpflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
