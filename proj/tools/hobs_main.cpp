// hobs: obstacle-problem workbench for the Heisenberg p-Laplacian.
//
// Subcommands: solve, penalize, ls-check, eps-sweep, lemmas, consistency.
// Configuration comes from a flat key-value file (--config); the remaining
// flags override individual entries. Exit codes: 0 pass, 1 verification
// failure, 2 usage error.
#include <CLI11.hpp>

#include <iostream>

#include "hobs/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Obstacle problems for the p-Laplacian in the Heisenberg group"};
  app.require_subcommand(1);
  app.fallthrough();  // accept the global flags after the subcommand too

  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  double tol = -1.0;
  std::int64_t trials = -1;
  bool negative_control = false;

  app.add_option("--config", config_path, "Key-value configuration file");
  app.add_option("--out", out_dir, "Output directory (overrides out_dir)");
  app.add_option("--seed", seed, "Random seed (overrides seed)");
  app.add_option("--tol", tol, "Verification tolerance (overrides tol_verify)");
  app.add_option("--trials", trials, "Trial count (overrides trials)");

  CLI::App* solve = app.add_subcommand("solve", "Solve the obstacle problem");
  CLI::App* penalize = app.add_subcommand("penalize", "Solve the penalized companion problems");
  CLI::App* ls = app.add_subcommand("ls-check", "Check the two-sided operator bound");
  ls->add_flag("--negative-control", negative_control,
               "Perturb the solution inside the contact set; the check must fail");
  CLI::App* sweep = app.add_subcommand("eps-sweep", "Measure eps-convergence rates");
  CLI::App* lemmas = app.add_subcommand("lemmas", "Run the inequality suite");
  CLI::App* consistency = app.add_subcommand("consistency", "Stencil consistency study");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    hobs::RunConfig cfg = config_path.empty() ? hobs::RunConfig{}
                                              : hobs::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (tol >= 0.0) cfg.tol_verify = tol;
    if (trials >= 0) cfg.trials = trials;

    hobs::Command cmd = hobs::Command::Solve;
    if (solve->parsed()) cmd = hobs::Command::Solve;
    if (penalize->parsed()) cmd = hobs::Command::Penalize;
    if (ls->parsed()) cmd = hobs::Command::LsCheck;
    if (sweep->parsed()) cmd = hobs::Command::EpsSweep;
    if (lemmas->parsed()) cmd = hobs::Command::Lemmas;
    if (consistency->parsed()) cmd = hobs::Command::Consistency;

    hobs::CliOptions opts;
    opts.negative_control = negative_control;
    return hobs::run_command(cmd, cfg, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
