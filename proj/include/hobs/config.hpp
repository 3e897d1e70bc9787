// Flat key-value run configuration: strict parsing (unknown keys are
// errors), validation with named fields, and a deterministic emitter whose
// output parses back to an identical configuration.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hobs/solver.hpp"

namespace hobs {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string psi_preset = "valley";
  std::vector<double> psi_params{0.5, 2.0};
  std::string ustar_preset = "constant";
  std::vector<double> ustar_params{0.0};
  std::array<double, 3> box_lo{-1.0, -1.0, -1.0};
  std::array<double, 3> box_hi{1.0, 1.0, 1.0};
  std::array<int, 3> resolution{33, 33, 33};
  double p = 2.0;
  double eps = 0.5;
  std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4};
  double eta = 0.1;
  std::vector<double> eta_list{0.1, 0.05};
  double ball_radius = 0.5;
  std::uint64_t seed = 42;
  double tol_solve = 1e-8;
  double tol_verify = 0.0;  // 0 = use the per-check default
  long trials = 100000;
  int max_iters = 200000;
  std::string out_dir = "out";

  bool operator==(const RunConfig&) const = default;
};

// Parses `key = value` lines ('#' starts a comment) on top of the defaults;
// throws ConfigError naming the offending key on unknown keys, malformed
// values, or invariant violations.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

void validate_config(const RunConfig& cfg);

// Canonical text form; parse_config_text(emit_config(cfg)) == cfg.
std::string emit_config(const RunConfig& cfg);

Grid config_grid(const RunConfig& cfg);
AnalyticFunction config_psi(const RunConfig& cfg);
AnalyticFunction config_u_star(const RunConfig& cfg);
SolveOptions config_solve_options(const RunConfig& cfg);

}  // namespace hobs
