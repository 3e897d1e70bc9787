// Command dispatch shared by the `hobs` binary and the end-to-end tests.
// Every command writes its artifacts (field CSVs, report CSVs, summary.txt,
// manifest.txt) into the configured output directory and returns the
// process exit code: 0 on success/pass, 1 on verification failure.
// Usage errors surface as ConfigError/invalid_argument and map to exit 2
// in the binary.
#pragma once

#include <string>

#include "hobs/config.hpp"

namespace hobs {

enum class Command { Solve, Penalize, LsCheck, EpsSweep, Lemmas, Consistency };

// Throws ConfigError on an unknown command name.
Command command_from_name(const std::string& name);

struct CliOptions {
  bool negative_control = false;  // ls-check: run the adversarial control
};

int run_command(Command cmd, const RunConfig& cfg, const CliOptions& opts = {});

}  // namespace hobs
