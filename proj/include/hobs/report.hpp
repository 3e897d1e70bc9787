// Deterministic text output: shortest round-trip double formatting and the
// CSV/manifest writers shared by the CLI commands. Identical inputs always
// produce byte-identical files.
#pragma once

#include <string>
#include <vector>

namespace hobs {

// Shortest representation that round-trips exactly (std::to_chars).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const CsvTable& table, const std::string& path);

// Plain-text run manifest: tool version, command, seed, and a sorted echo
// of the effective configuration.
void write_manifest(const std::string& command, const std::string& config_echo,
                    const std::string& path);

void write_text(const std::string& text, const std::string& path);

inline constexpr const char* kToolVersion = "hobs 0.1.0";

}  // namespace hobs
