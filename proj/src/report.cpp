#include "hobs/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace hobs {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void write_csv(const CsvTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_csv: cannot open '" + path + "'");
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out << ',';
    out << table.header[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for '" + path + "'");
}

void write_manifest(const std::string& command, const std::string& config_echo,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_manifest: cannot open '" + path + "'");
  out << "tool: " << kToolVersion << '\n';
  out << "command: " << command << '\n';
  out << "config:\n";
  out << config_echo;
  if (!out) throw std::runtime_error("write_manifest: write failed for '" + path + "'");
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_text: cannot open '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write_text: write failed for '" + path + "'");
}

}  // namespace hobs
