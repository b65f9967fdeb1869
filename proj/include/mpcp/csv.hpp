#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "errors.hpp"

namespace mpcp {

// Shortest round-trip decimal form, locale-independent (CSV files must not
// grow comma decimal points on de_DE machines).
inline std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, p);
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write: " + path.string());
  return out;
}

}  // namespace mpcp
