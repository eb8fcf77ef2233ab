#pragma once

// Path bundles: a shared time grid plus one column per driver.
//
// CSV: header "t,<name>,...", one row per grid point, values printed with
// 17 significant digits.
// Binary: the 8 bytes "ITOPATH1", then uint64 row count and uint64 column
// count (time column included), then rows * columns float64 values in
// row-major order. All integers and floats are little-endian.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "itolog/paths.hpp"

namespace itolog {

struct PathBundle {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t drivers() const noexcept { return columns.size(); }
  /// Appends a driver column; the path must sit on `times` (or define it
  /// when the bundle is empty).
  void add(std::string name, const SamplePath& path);
  SamplePath path(std::size_t column) const;
};

void write_csv(std::ostream& out, const PathBundle& bundle);
PathBundle read_csv(std::istream& in);

void write_binary(std::ostream& out, const PathBundle& bundle);
/// Throws std::runtime_error on a bad magic or truncated input.
PathBundle read_binary(std::istream& in);

}  // namespace itolog
