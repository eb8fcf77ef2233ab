#include "itolog/path_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace itolog {

void PathBundle::add(std::string name, const SamplePath& path) {
  if (columns.empty() && times.empty()) {
    times = path.times();
  } else if (path.times() != times) {
    throw std::invalid_argument("path does not sit on the bundle grid");
  }
  names.push_back(std::move(name));
  columns.push_back(path.values());
}

SamplePath PathBundle::path(std::size_t column) const { return SamplePath(times, columns.at(column)); }

namespace {

constexpr std::array<char, 8> kMagic = {'I', 'T', 'O', 'P', 'A', 'T', 'H', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes;
  for (std::size_t i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw std::runtime_error("truncated path file");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void check_shape(const PathBundle& bundle) {
  for (const auto& c : bundle.columns) {
    if (c.size() != bundle.times.size()) throw std::invalid_argument("bundle column length differs from grid");
  }
}

}  // namespace

void write_csv(std::ostream& out, const PathBundle& bundle) {
  check_shape(bundle);
  out << 't';
  for (std::size_t c = 0; c < bundle.drivers(); ++c) {
    out << ',' << (c < bundle.names.size() ? bundle.names[c] : "x" + std::to_string(c + 1));
  }
  out << '\n';
  for (std::size_t r = 0; r < bundle.times.size(); ++r) {
    out << format_double(bundle.times[r]);
    for (const auto& col : bundle.columns) out << ',' << format_double(col[r]);
    out << '\n';
  }
}

PathBundle read_csv(std::istream& in) {
  PathBundle bundle;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV input");
  {
    std::stringstream header(line);
    std::string cell;
    if (!std::getline(header, cell, ',') || cell != "t") throw std::runtime_error("CSV header must start with 't'");
    while (std::getline(header, cell, ',')) bundle.names.push_back(cell);
  }
  bundle.columns.resize(bundle.names.size());
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> cells;
    std::size_t start = 0;
    while (start <= line.size()) {
      auto end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      try {
        cells.push_back(std::stod(line.substr(start, end - start)));
      } catch (const std::exception&) {
        throw std::runtime_error("bad number on CSV row " + std::to_string(row));
      }
      start = end + 1;
    }
    if (cells.size() != bundle.names.size() + 1) {
      throw std::runtime_error("CSV row " + std::to_string(row) + " has the wrong number of columns");
    }
    bundle.times.push_back(cells[0]);
    for (std::size_t c = 0; c < bundle.names.size(); ++c) bundle.columns[c].push_back(cells[c + 1]);
  }
  return bundle;
}

void write_binary(std::ostream& out, const PathBundle& bundle) {
  check_shape(bundle);
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, bundle.times.size());
  put_u64(out, bundle.drivers() + 1);
  for (std::size_t r = 0; r < bundle.times.size(); ++r) {
    put_u64(out, std::bit_cast<std::uint64_t>(bundle.times[r]));
    for (const auto& col : bundle.columns) put_u64(out, std::bit_cast<std::uint64_t>(col[r]));
  }
}

PathBundle read_binary(std::istream& in) {
  std::array<char, 8> magic;
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) throw std::runtime_error("not an ITOPATH1 file");
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  if (cols == 0) throw std::runtime_error("path file without a time column");
  PathBundle bundle;
  bundle.columns.resize(cols - 1);
  for (std::size_t c = 0; c + 1 < cols; ++c) bundle.names.push_back("x" + std::to_string(c + 1));
  for (std::uint64_t r = 0; r < rows; ++r) {
    bundle.times.push_back(std::bit_cast<double>(get_u64(in)));
    for (auto& col : bundle.columns) col.push_back(std::bit_cast<double>(get_u64(in)));
  }
  return bundle;
}

}  // namespace itolog
