#include <gtest/gtest.h>

#include <sstream>

#include "itolog/path_io.hpp"

using namespace itolog;

namespace {

PathBundle sample_bundle() {
  const auto grid = uniform_grid(0.3, 50);
  PathBundle b;
  b.add("W", simulate(Brownian{0.7}, grid, 12, 0, 0));
  b.add("N", simulate(Poisson{9.0}, grid, 12, 0, 1));
  return b;
}

}  // namespace

TEST(PathIo, CsvRoundTripIsExact) {
  const auto b = sample_bundle();
  std::stringstream s;
  write_csv(s, b);
  EXPECT_EQ(s.str().substr(0, 6), "t,W,N\n");
  const auto back = read_csv(s);
  EXPECT_EQ(back.times, b.times);
  EXPECT_EQ(back.names, b.names);
  EXPECT_EQ(back.columns, b.columns);
  EXPECT_EQ(back.path(1).values(), b.path(1).values());
}

TEST(PathIo, BinaryRoundTripIsExact) {
  const auto b = sample_bundle();
  std::stringstream s;
  write_binary(s, b);
  const std::string bytes = s.str();
  EXPECT_EQ(bytes.substr(0, 8), "ITOPATH1");
  EXPECT_EQ(bytes.size(), 8u + 16u + 8u * 51u * 3u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 51u);  // little-endian row count
  const auto back = read_binary(s);
  EXPECT_EQ(back.times, b.times);
  EXPECT_EQ(back.columns, b.columns);
}

TEST(PathIo, BinaryRejectsBadInput) {
  std::stringstream bad_magic("ITOPATH2" + std::string(16, '\0'));
  EXPECT_THROW(read_binary(bad_magic), std::runtime_error);
  const auto b = sample_bundle();
  std::stringstream s;
  write_binary(s, b);
  std::stringstream truncated(s.str().substr(0, s.str().size() - 3));
  EXPECT_THROW(read_binary(truncated), std::runtime_error);
}

TEST(PathIo, CsvRejectsBadInput) {
  std::stringstream ragged("t,X\n0,0\n1\n");
  EXPECT_THROW(read_csv(ragged), std::runtime_error);
  std::stringstream header("x,X\n0,0\n");
  EXPECT_THROW(read_csv(header), std::runtime_error);
  std::stringstream number("t,X\n0,0\n1,abc\n");
  EXPECT_THROW(read_csv(number), std::runtime_error);
}

TEST(PathIo, BundleRequiresSharedGrid) {
  PathBundle b;
  b.add("A", simulate(Brownian{}, uniform_grid(1.0, 4), 0));
  EXPECT_THROW(b.add("B", simulate(Brownian{}, uniform_grid(1.0, 8), 0)), std::invalid_argument);
  EXPECT_EQ(b.drivers(), 1u);
}
