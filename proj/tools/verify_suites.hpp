#pragma once

// The `verify` suites behind the command line. Each returns one report per
// checked case; exact checks carry tolerance 0 and the largest coefficient
// mismatch as error.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "itolog/report.hpp"

namespace itolog::cli {

/// Unit checks always; for grade >= 1 also the product laws on words and
/// surjections up to that total weight/arity.
std::vector<VerificationReport> verify_algebra(std::size_t grade);

/// Series log vs closed forms, exp(log) vs the identity series, the
/// subset-sum identity and the matrix exp/log round trip, all through `grade`.
std::vector<VerificationReport> verify_theorem(std::size_t grade);

struct PathwiseOptions {
  std::uint64_t seed = 0;
  std::size_t steps = 4096;
  double horizon = 1.0;
  std::size_t max_weight = 3;  // per factor
  double tolerance = 1e-9;     // relative
};
std::vector<VerificationReport> verify_pathwise(const PathwiseOptions& options);

/// The gap between the log and Taylor flows at order k, minus its predicted
/// weight-(k+1) leading term, must stay below this fraction of the gap.
inline constexpr double kFlowResidualRatio = 0.5;

struct FlowOptions {
  std::uint64_t seed = 0;
  std::size_t steps = 1u << 14;
  std::size_t paths = 1000;
  std::size_t max_order = 3;
  std::size_t threads = 0;
};
std::vector<VerificationReport> verify_flow(const FlowOptions& options);

}  // namespace itolog::cli
