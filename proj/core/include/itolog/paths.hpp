#pragma once

// Discrete semimartingale paths and exact pathwise evaluation of bracket-word
// expansions.
//
// All integrals are left-point sums and all brackets are sums of increment
// products, so the quasi-shuffle product rule holds as a finite identity on
// every grid: evaluate(qsh(u, v)) == evaluate(u) * evaluate(v) up to
// round-off.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "itolog/qshuffle.hpp"

namespace itolog {

/// Values of a scalar process on a strictly increasing grid starting at 0,
/// with value 0 at time 0.
class SamplePath {
 public:
  SamplePath() = default;
  /// Throws std::invalid_argument when the invariants fail.
  SamplePath(std::vector<double> times, std::vector<double> values);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t points() const noexcept { return times_.size(); }
  std::size_t steps() const noexcept { return times_.empty() ? 0 : times_.size() - 1; }
  double terminal() const { return values_.back(); }
  std::vector<double> increments() const;

  /// Rebuilds a path from its increments on `times`.
  static SamplePath from_increments(std::vector<double> times, std::span<const double> increments);

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// {0, T/M, ..., T}. Throws on T <= 0 or M == 0.
std::vector<double> uniform_grid(double horizon, std::size_t steps);

struct Brownian {
  double sigma = 1.0;
};
struct Poisson {
  double rate = 1.0;
};
struct LinearDrift {
  double slope = 1.0;
};
struct TablePath {
  SamplePath path;
};
using DriverSpec = std::variant<Brownian, Poisson, LinearDrift, TablePath>;

/// Throws std::invalid_argument for sigma < 0 or rate <= 0.
void validate(const DriverSpec& spec);

/// Counter-based 64-bit generator: the n-th output depends only on
/// (seed, path, driver, n), so path sets do not depend on generation order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t path, std::uint64_t driver);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Brownian: N(0, sigma^2 dt) increments. Poisson: exponential arrivals at
/// `rate`, each jump attributed to the first grid time at or after it
/// (right-continuous). LinearDrift: slope * t. TablePath: the stored path,
/// which must sit on `grid`.
SamplePath simulate(const DriverSpec& spec, std::span<const double> grid, std::uint64_t seed,
                    std::uint64_t path_index = 0, std::uint64_t driver_index = 0);

/// Grid cells whose increment exceeds one unit jump; nonzero means the grid
/// does not resolve the jumps of a counting path.
std::size_t count_multi_jump_cells(const SamplePath& path);

/// [x, y]_t = sum over cells of dx dy. Throws on grid mismatch.
SamplePath discrete_bracket(const SamplePath& x, const SamplePath& y);
/// int x_- dy as a left-point sum.
SamplePath left_integral(const SamplePath& x, const SamplePath& y);
/// Pointwise product x * y.
SamplePath pointwise_product(const SamplePath& x, const SamplePath& y);

using PathBinding = std::map<Letter, SamplePath>;

/// Evaluates bracket words on a fixed set of paths sharing one grid.
///
/// Words are organised in a prefix trie so that each distinct prefix costs a
/// single pass over the grid. Block increments are cached per block, so an
/// evaluator must not be shared between threads.
class PathEvaluator {
 public:
  /// Throws std::invalid_argument when the binding is empty or grids differ.
  explicit PathEvaluator(const PathBinding& binding);

  std::size_t steps() const noexcept { return steps_; }

  /// Terminal value of the iterated left-point sum; the unit word is 1.
  double evaluate(const BracketWord& word) const;
  /// Linear combination with coefficients converted to double.
  double evaluate(const Expansion& e) const;
  /// Evaluates several expansions sharing a single prefix trie.
  std::vector<double> evaluate_all(std::span<const Expansion> expansions) const;

  /// The iterated bracket of a block as a path.
  SamplePath block_path(const Block& block) const;

 private:
  const std::vector<double>& block_increments(const Block& block) const;

  std::vector<double> times_;
  std::size_t steps_ = 0;
  std::map<Letter, std::vector<double>> increments_;
  mutable std::map<Block, std::vector<double>> block_cache_;
};

/// Convenience wrapper around PathEvaluator.
double evaluate(const Expansion& e, const PathBinding& binding);

}  // namespace itolog
