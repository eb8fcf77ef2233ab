#pragma once

// Numeric flow comparison for the linear matrix SDE dX = X_- dM, X_0 = Id,
// with M_t = A t + B W_t entry-wise.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "itolog/ito_symbolic.hpp"
#include "itolog/paths.hpp"

namespace itolog {

using Matrix = Eigen::MatrixXd;

struct FlowProblem {
  std::size_t dim = 2;
  Matrix drift;      ///< A
  Matrix diffusion;  ///< B
  double horizon = 0.1;
  std::size_t steps = 1024;

  /// Throws std::invalid_argument for dim 0, non-square or mismatched A/B,
  /// horizon <= 0 or zero steps.
  void validate() const;
  std::vector<double> grid() const { return uniform_grid(horizon, steps); }
};

/// The 2x2 study problem: non-commuting A and B, T = 0.1.
FlowProblem demo_flow_problem(std::size_t steps = 1u << 14);

/// Binds pair_letter(dim, i, j) to the path A_ij t + B_ij W_t.
PathBinding entry_paths(const FlowProblem& problem, const SamplePath& brownian);
/// Same, with W simulated from (seed, path_index) on the problem grid.
PathBinding simulate_entry_paths(const FlowProblem& problem, std::uint64_t seed, std::uint64_t path_index);

/// Matrix exponential by scaling and squaring of the Taylor series; the
/// series is summed until the next term is below `tolerance` relative to the
/// partial sum.
Matrix expm(const Matrix& a, double tolerance = 1e-12);

/// Left-point recursion X_{m+1} = X_m (Id + dM_m). Throws std::invalid_argument
/// when the binding does not hold exactly the dim^2 pair letters.
Matrix flow_reference(const FlowProblem& problem, const PathBinding& entries);

/// Entry-wise evaluation of a matrix expansion.
Matrix evaluate_matrix(const MatrixExpansion& me, const PathEvaluator& evaluator);

/// expm of the truncated logarithm evaluated on the paths.
Matrix flow_from_log(const FlowProblem& problem, std::size_t order, const PathBinding& entries);
/// The truncated Ito-Taylor series evaluated on the paths.
Matrix flow_from_taylor(const FlowProblem& problem, std::size_t order, const PathBinding& entries);

struct FlowStudyConfig {
  FlowProblem problem;
  std::size_t max_order = 3;
  std::size_t paths = 1000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;  ///< 0: hardware concurrency
};

/// Per-order means over the Monte Carlo paths (Frobenius norms), index k-1
/// for order k.
struct FlowStudyResult {
  std::vector<double> log_error;       ///< |flow_from_log(k) - reference|
  std::vector<double> taylor_error;    ///< |flow_from_taylor(k) - reference|
  std::vector<double> log_taylor_gap;  ///< |flow_from_log(k) - flow_from_taylor(k)|
  /// |flow_from_log(k) - flow_from_taylor(k) - G_{k+1}|, where G_{k+1} is the
  /// weight-(k+1) part of the symbolic exp of the order-k logarithm: the
  /// leading term of the gap implied by exp(log) = Taylor through order k.
  std::vector<double> gap_residual;
  std::size_t paths = 0;
  std::size_t steps = 0;
};

/// Runs every path independently and reduces in path order, so results do
/// not depend on the thread count.
FlowStudyResult run_flow_study(const FlowStudyConfig& config);

}  // namespace itolog
