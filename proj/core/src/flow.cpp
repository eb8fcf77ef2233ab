#include "itolog/flow.hpp"

#include <algorithm>
#include <exception>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace itolog {

void FlowProblem::validate() const {
  if (dim == 0) throw std::invalid_argument("flow problem dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dim);
  if (drift.rows() != d || drift.cols() != d) throw std::invalid_argument("drift matrix must be dim x dim");
  if (diffusion.rows() != d || diffusion.cols() != d) throw std::invalid_argument("diffusion matrix must be dim x dim");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (steps == 0) throw std::invalid_argument("flow problem needs at least one step");
}

FlowProblem demo_flow_problem(std::size_t steps) {
  FlowProblem p;
  p.dim = 2;
  p.drift = Matrix{{-1.0, 2.0}, {0.5, -0.5}};
  p.diffusion = Matrix{{0.6, -0.4}, {1.0, 0.3}};
  p.horizon = 0.1;
  p.steps = steps;
  return p;
}

PathBinding entry_paths(const FlowProblem& problem, const SamplePath& brownian) {
  problem.validate();
  const auto& t = brownian.times();
  const auto& w = brownian.values();
  PathBinding out;
  for (std::size_t i = 0; i < problem.dim; ++i) {
    for (std::size_t j = 0; j < problem.dim; ++j) {
      const double a = problem.drift(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const double b = problem.diffusion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      std::vector<double> values(t.size());
      for (std::size_t m = 0; m < t.size(); ++m) values[m] = a * t[m] + b * w[m];
      out.emplace(pair_letter(problem.dim, i + 1, j + 1), SamplePath(t, std::move(values)));
    }
  }
  return out;
}

PathBinding simulate_entry_paths(const FlowProblem& problem, std::uint64_t seed, std::uint64_t path_index) {
  problem.validate();
  const auto grid = problem.grid();
  return entry_paths(problem, simulate(Brownian{1.0}, grid, seed, path_index, 0));
}

Matrix expm(const Matrix& a, double tolerance) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm needs a square matrix");
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  Matrix sum = Matrix::Identity(a.rows(), a.cols());
  Matrix term = sum;
  for (int k = 1; k < 64; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
    if (term.norm() <= tolerance * sum.norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

namespace {

std::vector<std::vector<double>> entry_increments(const FlowProblem& problem, const PathBinding& entries) {
  problem.validate();
  const std::size_t d = problem.dim;
  if (entries.size() != d * d) throw std::invalid_argument("binding does not match the problem dimension");
  std::vector<std::vector<double>> inc(d * d);
  std::size_t steps = entries.begin()->second.steps();
  for (std::size_t letter = 1; letter <= d * d; ++letter) {
    auto it = entries.find(static_cast<Letter>(letter));
    if (it == entries.end()) throw std::invalid_argument("binding misses a matrix entry letter");
    if (it->second.steps() != steps) throw std::invalid_argument("entry paths do not share a grid");
    inc[letter - 1] = it->second.increments();
  }
  return inc;
}

}  // namespace

Matrix flow_reference(const FlowProblem& problem, const PathBinding& entries) {
  const auto inc = entry_increments(problem, entries);
  const auto d = static_cast<Eigen::Index>(problem.dim);
  const std::size_t steps = inc.front().size();
  Matrix x = Matrix::Identity(d, d);
  Matrix step(d, d);
  for (std::size_t m = 0; m < steps; ++m) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) step(i, j) = inc[static_cast<std::size_t>(i * d + j)][m];
    }
    x += x * step;
  }
  return x;
}

Matrix evaluate_matrix(const MatrixExpansion& me, const PathEvaluator& evaluator) {
  const auto values = evaluator.evaluate_all(me.entries());
  const auto d = static_cast<Eigen::Index>(me.dim());
  Matrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) out(i, j) = values[static_cast<std::size_t>(i * d + j)];
  }
  return out;
}

Matrix flow_from_log(const FlowProblem& problem, std::size_t order, const PathBinding& entries) {
  entry_increments(problem, entries);
  return expm(evaluate_matrix(matrix_log(problem.dim, order), PathEvaluator(entries)));
}

Matrix flow_from_taylor(const FlowProblem& problem, std::size_t order, const PathBinding& entries) {
  entry_increments(problem, entries);
  return evaluate_matrix(matrix_ito_taylor(problem.dim, order), PathEvaluator(entries));
}

FlowStudyResult run_flow_study(const FlowStudyConfig& config) {
  const FlowProblem& problem = config.problem;
  problem.validate();
  if (config.max_order < 1) throw std::invalid_argument("flow study needs max_order >= 1");
  if (config.paths == 0) throw std::invalid_argument("flow study needs at least one path");
  const std::size_t orders = config.max_order;
  const std::size_t d = problem.dim;

  // Symbolic inputs, shared read-only by all workers. Layout per order k:
  // [log_k | taylor_k | leading gap term], each dim*dim entries.
  std::vector<Expansion> symbolic;
  for (std::size_t k = 1; k <= orders; ++k) {
    const MatrixExpansion log_k = matrix_log(d, k);
    const MatrixExpansion taylor_k = matrix_ito_taylor(d, k);
    const MatrixExpansion lead = matrix_exp(log_k, k + 1).grade(k + 1);
    for (const auto* m : {&log_k, &taylor_k, &lead}) {
      symbolic.insert(symbolic.end(), m->entries().begin(), m->entries().end());
    }
  }

  struct PathErrors {
    std::vector<double> log_error, taylor_error, gap, residual;
  };
  std::vector<PathErrors> per_path(config.paths);

  auto run_path = [&](std::size_t p) {
    const PathBinding entries = simulate_entry_paths(problem, config.seed, p);
    const PathEvaluator evaluator(entries);
    const auto values = evaluator.evaluate_all(symbolic);
    const Matrix reference = flow_reference(problem, entries);
    const auto dd = static_cast<Eigen::Index>(d);
    auto block = [&](std::size_t offset) {
      Matrix m(dd, dd);
      for (Eigen::Index i = 0; i < dd; ++i) {
        for (Eigen::Index j = 0; j < dd; ++j) m(i, j) = values[offset + static_cast<std::size_t>(i * dd + j)];
      }
      return m;
    };
    PathErrors& e = per_path[p];
    for (std::size_t k = 0; k < orders; ++k) {
      const std::size_t base = 3 * d * d * k;
      const Matrix from_log = expm(block(base));
      const Matrix from_taylor = block(base + d * d);
      const Matrix lead = block(base + 2 * d * d);
      e.log_error.push_back((from_log - reference).norm());
      e.taylor_error.push_back((from_taylor - reference).norm());
      e.gap.push_back((from_log - from_taylor).norm());
      e.residual.push_back((from_log - from_taylor - lead).norm());
    }
  };

  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, config.paths);
  if (threads <= 1) {
    for (std::size_t p = 0; p < config.paths; ++p) run_path(p);
  } else {
    std::vector<std::exception_ptr> failures(threads);
    {
      std::vector<std::jthread> workers;
      for (std::size_t t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
          try {
            for (std::size_t p = t; p < config.paths; p += threads) run_path(p);
          } catch (...) {
            failures[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  FlowStudyResult result;
  result.paths = config.paths;
  result.steps = problem.steps;
  result.log_error.assign(orders, 0.0);
  result.taylor_error.assign(orders, 0.0);
  result.log_taylor_gap.assign(orders, 0.0);
  result.gap_residual.assign(orders, 0.0);
  for (const auto& e : per_path) {
    for (std::size_t k = 0; k < orders; ++k) {
      result.log_error[k] += e.log_error[k];
      result.taylor_error[k] += e.taylor_error[k];
      result.log_taylor_gap[k] += e.gap[k];
      result.gap_residual[k] += e.residual[k];
    }
  }
  const double n = static_cast<double>(config.paths);
  for (std::size_t k = 0; k < orders; ++k) {
    result.log_error[k] /= n;
    result.taylor_error[k] /= n;
    result.log_taylor_gap[k] /= n;
    result.gap_residual[k] /= n;
  }
  return result;
}

}  // namespace itolog
