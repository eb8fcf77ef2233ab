#include "itolog/paths.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace itolog {

SamplePath::SamplePath(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.empty()) throw std::invalid_argument("sample path needs at least one grid point");
  if (times_.size() != values_.size()) {
    throw std::invalid_argument("sample path has " + std::to_string(times_.size()) + " times but " +
                                std::to_string(values_.size()) + " values");
  }
  if (times_.front() != 0.0) throw std::invalid_argument("sample path grid must start at t = 0");
  if (values_.front() != 0.0) throw std::invalid_argument("sample path must start at 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw std::invalid_argument("sample path grid is not strictly increasing");
  }
}

std::vector<double> SamplePath::increments() const {
  std::vector<double> d(steps());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = values_[i + 1] - values_[i];
  return d;
}

SamplePath SamplePath::from_increments(std::vector<double> times, std::span<const double> increments) {
  if (increments.size() + 1 != times.size()) throw std::invalid_argument("increment count does not match grid");
  std::vector<double> values(times.size(), 0.0);
  for (std::size_t i = 0; i < increments.size(); ++i) values[i + 1] = values[i] + increments[i];
  return SamplePath(std::move(times), std::move(values));
}

std::vector<double> uniform_grid(double horizon, std::size_t steps) {
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (steps == 0) throw std::invalid_argument("grid needs at least one step");
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) grid[i] = horizon * static_cast<double>(i) / static_cast<double>(steps);
  return grid;
}

void validate(const DriverSpec& spec) {
  if (const auto* b = std::get_if<Brownian>(&spec); b && !(b->sigma >= 0.0)) {
    throw std::invalid_argument("brownian sigma must be >= 0");
  }
  if (const auto* p = std::get_if<Poisson>(&spec); p && !(p->rate > 0.0)) {
    throw std::invalid_argument("poisson rate must be > 0");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_same_grid(const SamplePath& x, const SamplePath& y) {
  if (x.times() != y.times()) throw std::invalid_argument("paths do not share a grid");
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t path, std::uint64_t driver)
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ path) ^ (driver * 0xd1b54a32d192ed03ULL))) {}

CounterRng::result_type CounterRng::operator()() { return splitmix64(key_ + 0x632be59bd9b4e019ULL * counter_++); }

SamplePath simulate(const DriverSpec& spec, std::span<const double> grid, std::uint64_t seed,
                    std::uint64_t path_index, std::uint64_t driver_index) {
  validate(spec);
  std::vector<double> times(grid.begin(), grid.end());
  if (times.empty()) throw std::invalid_argument("empty grid");
  const std::size_t steps = times.size() - 1;
  CounterRng rng(seed, path_index, driver_index);

  if (const auto* b = std::get_if<Brownian>(&spec)) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> inc(steps);
    for (std::size_t i = 0; i < steps; ++i) inc[i] = b->sigma * std::sqrt(times[i + 1] - times[i]) * normal(rng);
    return SamplePath::from_increments(std::move(times), inc);
  }
  if (const auto* p = std::get_if<Poisson>(&spec)) {
    std::exponential_distribution<double> arrival(p->rate);
    std::vector<double> inc(steps, 0.0);
    const double horizon = times.back();
    for (double t = arrival(rng); t <= horizon; t += arrival(rng)) {
      auto it = std::lower_bound(times.begin() + 1, times.end(), t);
      inc[static_cast<std::size_t>(it - times.begin()) - 1] += 1.0;
    }
    return SamplePath::from_increments(std::move(times), inc);
  }
  if (const auto* d = std::get_if<LinearDrift>(&spec)) {
    std::vector<double> values(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) values[i] = d->slope * times[i];
    return SamplePath(std::move(times), std::move(values));
  }
  const auto& table = std::get<TablePath>(spec).path;
  if (table.times() != times) throw std::invalid_argument("table path does not sit on the simulation grid");
  return table;
}

std::size_t count_multi_jump_cells(const SamplePath& path) {
  std::size_t cells = 0;
  for (double d : path.increments()) cells += std::abs(d) > 1.0 ? 1 : 0;
  return cells;
}

SamplePath discrete_bracket(const SamplePath& x, const SamplePath& y) {
  check_same_grid(x, y);
  const auto dx = x.increments();
  const auto dy = y.increments();
  std::vector<double> inc(dx.size());
  for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = dx[i] * dy[i];
  return SamplePath::from_increments(x.times(), inc);
}

SamplePath left_integral(const SamplePath& x, const SamplePath& y) {
  check_same_grid(x, y);
  const auto dy = y.increments();
  std::vector<double> inc(dy.size());
  for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = x.values()[i] * dy[i];
  return SamplePath::from_increments(x.times(), inc);
}

SamplePath pointwise_product(const SamplePath& x, const SamplePath& y) {
  check_same_grid(x, y);
  std::vector<double> values(x.points());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = x.values()[i] * y.values()[i];
  return SamplePath(x.times(), std::move(values));
}

// ---------------------------------------------------------------------------
// PathEvaluator

PathEvaluator::PathEvaluator(const PathBinding& binding) {
  if (binding.empty()) throw std::invalid_argument("path binding is empty");
  times_ = binding.begin()->second.times();
  steps_ = binding.begin()->second.steps();
  for (const auto& [letter, path] : binding) {
    if (path.times() != times_) throw std::invalid_argument("bound paths do not share a grid");
    increments_.emplace(letter, path.increments());
  }
}

const std::vector<double>& PathEvaluator::block_increments(const Block& block) const {
  if (auto it = block_cache_.find(block); it != block_cache_.end()) return it->second;
  std::vector<double> inc(steps_, 1.0);
  for (Letter l : block.letters()) {
    auto it = increments_.find(l);
    if (it == increments_.end()) throw std::invalid_argument("letter " + std::to_string(l) + " is not bound to a path");
    for (std::size_t i = 0; i < steps_; ++i) inc[i] *= it->second[i];
  }
  return block_cache_.emplace(block, std::move(inc)).first->second;
}

SamplePath PathEvaluator::block_path(const Block& block) const {
  return SamplePath::from_increments(times_, block_increments(block));
}

double PathEvaluator::evaluate(const BracketWord& word) const {
  std::vector<double> running(steps_ + 1, 1.0);
  std::vector<double> next(steps_ + 1);
  for (const auto& block : word.blocks()) {
    const auto& inc = block_increments(block);
    next[0] = 0.0;
    for (std::size_t i = 0; i < steps_; ++i) next[i + 1] = next[i] + running[i] * inc[i];
    running.swap(next);
  }
  return running[steps_];
}

double PathEvaluator::evaluate(const Expansion& e) const { return evaluate_all(std::span(&e, 1)).front(); }

std::vector<double> PathEvaluator::evaluate_all(std::span<const Expansion> expansions) const {
  struct Node {
    std::map<Block, std::size_t> children;
    double value = 0.0;
  };
  std::vector<Node> nodes(1);
  nodes[0].value = 1.0;
  std::size_t depth = 0;

  auto insert = [&](const BracketWord& w) {
    std::size_t cur = 0;
    for (const auto& b : w.blocks()) {
      auto it = nodes[cur].children.find(b);
      if (it == nodes[cur].children.end()) {
        nodes.emplace_back();
        it = nodes[cur].children.emplace(b, nodes.size() - 1).first;
      }
      cur = it->second;
    }
    depth = std::max(depth, w.length());
    return cur;
  };
  for (const auto& e : expansions) {
    for (const auto& [w, c] : e.terms()) insert(w);
  }

  // Depth-first pass keeping one running-sum buffer per level.
  std::vector<std::vector<double>> level(depth + 1, std::vector<double>(steps_ + 1));
  std::fill(level[0].begin(), level[0].end(), 1.0);
  auto visit = [&](auto&& self, std::size_t node, std::size_t d) -> void {
    for (const auto& [block, child] : nodes[node].children) {
      const auto& inc = block_increments(block);
      const auto& parent = level[d];
      auto& cur = level[d + 1];
      cur[0] = 0.0;
      for (std::size_t i = 0; i < steps_; ++i) cur[i + 1] = cur[i] + parent[i] * inc[i];
      nodes[child].value = cur[steps_];
      self(self, child, d + 1);
    }
  };
  visit(visit, 0, 0);

  std::vector<double> out;
  out.reserve(expansions.size());
  for (const auto& e : expansions) {
    double total = 0.0;
    for (const auto& [w, c] : e.terms()) {
      std::size_t cur = 0;
      for (const auto& b : w.blocks()) cur = nodes[cur].children.at(b);
      total += c.get_d() * nodes[cur].value;
    }
    out.push_back(total);
  }
  return out;
}

double evaluate(const Expansion& e, const PathBinding& binding) { return PathEvaluator(binding).evaluate(e); }

}  // namespace itolog
