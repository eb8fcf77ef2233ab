#include <gtest/gtest.h>

#include <cmath>

#include "itolog/flow.hpp"

using namespace itolog;

namespace {

FlowProblem scalar_drift(double a, double horizon, std::size_t steps) {
  FlowProblem p;
  p.dim = 1;
  p.drift = Matrix::Constant(1, 1, a);
  p.diffusion = Matrix::Zero(1, 1);
  p.horizon = horizon;
  p.steps = steps;
  return p;
}

PathBinding deterministic_entries(const FlowProblem& p) {
  const auto grid = p.grid();
  return entry_paths(p, SamplePath(grid, std::vector<double>(grid.size(), 0.0)));
}

}  // namespace

TEST(Expm, ClosedFormCases) {
  Matrix nil{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_TRUE(expm(nil).isApprox(Matrix{{1.0, 1.0}, {0.0, 1.0}}, 1e-15));
  const double th = 0.9;
  Matrix rot{{0.0, -th}, {th, 0.0}};
  EXPECT_TRUE(expm(rot).isApprox(Matrix{{std::cos(th), -std::sin(th)}, {std::sin(th), std::cos(th)}}, 1e-13));
  Matrix diag{{5.0, 0.0}, {0.0, -3.0}};
  EXPECT_NEAR(expm(diag)(0, 0), std::exp(5.0), 1e-12 * std::exp(5.0));
  EXPECT_NEAR(expm(diag)(1, 1), std::exp(-3.0), 1e-13);
  EXPECT_THROW(expm(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST(Flow, ReferenceIsEulerProduct) {
  const auto p = scalar_drift(0.8, 1.0, 100);
  const auto ref = flow_reference(p, deterministic_entries(p));
  EXPECT_NEAR(ref(0, 0), std::pow(1.0 + 0.8 / 100.0, 100.0), 1e-13);
}

TEST(Flow, ScalarDriftLogOrderOneIsExponential) {
  const auto p = scalar_drift(0.8, 1.0, 1000);
  const auto entries = deterministic_entries(p);
  // summing 1000 increments costs a few ulps
  EXPECT_NEAR(flow_from_log(p, 1, entries)(0, 0), std::exp(0.8), 1e-12 * std::exp(0.8));
}

TEST(Flow, ScalarDriftHigherOrdersFollowTheDiscreteBracket) {
  // order 2 adds -1/2 sum (a dt)^2 = -a^2 T dt / 2 to the exponent
  const double a = 0.8, dt = 1e-3;
  const auto p = scalar_drift(a, 1.0, 1000);
  const auto entries = deterministic_entries(p);
  const double order2 = flow_from_log(p, 2, entries)(0, 0);
  EXPECT_NEAR(order2, std::exp(a - a * a * dt / 2.0), 1e-12 * order2);
  EXPECT_NEAR(order2 - std::exp(a), -std::exp(a) * a * a * dt / 2.0, 1e-6);
  // with enough orders exp(log) reproduces the Euler product
  const double ref = flow_reference(p, entries)(0, 0);
  EXPECT_NEAR(flow_from_log(p, 5, entries)(0, 0), ref, 1e-12 * ref);
  // the first dropped Taylor term is about 0.8^9 / 9! = 3.7e-7
  EXPECT_NEAR(flow_from_taylor(p, 8, entries)(0, 0), ref, 1e-6);
}

TEST(Flow, OrderOneTaylorIsOnePlusIncrement) {
  auto p = demo_flow_problem(128);
  const auto entries = simulate_entry_paths(p, 5, 0);
  const Matrix t1 = flow_from_taylor(p, 1, entries);
  Matrix expected = Matrix::Identity(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      expected(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
          entries.at(pair_letter(2, i + 1, j + 1)).terminal();
    }
  }
  EXPECT_TRUE(t1.isApprox(expected, 1e-14));
}

TEST(Flow, StudyIsIndependentOfThreadCount) {
  FlowStudyConfig config;
  config.problem = demo_flow_problem(64);
  config.max_order = 2;
  config.paths = 7;
  config.seed = 99;
  config.threads = 1;
  const auto serial = run_flow_study(config);
  config.threads = 3;
  const auto parallel = run_flow_study(config);
  EXPECT_EQ(serial.log_error, parallel.log_error);
  EXPECT_EQ(serial.taylor_error, parallel.taylor_error);
  EXPECT_EQ(serial.log_taylor_gap, parallel.log_taylor_gap);
  EXPECT_EQ(serial.gap_residual, parallel.gap_residual);
  EXPECT_EQ(serial.paths, 7u);
  EXPECT_EQ(serial.steps, 64u);
}

TEST(Flow, ValidationErrors) {
  FlowProblem p = demo_flow_problem(16);
  p.drift = Matrix::Zero(3, 3);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = demo_flow_problem(16);
  p.horizon = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = demo_flow_problem(16);
  PathBinding partial = simulate_entry_paths(p, 0, 0);
  partial.erase(4);
  EXPECT_THROW(flow_reference(p, partial), std::invalid_argument);
  FlowStudyConfig config;
  config.problem = demo_flow_problem(16);
  config.paths = 0;
  EXPECT_THROW(run_flow_study(config), std::invalid_argument);
}

TEST(Flow, DemoProblemDoesNotCommute) {
  const auto p = demo_flow_problem();
  EXPECT_GT((p.drift * p.diffusion - p.diffusion * p.drift).norm(), 0.1);
}
