#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hangchain/error.hpp"
#include "hangchain/oracle.hpp"
#include "hangchain/symmetric_solver.hpp"
#include "support/test_support.hpp"

namespace hangchain {
namespace {

using testing::uniform_spec;

TEST(OracleObjective, DirectEvaluation) {
  const ValidatedChainSpec two = validate(uniform_spec(2, 1.5));
  EXPECT_EQ(objective(two, {{0.0, 0.0}}), 0.0);
  const double third = std::numbers::pi / 3;
  EXPECT_NEAR(objective(two, {{-third, third}}), -std::sqrt(3.0) / 2, 1e-15);

  const ValidatedChainSpec three = validate(uniform_spec(3, 2.0));
  const ChainSolution s = solve_symmetric(three);
  AngleState state;
  for (std::size_t i = 0; i < 3; ++i) state.theta.push_back(std::asin(s.y[i]));
  EXPECT_NEAR(objective(three, state), s.objective, 1e-14);
  EXPECT_NEAR(s.objective, -std::sqrt(3.0), 1e-10);
}

TEST(OracleMinimize, AnalyticCases) {
  const ChainSolution two = oracle_minimize(validate(uniform_spec(2, 1.5)));
  EXPECT_NEAR(two.y[0], -0.661438, 1e-5);
  EXPECT_NEAR(two.y[1], 0.661438, 1e-5);
  EXPECT_EQ(two.report.solver, "oracle");
  EXPECT_TRUE(two.report.converged);

  const ChainSolution three = oracle_minimize(validate(uniform_spec(3, 2.0)));
  EXPECT_NEAR(three.y[0], -0.866025, 1e-5);
  EXPECT_NEAR(three.y[1], 0.0, 1e-5);
  EXPECT_NEAR(three.y[2], 0.866025, 1e-5);

  const ValidatedChainSpec four = validate(uniform_spec(4, 3.0));
  EXPECT_NEAR(oracle_minimize(four).objective, solve_symmetric(four).objective,
              1e-6);
}

TEST(OracleMinimize, FailsWithoutRestarts) {
  OracleOptions options;
  options.restarts = 0;
  try {
    oracle_minimize(validate(uniform_spec(2, 1.5)), options);
    FAIL() << "expected ConvergenceFailure";
  } catch (const ChainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConvergenceFailure);
  }
}

TEST(OracleMinimize, DeterministicForFixedSeed) {
  const ValidatedChainSpec v = validate({{1, 2, 5, 1}, {1, 2, 1, 1.5}, 3.5});
  OracleOptions options;
  options.restarts = 4;
  options.seed = 42;
  const ChainSolution a = oracle_minimize(v, options);
  const ChainSolution b = oracle_minimize(v, options);
  EXPECT_EQ(a.y, b.y);
}

// Two links admit only the V and the inverted V, so restarts may split
// between them; from three links on every restart finds the minimum.
TEST(OracleProperty, RestartsAgreeAndNeverBeatKkt) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const ValidatedChainSpec v =
        validate(testing::random_symmetric_spec(rng, {3, 12}));
    OracleOptions options;
    options.seed = trial;
    const auto runs = oracle_restarts(v, options);
    const ChainSolution kkt = solve_symmetric(v);
    for (const ChainSolution& run : runs) {
      ASSERT_TRUE(run.report.converged);
      for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_NEAR(run.y[i], runs.front().y[i], 1e-5);
      }
      EXPECT_GE(run.objective, kkt.objective - 1e-8);
    }
  }
}

TEST(OracleProperty, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> angle(-1.3, 1.3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (bool slack : {false, true}) {
    for (int trial = 0; trial < 10; ++trial) {
      const ValidatedChainSpec v = validate(testing::random_spec(rng, {2, 15}));
      AugmentedLagrangian al(v, slack);
      al.nu_close = unit(rng);
      al.nu_span = unit(rng);
      al.rho = 10.0;
      AngleState state;
      for (std::size_t i = 0; i < v.size(); ++i) state.theta.push_back(angle(rng));
      state.slack = slack ? unit(rng) : 0.0;
      const std::vector<double> grad = al.gradient(state);
      ASSERT_EQ(grad.size(), al.dimension());
      for (std::size_t k = 0; k < grad.size(); ++k) {
        const auto along = [&](double t) {
          AngleState s = state;
          if (k < s.theta.size()) {
            s.theta[k] = t;
          } else {
            s.slack = t;
          }
          return al.value(s);
        };
        const double at = k < state.theta.size() ? state.theta[k] : state.slack;
        EXPECT_NEAR(grad[k], testing::central_difference(along, at, 1e-5),
                    1e-6);
      }
    }
  }
}

TEST(OracleProperty, SlackFormEndsWithTightSpan) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 5; ++trial) {
    const ValidatedChainSpec v = validate(testing::random_spec(rng, {2, 12}));
    OracleOptions options;
    options.slack_inequality = true;
    options.restarts = 5;
    options.seed = trial;
    const ChainSolution s = oracle_minimize(v, options);
    EXPECT_EQ(s.report.solver, "oracle-slack");
    double sum_x = 0.0;
    for (double x : s.x) sum_x += x;
    EXPECT_NEAR(sum_x, v.span(), 1e-6);
  }
}

}  // namespace
}  // namespace hangchain
