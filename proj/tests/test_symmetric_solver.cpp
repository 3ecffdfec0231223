#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hangchain/error.hpp"
#include "hangchain/symmetric_solver.hpp"
#include "support/test_support.hpp"

namespace hangchain {
namespace {

using testing::uniform_spec;

PhiFunction phi_for(const ChainSpec& spec) {
  const ValidatedChainSpec v = validate(spec);
  return PhiFunction::from_symmetric(v, compute_coefficients(v));
}

// Two uniform links: 4 mu^2 = d^2 (1/4 + mu^2) at the root.
const double kTwoLinkMu = std::sqrt(0.5625 / 1.75);

TEST(Phi, TwoLinkRootAndLimit) {
  const PhiFunction f = phi_for(uniform_spec(2, 1.5));
  EXPECT_EQ(f.deltas(), (std::vector<double>{0.5, -0.5}));
  EXPECT_LT(std::abs(phi(f, 0.566947)), 1e-5);
  EXPECT_NEAR(phi(f, 1e8), -0.5, 1e-12);
}

TEST(Phi, HorizontalMiddleLinkNearZero) {
  const PhiFunction f = phi_for(uniform_spec(3, 2.0));
  EXPECT_EQ(f.deltas()[1], 0.0);
  EXPECT_NEAR(phi(f, 1e-9), 1.0, 1e-8);
}

TEST(Phi, RejectsNonPositiveMu) {
  const PhiFunction f = phi_for(uniform_spec(2, 1.5));
  for (double mu : {0.0, -1.0, std::nan("")}) {
    EXPECT_THROW(phi(f, mu), ChainError);
    EXPECT_THROW(phi_derivative(f, mu), ChainError);
  }
  try {
    phi(f, 0.0);
  } catch (const ChainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveMu);
  }
}

TEST(PhiDerivative, ClosedFormValues) {
  const PhiFunction f = phi_for(uniform_spec(2, 1.5));
  EXPECT_NEAR(phi_derivative(f, 1.0), -2 * 0.25 / std::pow(1.25, 1.5), 1e-15);
  EXPECT_NEAR(phi_derivative(f, 1.0), -0.357771, 1e-6);

  // The horizontal middle link contributes nothing.
  const PhiFunction odd = phi_for(uniform_spec(3, 2.0));
  const PhiFunction outer({1.0, 1.0}, {1.0, -1.0}, 2.0);
  EXPECT_DOUBLE_EQ(phi_derivative(odd, 0.7), phi_derivative(outer, 0.7));
}

TEST(PhiDerivative, MatchesCentralDifferences) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const PhiFunction f = phi_for(testing::random_symmetric_spec(rng));
    const double h = 1e-5;
    const double fd =
        testing::central_difference([&](double m) { return phi(f, m); }, 0.7, h);
    EXPECT_NEAR(phi_derivative(f, 0.7), fd, 1e-6);
    const double fd2 = testing::central_difference(
        [&](double m) { return phi_derivative(f, m); }, 0.7, h);
    EXPECT_NEAR(phi_second_derivative(f, 0.7), fd2, 1e-5 * (1 + std::abs(fd2)));
  }
}

TEST(FindRoot, TwoLinkClosedForm) {
  const RootResult r = find_root(phi_for(uniform_spec(2, 1.5)));
  EXPECT_NEAR(r.mu, 0.566947, 1e-6);
  EXPECT_NEAR(r.mu, kTwoLinkMu, 1e-12);
  EXPECT_LE(std::abs(r.residual), kDefaultTolerance);
  EXPECT_LE(r.bracket.first, r.mu);
  EXPECT_GE(r.bracket.second, r.mu);
}

TEST(FindRoot, FourLinkAgreesWithBisection) {
  // Independent phi for deltas (1.5, 0.5, -0.5, -1.5), unit lengths, d = 3.
  const auto reference = [](double mu) {
    double s = 0;
    for (double d : {1.5, 0.5, -0.5, -1.5}) s += mu / std::sqrt(d * d + mu * mu);
    return 3.0 - s;
  };
  const double expected = testing::bisect(reference, 1e-6, 100.0, 1e-15);
  const RootResult r = find_root(phi_for(uniform_spec(4, 3.0)));
  EXPECT_NEAR(r.mu, 1.0965, 1e-3);
  EXPECT_NEAR(r.mu, expected, 1e-12);
}

TEST(FindRoot, ScalesWithMasses) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    ChainSpec spec = testing::random_symmetric_spec(rng);
    const double base = find_root(phi_for(spec)).mu;
    for (double& m : spec.masses) m *= 8.0;
    EXPECT_NEAR(find_root(phi_for(spec)).mu, 8.0 * base, 1e-9 * 8.0 * base);
  }
}

TEST(FindRoot, BracketingFailureWhenNoPositiveRegion) {
  // Span shorter than the horizontal middle link: phi < 0 near zero.
  const PhiFunction f({1.0, 3.0, 1.0}, {1.0, 0.0, -1.0}, 2.5);
  try {
    find_root(f);
    FAIL() << "expected BracketingFailure";
  } catch (const ChainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::BracketingFailure);
  }
}

TEST(SolveSymmetric, TwoLinkVShape) {
  const ChainSolution s = solve_symmetric(validate(uniform_spec(2, 1.5)));
  const double y1 = -std::sqrt(1 - 1.5 * 1.5 / 4);
  EXPECT_NEAR(s.y[0], y1, 1e-12);
  EXPECT_NEAR(s.y[1], -y1, 1e-12);
  EXPECT_NEAR(s.y[0], -0.661438, 1e-6);
  EXPECT_NEAR(s.x[0], 0.75, 1e-12);
  EXPECT_EQ(s.lambda, -1.0);
  EXPECT_EQ(s.report.solver, "symmetric");
}

TEST(SolveSymmetric, ThreeLinkHorizontalMiddle) {
  const ChainSolution s = solve_symmetric(validate(uniform_spec(3, 2.0)));
  EXPECT_NEAR(s.y[0], -std::sqrt(3.0) / 2, 1e-10);
  EXPECT_EQ(s.y[1], 0.0);
  EXPECT_EQ(s.x[1], 1.0);
  EXPECT_NEAR(s.y[2], std::sqrt(3.0) / 2, 1e-10);
  EXPECT_EQ(s.lambda, -1.5);
}

TEST(SolveSymmetric, FourLinkClosedFormAtRoot) {
  const ChainSolution s = solve_symmetric(validate(uniform_spec(4, 3.0)));
  EXPECT_NEAR(s.y[0], -1.5 / std::sqrt(2.25 + s.mu * s.mu), 1e-15);
}

TEST(SolveSymmetric, RejectsAsymmetricChain) {
  try {
    solve_symmetric(validate({{1, 2, 3}, {1, 1, 1}, 2}));
    FAIL() << "expected NotSymmetric";
  } catch (const ChainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(SymmetricProperty, RootIsUniqueAndPhiConvex) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PhiFunction f = phi_for(testing::random_symmetric_spec(rng));
    const double mu = find_root(f).mu;
    EXPECT_GT(phi(f, 0.9 * mu), 0.0);
    EXPECT_LT(phi(f, 1.1 * mu), 0.0);
    for (int k = 0; k < 10; ++k) {
      const double a = 10 * mu * unit(rng) + 1e-6;
      const double b = 10 * mu * unit(rng) + 1e-6;
      EXPECT_LE(phi(f, 0.5 * (a + b)),
                0.5 * (phi(f, a) + phi(f, b)) + f.noise_floor());
      EXPECT_LT(phi_derivative(f, a), 0.0);
      EXPECT_GT(phi_second_derivative(f, a), 0.0);
    }
  }
}

TEST(SymmetricProperty, SolutionIsSymmetricFeasibleAndStationary) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const ValidatedChainSpec v = validate(testing::random_symmetric_spec(rng));
    const ChainSolution s = solve_symmetric(v);
    const Coefficients c = compute_coefficients(v);
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_LE(std::abs(s.y[i] + s.y[n - 1 - i]), 1e-12);
      const double delta = c.c[i] - c.c_bar;
      if (std::abs(delta) > 1e-12 * c.total_mass) {
        EXPECT_EQ(s.y[i] < 0, delta > 0) << "link " << i;
      }
      EXPECT_NEAR(s.x[i] * s.x[i] + s.y[i] * s.y[i],
                  v.lengths()[i] * v.lengths()[i], 1e-10 * v.lengths()[i]);
    }
    if (n % 2 == 1) EXPECT_EQ(s.y[n / 2], 0.0);
    EXPECT_LE(s.residuals.sum_y, 1e-10);
    EXPECT_LE(s.residuals.span, 1e-10);
    EXPECT_LE(s.residuals.stationarity, 1e-8);
    EXPECT_GT(s.mu, 0.0);
  }
}

}  // namespace
}  // namespace hangchain
