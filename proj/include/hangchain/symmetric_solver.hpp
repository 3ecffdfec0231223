#pragma once

#include <utility>
#include <vector>

#include "hangchain/chain_model.hpp"
#include "hangchain/solution.hpp"

namespace hangchain {

/// The scalar span equation of a mirror-symmetric chain,
///
///   phi(mu) = d - sum_i l_i * mu / sqrt(delta_i^2 + mu^2),
///
/// where delta_i = c_i - c_bar. Its unique positive root is the multiplier of
/// the spanning constraint. phi is strictly decreasing and convex on (0, inf).
class PhiFunction {
 public:
  PhiFunction(std::vector<double> lengths, std::vector<double> deltas,
              double span);

  /// Builds deltas from the coefficients, forcing exact antisymmetry
  /// delta_i = -delta_{n+1-i} (and a zero middle delta for odd n).
  static PhiFunction from_symmetric(const ValidatedChainSpec& spec,
                                    const Coefficients& coeffs);

  const std::vector<double>& lengths() const noexcept { return lengths_; }
  const std::vector<double>& deltas() const noexcept { return deltas_; }
  double span() const noexcept { return span_; }

  /// Upper bound on the rounding error of one phi evaluation.
  double noise_floor() const noexcept;

 private:
  std::vector<double> lengths_;
  std::vector<double> deltas_;
  double span_;
};

double phi(const PhiFunction& f, double mu);
double phi_derivative(const PhiFunction& f, double mu);
double phi_second_derivative(const PhiFunction& f, double mu);

struct RootResult {
  double mu = 0.0;
  int iterations = 0;
  std::pair<double, double> bracket;  // final (lo, hi)
  double residual = 0.0;              // phi(mu)
  std::vector<std::pair<double, double>> history;
};

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr int kRootMaxIterations = 200;

/// Newton's method on phi, safeguarded by a bracket [lo, hi] with
/// phi(lo) > 0 > phi(hi). Steps that leave the bracket become bisections.
RootResult find_root(const PhiFunction& f, double tol = kDefaultTolerance,
                     int max_iterations = kRootMaxIterations);

/// Closed-form equilibrium of a mirror-symmetric chain. Throws NotSymmetric
/// when check_symmetry fails at `symmetry_tolerance`.
ChainSolution solve_symmetric(
    const ValidatedChainSpec& spec, double tol = kDefaultTolerance,
    double symmetry_tolerance = kDefaultSymmetryTolerance);

}  // namespace hangchain
