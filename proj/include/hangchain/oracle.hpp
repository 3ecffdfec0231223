#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hangchain/chain_model.hpp"
#include "hangchain/solution.hpp"

namespace hangchain {

/// Link angles from the horizontal; y_i = l_i sin(theta_i) and
/// x_i = l_i cos(theta_i). Valid states keep every |theta_i| < pi/2.
/// `slack` is only used when the span constraint is posed as an inequality
/// sum x - d = slack^2.
struct AngleState {
  std::vector<double> theta;
  double slack = 0.0;
};

/// sum_i c_i l_i sin(theta_i).
double objective(const ValidatedChainSpec& spec, const AngleState& state);

/// Augmented Lagrangian of the angle-parametrized problem
///
///   L = f + nu_close h1 + nu_span h2 + rho/2 (h1^2 + h2^2),
///   h1 = sum y_i,  h2 = sum x_i - d [- slack^2].
///
/// Internally lengths are measured in spans and masses in total masses, so
/// the multipliers and the slack are dimensionless.
class AugmentedLagrangian {
 public:
  AugmentedLagrangian(const ValidatedChainSpec& spec, bool slack_inequality);

  double nu_close = 0.0;
  double nu_span = 0.0;
  double rho = 10.0;

  bool slack_inequality() const noexcept { return slack_; }
  std::size_t dimension() const noexcept { return c_.size() + (slack_ ? 1 : 0); }

  /// Constraint values (h1, h2).
  std::pair<double, double> constraints(const AngleState& state) const;
  /// Gradients of h1 and h2 over the same variables as `gradient`.
  std::pair<std::vector<double>, std::vector<double>> constraint_gradients(
      const AngleState& state) const;
  double value(const AngleState& state) const;
  /// Gradient over theta, followed by d/dslack in slack form.
  std::vector<double> gradient(const AngleState& state) const;

 private:
  std::vector<double> c_;
  std::vector<double> lengths_;
  double span_;
  bool slack_;
  double mass_scale_;
  double length_scale_;
};

struct OracleOptions {
  int restarts = 20;
  double tol = 1e-10;  // allowed constraint violation
  std::uint64_t seed = 0;
  bool slack_inequality = false;
  double initial_rho = 10.0;
  double rho_growth = 10.0;
  int max_outer = 8;
  int max_inner = 20000;
};

/// Every restart's result, in restart order. Restarts that did not reach
/// the constraint tolerance have report.converged == false.
std::vector<ChainSolution> oracle_restarts(const ValidatedChainSpec& spec,
                                           const OracleOptions& options);

/// Best converged restart by objective, ties to the lowest restart index.
/// Throws ConvergenceFailure when no restart met the tolerance.
ChainSolution oracle_minimize(const ValidatedChainSpec& spec,
                              const OracleOptions& options = {});

inline ChainSolution oracle_minimize(const ValidatedChainSpec& spec,
                                     int restarts, double tol) {
  OracleOptions options;
  options.restarts = restarts;
  options.tol = tol;
  return oracle_minimize(spec, options);
}

}  // namespace hangchain
