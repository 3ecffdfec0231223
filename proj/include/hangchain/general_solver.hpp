#pragma once

#include <array>
#include <vector>

#include "hangchain/chain_model.hpp"
#include "hangchain/solution.hpp"
#include "hangchain/symmetric_solver.hpp"

namespace hangchain {

/// Multipliers of the closing constraint (lambda) and the spanning
/// constraint (mu). At the optimum mu > 0 and -c_1 < lambda < -c_n.
struct MultiplierPair {
  double lambda = 0.0;
  double mu = 0.0;
};

/// Two-equation reduction of the optimality system. Eliminating y through
///
///   y_i(lambda, mu) = -l_i (c_i + lambda) / sqrt((c_i + lambda)^2 + mu^2)
///
/// leaves R(lambda, mu) = (sum_i y_i, d - sum_i l_i mu / sqrt(...)) = 0.
struct KktSystem {
  std::vector<double> lengths;
  std::vector<double> c;
  double span = 0.0;

  static KktSystem from_spec(const ValidatedChainSpec& spec,
                             const Coefficients& coeffs);
};

using Residual2 = std::array<double, 2>;
using Jacobian2 = std::array<std::array<double, 2>, 2>;  // [row][col]

Residual2 kkt_residual(const KktSystem& sys, const MultiplierPair& p);

/// Rows are (R1, R2), columns are (d/dlambda, d/dmu).
Jacobian2 kkt_jacobian(const KktSystem& sys, const MultiplierPair& p);

struct GeneralSolverOptions {
  double tol = kDefaultTolerance;
  int max_iterations = 500;
  int max_halvings = 30;
  double min_step = 1e-14;
};

/// Damped Newton on R(lambda, mu) = 0, started from the symmetrized chain.
/// Works for any validated spec; symmetry is not required.
ChainSolution solve_general(const ValidatedChainSpec& spec,
                            const GeneralSolverOptions& options = {});

inline ChainSolution solve_general(const ValidatedChainSpec& spec,
                                   double tol) {
  GeneralSolverOptions options;
  options.tol = tol;
  return solve_general(spec, options);
}

}  // namespace hangchain
