#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hangchain/chain_model.hpp"

namespace hangchain {

/// Violation of the optimality system at a candidate (y, lambda, mu).
struct KktResiduals {
  double stationarity = 0.0;  // max_i |c_i + lambda + mu * y_i / x_i|
  double sum_y = 0.0;         // |sum_i y_i|
  double span = 0.0;          // |d - sum_i x_i|
  double dual = 0.0;          // max(0, -mu)

  double max_norm() const;
};

struct SolverReport {
  std::string solver;
  int iterations = 0;
  bool converged = false;
  // Successive root brackets (symmetric solver only).
  std::vector<std::pair<double, double>> brackets;
  double residual_norm = 0.0;
  // Set by the CLI when a Newton failure was recovered with the oracle.
  bool fallback = false;
};

/// Equilibrium of one chain: per-link spans plus the multipliers of the
/// closing (sum y = 0) and spanning (sum x = d) constraints.
struct ChainSolution {
  std::vector<double> y;
  std::vector<double> x;
  double lambda = 0.0;
  double mu = 0.0;
  double objective = 0.0;  // sum_i c_i y_i
  KktResiduals residuals;
  SolverReport report;
};

/// Fills objective and residuals from y, x, lambda and mu.
void evaluate_solution(const ValidatedChainSpec& spec,
                       const Coefficients& coeffs, ChainSolution& sol);

}  // namespace hangchain
