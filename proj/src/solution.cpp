#include "hangchain/solution.hpp"

#include <algorithm>
#include <cmath>

namespace hangchain {

double KktResiduals::max_norm() const {
  return std::max({stationarity, sum_y, span, dual});
}

void evaluate_solution(const ValidatedChainSpec& spec,
                       const Coefficients& coeffs, ChainSolution& sol) {
  const std::size_t n = spec.size();
  double objective = 0.0;
  double sum_y = 0.0;
  double sum_x = 0.0;
  double stationarity = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    objective += coeffs.c[i] * sol.y[i];
    sum_y += sol.y[i];
    sum_x += sol.x[i];
    const double r = coeffs.c[i] + sol.lambda + sol.mu * sol.y[i] / sol.x[i];
    stationarity = std::max(stationarity, std::abs(r));
  }
  sol.objective = objective;
  sol.residuals.stationarity = stationarity;
  sol.residuals.sum_y = std::abs(sum_y);
  sol.residuals.span = std::abs(spec.span() - sum_x);
  sol.residuals.dual = std::max(0.0, -sol.mu);
}

}  // namespace hangchain
