#include "hangchain/general_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "hangchain/error.hpp"

namespace hangchain {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_positive_mu(double mu) {
  if (!(mu > 0.0)) {
    throw ChainError(ErrorCode::NonPositiveMu,
                     "mu must be positive, got " + std::to_string(mu));
  }
}

double inf_norm(const Residual2& r) {
  return std::max(std::abs(r[0]), std::abs(r[1]));
}

double squared_norm(const Residual2& r) { return r[0] * r[0] + r[1] * r[1]; }

std::string describe(const MultiplierPair& p, const Residual2& r) {
  std::ostringstream out;
  out.precision(17);
  out << "lambda = " << p.lambda << ", mu = " << p.mu << ", R = (" << r[0]
      << ", " << r[1] << ")";
  return out.str();
}

}  // namespace

KktSystem KktSystem::from_spec(const ValidatedChainSpec& spec,
                               const Coefficients& coeffs) {
  const auto l = spec.lengths();
  return KktSystem{std::vector<double>(l.begin(), l.end()), coeffs.c,
                   spec.span()};
}

Residual2 kkt_residual(const KktSystem& sys, const MultiplierPair& p) {
  require_positive_mu(p.mu);
  double sum_y = 0.0;
  double sum_x = 0.0;
  for (std::size_t i = 0; i < sys.c.size(); ++i) {
    const double a = sys.c[i] + p.lambda;
    const double s = std::hypot(a, p.mu);
    sum_y -= sys.lengths[i] * a / s;
    sum_x += sys.lengths[i] * p.mu / s;
  }
  return {sum_y, sys.span - sum_x};
}

Jacobian2 kkt_jacobian(const KktSystem& sys, const MultiplierPair& p) {
  require_positive_mu(p.mu);
  const double mu = p.mu;
  // With a = c_i + lambda and s = hypot(a, mu):
  //   dy/dlambda = -l mu^2 / s^3    dy/dmu = l a mu / s^3
  //   dx/dlambda = -l a mu / s^3    dx/dmu = l a^2 / s^3
  double mu_mu = 0.0;
  double a_mu = 0.0;
  double a_a = 0.0;
  for (std::size_t i = 0; i < sys.c.size(); ++i) {
    const double a = sys.c[i] + p.lambda;
    const double s = std::hypot(a, mu);
    const double w = sys.lengths[i] / (s * s * s);
    mu_mu += w * mu * mu;
    a_mu += w * a * mu;
    a_a += w * a * a;
  }
  return {{{-mu_mu, a_mu}, {a_mu, -a_a}}};
}

ChainSolution solve_general(const ValidatedChainSpec& spec,
                            const GeneralSolverOptions& options) {
  const Coefficients coeffs = compute_coefficients(spec);
  const KktSystem sys = KktSystem::from_spec(spec, coeffs);
  const std::size_t n = spec.size();
  const double lambda_lo = -coeffs.c.front();
  const double lambda_hi = -coeffs.c.back();

  // Start from the symmetrized chain.
  const ValidatedChainSpec mirror = symmetrized(spec);
  const Coefficients mirror_coeffs = compute_coefficients(mirror);
  const RootResult start =
      find_root(PhiFunction::from_symmetric(mirror, mirror_coeffs));

  MultiplierPair p{-coeffs.c_bar, start.mu};
  Residual2 r = kkt_residual(sys, p);
  const double total_length = std::accumulate(
      sys.lengths.begin(), sys.lengths.end(), 0.0);
  const double floor = std::max(
      options.tol,
      4.0 * kEps * static_cast<double>(n) * (spec.span() + total_length));

  const auto clip = [&](const MultiplierPair& from, MultiplierPair to) {
    if (!(to.mu > 0.0)) to.mu = 0.5 * from.mu;
    if (!(to.lambda > lambda_lo)) to.lambda = 0.5 * (from.lambda + lambda_lo);
    if (!(to.lambda < lambda_hi)) to.lambda = 0.5 * (from.lambda + lambda_hi);
    return to;
  };

  int iterations = 0;
  bool converged = inf_norm(r) <= options.tol;
  while (!converged) {
    if (iterations == options.max_iterations) {
      throw ChainError(ErrorCode::MaxIterations,
                       "no convergence in " +
                           std::to_string(options.max_iterations) +
                           " iterations; last iterate " + describe(p, r));
    }
    ++iterations;
    const Jacobian2 jac = kkt_jacobian(sys, p);
    const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    const double det_scale =
        std::abs(jac[0][0] * jac[1][1]) + std::abs(jac[0][1] * jac[1][0]);
    if (!(std::abs(det) > 1e-14 * det_scale) || !std::isfinite(det)) {
      throw ChainError(ErrorCode::SingularJacobian,
                       "at last iterate " + describe(p, r));
    }
    const double step_lambda = -(jac[1][1] * r[0] - jac[0][1] * r[1]) / det;
    const double step_mu = -(jac[0][0] * r[1] - jac[1][0] * r[0]) / det;
    const double step_norm = std::max(std::abs(step_lambda), std::abs(step_mu));
    const double size = 1.0 + std::max(std::abs(p.lambda), std::abs(p.mu));
    if (step_norm <= options.min_step * size) {
      // Stalled at rounding level.
      converged = inf_norm(r) <= floor;
      if (converged) break;
      throw ChainError(ErrorCode::MaxIterations,
                       "Newton step vanished at " + describe(p, r));
    }

    const double current = squared_norm(r);
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, t *= 0.5) {
      const MultiplierPair trial =
          clip(p, {p.lambda + t * step_lambda, p.mu + t * step_mu});
      const Residual2 trial_r = kkt_residual(sys, trial);
      if (squared_norm(trial_r) < current) {
        p = trial;
        r = trial_r;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      converged = inf_norm(r) <= floor;
      if (converged) break;
      throw ChainError(ErrorCode::MaxIterations,
                       "line search failed at " + describe(p, r));
    }
    converged = inf_norm(r) <= options.tol;
  }

  ChainSolution sol;
  sol.y.resize(n);
  sol.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = coeffs.c[i] + p.lambda;
    const double s = std::hypot(a, p.mu);
    sol.y[i] = -sys.lengths[i] * a / s;
    sol.x[i] = sys.lengths[i] * p.mu / s;
  }
  sol.lambda = p.lambda;
  sol.mu = p.mu;
  evaluate_solution(spec, coeffs, sol);
  sol.report.solver = "general";
  sol.report.iterations = iterations;
  sol.report.converged = true;
  sol.report.residual_norm = inf_norm(r);
  return sol;
}

}  // namespace hangchain
