#include "hangchain/symmetric_solver.hpp"

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
constexpr int kMaxDoublings = 64;

void require_positive_mu(double mu) {
  if (!(mu > 0.0)) {
    throw ChainError(ErrorCode::NonPositiveMu,
                     "mu must be positive, got " + std::to_string(mu));
  }
}

}  // namespace

PhiFunction::PhiFunction(std::vector<double> lengths,
                         std::vector<double> deltas, double span)
    : lengths_(std::move(lengths)), deltas_(std::move(deltas)), span_(span) {
  if (lengths_.size() != deltas_.size()) {
    throw ChainError(ErrorCode::LengthMismatch,
                     "phi needs one delta per link length");
  }
}

PhiFunction PhiFunction::from_symmetric(const ValidatedChainSpec& spec,
                                        const Coefficients& coeffs) {
  const std::size_t n = spec.size();
  std::vector<double> deltas(n, 0.0);
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    // c_i - c_bar = -(c_j - c_bar) for mirrored links, so their difference
    // is twice the common magnitude.
    const double delta = 0.5 * (coeffs.c[i] - coeffs.c[j]);
    deltas[i] = delta;
    deltas[j] = -delta;
  }
  const auto l = spec.lengths();
  return PhiFunction(std::vector<double>(l.begin(), l.end()), std::move(deltas),
                     spec.span());
}

double PhiFunction::noise_floor() const noexcept {
  const double total = std::accumulate(lengths_.begin(), lengths_.end(), 0.0);
  return 4.0 * kEps * static_cast<double>(lengths_.size()) * (span_ + total);
}

double phi(const PhiFunction& f, double mu) {
  require_positive_mu(mu);
  const auto& l = f.lengths();
  const auto& delta = f.deltas();
  double spanned = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    // A horizontal link spans its full length for every mu.
    spanned += delta[i] == 0.0 ? l[i] : l[i] * mu / std::hypot(delta[i], mu);
  }
  return f.span() - spanned;
}

double phi_derivative(const PhiFunction& f, double mu) {
  require_positive_mu(mu);
  const auto& l = f.lengths();
  const auto& delta = f.deltas();
  double sum = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (delta[i] == 0.0) continue;
    const double s = std::hypot(delta[i], mu);
    sum += l[i] * delta[i] * delta[i] / (s * s * s);
  }
  return -sum;
}

double phi_second_derivative(const PhiFunction& f, double mu) {
  require_positive_mu(mu);
  const auto& l = f.lengths();
  const auto& delta = f.deltas();
  double sum = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (delta[i] == 0.0) continue;
    const double s = std::hypot(delta[i], mu);
    const double s2 = s * s;
    sum += 3.0 * l[i] * delta[i] * delta[i] * mu / (s2 * s2 * s);
  }
  return sum;
}

RootResult find_root(const PhiFunction& f, double tol, int max_iterations) {
  RootResult out;
  double scale = 1.0;
  for (double d : f.deltas()) scale = std::max(scale, std::abs(d) + 1.0);

  double lo = kEps * scale;
  const double phi_lo = phi(f, lo);
  if (!(phi_lo > 0.0)) {
    throw ChainError(ErrorCode::BracketingFailure,
                     "phi is not positive near zero (phi(" +
                         std::to_string(lo) + ") = " + std::to_string(phi_lo) +
                         ")");
  }
  double hi = scale;
  double phi_hi = phi(f, hi);
  for (int k = 0; phi_hi >= 0.0; ++k) {
    if (k == kMaxDoublings) {
      throw ChainError(ErrorCode::BracketingFailure,
                       "phi stays non-negative up to mu = " +
                           std::to_string(hi));
    }
    lo = hi;
    hi *= 2.0;
    phi_hi = phi(f, hi);
  }
  out.history.emplace_back(lo, hi);

  const double floor = std::max(tol, f.noise_floor());
  double mu = 0.5 * (lo + hi);
  for (int it = 1; it <= max_iterations; ++it) {
    const double value = phi(f, mu);
    out.iterations = it;
    out.mu = mu;
    out.residual = value;
    if (std::abs(value) <= tol) {
      out.bracket = {lo, hi};
      return out;
    }
    if (value > 0.0) {
      lo = mu;
    } else {
      hi = mu;
    }
    out.history.emplace_back(lo, hi);
    if (hi - lo <= 4.0 * kEps * hi) {
      // No representable progress is left; accept only at rounding level.
      out.bracket = {lo, hi};
      if (std::abs(value) <= floor) return out;
      std::ostringstream msg;
      msg << "bracket collapsed at mu = " << mu << " with phi = " << value;
      throw ChainError(ErrorCode::MaxIterations, msg.str());
    }
    const double slope = phi_derivative(f, mu);
    double next = slope < 0.0 ? mu - value / slope : lo - 1.0;
    if (!(next > lo && next < hi) || next == mu) next = 0.5 * (lo + hi);
    mu = next;
  }
  std::ostringstream msg;
  msg << "no root within " << max_iterations << " iterations; last mu = "
      << out.mu << ", phi = " << out.residual;
  throw ChainError(ErrorCode::MaxIterations, msg.str());
}

ChainSolution solve_symmetric(const ValidatedChainSpec& spec, double tol,
                              double symmetry_tolerance) {
  const SymmetryReport symmetry = check_symmetry(spec, symmetry_tolerance);
  if (!symmetry.is_symmetric) {
    const auto [i, j] = *symmetry.first_violation;
    throw ChainError(ErrorCode::NotSymmetric,
                     "links " + std::to_string(i) + " and " +
                         std::to_string(j) + " differ");
  }
  const Coefficients coeffs = compute_coefficients(spec);
  const PhiFunction f = PhiFunction::from_symmetric(spec, coeffs);
  const RootResult root = find_root(f, tol);

  const std::size_t n = spec.size();
  const auto l = spec.lengths();
  const double mu = root.mu;
  ChainSolution sol;
  sol.y.resize(n);
  sol.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double delta = f.deltas()[i];
    const double s = std::hypot(delta, mu);
    sol.y[i] = -l[i] * delta / s;
    sol.x[i] = delta == 0.0 ? l[i] : l[i] * mu / s;
  }
  sol.lambda = -coeffs.c_bar;
  sol.mu = mu;
  evaluate_solution(spec, coeffs, sol);
  sol.report.solver = "symmetric";
  sol.report.iterations = root.iterations;
  sol.report.converged = true;
  sol.report.brackets = root.history;
  sol.report.residual_norm = std::abs(root.residual);
  return sol;
}

}  // namespace hangchain
