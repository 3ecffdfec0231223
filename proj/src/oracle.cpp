#include "hangchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "hangchain/error.hpp"

namespace hangchain {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

double inf_norm(const std::vector<double>& v) {
  double out = 0.0;
  for (double e : v) out = std::max(out, std::abs(e));
  return out;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

// Angles are only meaningful modulo 2 pi; bring them back to (-pi, pi].
void wrap(AngleState& s) {
  for (double& t : s.theta) t = std::remainder(t, 2.0 * std::numbers::pi);
}

bool admissible(const AngleState& s) {
  return std::all_of(s.theta.begin(), s.theta.end(),
                     [](double t) { return std::abs(t) < kHalfPi; });
}

AngleState moved(const AngleState& from, const std::vector<double>& dir,
                 double step) {
  AngleState out = from;
  for (std::size_t i = 0; i < out.theta.size(); ++i) {
    out.theta[i] += step * dir[i];
  }
  if (dir.size() > out.theta.size()) out.slack += step * dir.back();
  return out;
}

struct InnerResult {
  AngleState state;
  bool converged = false;
  int iterations = 0;
};

// Gradient descent with a nonmonotone Armijo backtracking search: a trial
// step must improve on the worst of the last few accepted values. Trial
// lengths come from the Barzilai-Borwein formula.
InnerResult minimize_inner(const AugmentedLagrangian& al, AngleState state,
                           double grad_tol, int max_iterations) {
  constexpr std::size_t kMemory = 10;
  std::vector<double> grad = al.gradient(state);
  double value = al.value(state);
  std::vector<double> recent{value};
  double step = 1e-2;
  InnerResult out;
  for (int it = 0; it < max_iterations; ++it) {
    if (inf_norm(grad) <= grad_tol) {
      out.converged = true;
      out.iterations = it;
      out.state = std::move(state);
      return out;
    }
    const double reference = *std::max_element(recent.begin(), recent.end());
    const double slope = dot(grad, grad);
    double t = step;
    AngleState trial;
    double trial_value = 0.0;
    bool accepted = false;
    for (int h = 0; h < 60; ++h, t *= 0.5) {
      trial = moved(state, grad, -t);
      trial_value = al.value(trial);
      if (trial_value <= reference - 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    std::vector<double> trial_grad = al.gradient(trial);
    // s = -t grad, y = trial_grad - grad; BB1 length s.s / s.y.
    double sy = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      sy += -t * grad[i] * (trial_grad[i] - grad[i]);
    }
    const double ss = t * t * slope;
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e6) : 2.0 * t;
    state = std::move(trial);
    value = trial_value;
    grad = std::move(trial_grad);
    if (recent.size() == kMemory) recent.erase(recent.begin());
    recent.push_back(value);
    out.iterations = it + 1;
  }
  out.converged = inf_norm(grad) <= grad_tol;
  out.state = std::move(state);
  return out;
}

// Gauss-Newton projection onto the constraint surface: the minimum-norm
// correction J^T (J J^T)^-1 h, repeated while it keeps helping.
void restore_feasibility(const AugmentedLagrangian& al, AngleState& state) {
  auto [h1, h2] = al.constraints(state);
  double violation = std::max(std::abs(h1), std::abs(h2));
  for (int it = 0; it < 8 && violation > 0.0; ++it) {
    const auto [g1, g2] = al.constraint_gradients(state);
    const double a = dot(g1, g1);
    const double b = dot(g1, g2);
    const double c = dot(g2, g2);
    const double det = a * c - b * b;
    if (!(det > 0.0)) return;
    const double w1 = (c * h1 - b * h2) / det;
    const double w2 = (a * h2 - b * h1) / det;
    AngleState trial = state;
    for (std::size_t i = 0; i < g1.size(); ++i) {
      const double delta = -(w1 * g1[i] + w2 * g2[i]);
      if (i < trial.theta.size()) {
        trial.theta[i] += delta;
      } else {
        trial.slack += delta;
      }
    }
    const auto [t1, t2] = al.constraints(trial);
    const double trial_violation = std::max(std::abs(t1), std::abs(t2));
    if (!(trial_violation < violation)) return;
    state = std::move(trial);
    h1 = t1;
    h2 = t2;
    violation = trial_violation;
  }
}

}  // namespace

double objective(const ValidatedChainSpec& spec, const AngleState& state) {
  const Coefficients coeffs = compute_coefficients(spec);
  const auto l = spec.lengths();
  double out = 0.0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    out += coeffs.c[i] * l[i] * std::sin(state.theta[i]);
  }
  return out;
}

AugmentedLagrangian::AugmentedLagrangian(const ValidatedChainSpec& spec,
                                         bool slack_inequality)
    : c_(compute_coefficients(spec).c),
      lengths_(spec.lengths().begin(), spec.lengths().end()),
      span_(spec.span()),
      slack_(slack_inequality),
      mass_scale_(compute_coefficients(spec).total_mass),
      length_scale_(spec.span()) {
  for (double& c : c_) c /= mass_scale_;
  for (double& l : lengths_) l /= length_scale_;
  span_ = 1.0;
}

std::pair<double, double> AugmentedLagrangian::constraints(
    const AngleState& state) const {
  double sum_y = 0.0;
  double sum_x = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    sum_y += lengths_[i] * std::sin(state.theta[i]);
    sum_x += lengths_[i] * std::cos(state.theta[i]);
  }
  double h2 = sum_x - span_;
  if (slack_) h2 -= state.slack * state.slack;
  return {sum_y, h2};
}

double AugmentedLagrangian::value(const AngleState& state) const {
  double f = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    f += c_[i] * lengths_[i] * std::sin(state.theta[i]);
  }
  const auto [h1, h2] = constraints(state);
  return f + nu_close * h1 + nu_span * h2 + 0.5 * rho * (h1 * h1 + h2 * h2);
}

std::pair<std::vector<double>, std::vector<double>>
AugmentedLagrangian::constraint_gradients(const AngleState& state) const {
  std::vector<double> close(dimension(), 0.0);
  std::vector<double> span(dimension(), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    close[i] = lengths_[i] * std::cos(state.theta[i]);
    span[i] = -lengths_[i] * std::sin(state.theta[i]);
  }
  if (slack_) span.back() = -2.0 * state.slack;
  return {close, span};
}

std::vector<double> AugmentedLagrangian::gradient(
    const AngleState& state) const {
  const auto [h1, h2] = constraints(state);
  const double w1 = nu_close + rho * h1;
  const double w2 = nu_span + rho * h2;
  std::vector<double> out(dimension());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const double s = std::sin(state.theta[i]);
    const double co = std::cos(state.theta[i]);
    out[i] = lengths_[i] * ((c_[i] + w1) * co - w2 * s);
  }
  if (slack_) out.back() = -2.0 * w2 * state.slack;
  return out;
}

std::vector<ChainSolution> oracle_restarts(const ValidatedChainSpec& spec,
                                           const OracleOptions& options) {
  const Coefficients coeffs = compute_coefficients(spec);
  const std::size_t n = spec.size();
  const auto l = spec.lengths();
  const double mass = coeffs.total_mass;
  const double unit = spec.span();
  double weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weight = std::max(weight, coeffs.c[i] * l[i] / (mass * unit));
  }
  const double grad_tol = 1e-9 * (1.0 + weight);
  const double penalty_target = std::max(options.tol / unit, 1e-9);

  std::vector<ChainSolution> out;
  out.reserve(static_cast<std::size_t>(std::max(options.restarts, 0)));
  for (int r = 0; r < options.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(-1.2, 1.2);
    std::uniform_real_distribution<double> slack(0.1, 1.0);
    AngleState state;
    state.theta.resize(n);
    for (double& t : state.theta) t = angle(rng);
    if (options.slack_inequality) state.slack = slack(rng);

    AugmentedLagrangian al(spec, options.slack_inequality);
    al.rho = options.initial_rho;
    int iterations = 0;
    bool stationary = false;
    double violation = 0.0;
    double previous = [&] {
      const auto [h1, h2] = al.constraints(state);
      return std::max(std::abs(h1), std::abs(h2));
    }();
    for (int outer = 0; outer < options.max_outer; ++outer) {
      InnerResult inner =
          minimize_inner(al, std::move(state), grad_tol, options.max_inner);
      state = std::move(inner.state);
      wrap(state);

      iterations += inner.iterations;
      const auto [h1, h2] = al.constraints(state);
      al.nu_close += al.rho * h1;
      al.nu_span += al.rho * h2;
      violation = std::max(std::abs(h1), std::abs(h2));
      if (violation <= penalty_target && inner.converged) {
        stationary = true;
        break;
      }
      // Penalty grows only when the violation drops less than 100x.
      if (violation > 0.01 * previous) al.rho *= options.rho_growth;
      previous = violation;
    }

    restore_feasibility(al, state);
    wrap(state);
    {
      const auto [h1, h2] = al.constraints(state);
      violation = std::max(std::abs(h1), std::abs(h2)) * unit;
    }
    const bool converged =
        stationary && violation <= options.tol && admissible(state);

    ChainSolution sol;
    sol.y.resize(n);
    sol.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      sol.y[i] = l[i] * std::sin(state.theta[i]);
      sol.x[i] = l[i] * std::cos(state.theta[i]);
    }
    sol.lambda = mass * al.nu_close;
    sol.mu = -mass * al.nu_span;
    evaluate_solution(spec, coeffs, sol);
    sol.report.solver = options.slack_inequality ? "oracle-slack" : "oracle";
    sol.report.iterations = iterations;
    sol.report.converged = converged;
    sol.report.residual_norm = violation;
    out.push_back(std::move(sol));
  }
  return out;
}

ChainSolution oracle_minimize(const ValidatedChainSpec& spec,
                              const OracleOptions& options) {
  std::vector<ChainSolution> runs = oracle_restarts(spec, options);
  const ChainSolution* best = nullptr;
  double worst_violation = 0.0;
  for (const ChainSolution& run : runs) {
    if (!run.report.converged) {
      worst_violation = std::max(worst_violation, run.report.residual_norm);
      continue;
    }
    if (best == nullptr || run.objective < best->objective) best = &run;
  }
  if (best == nullptr) {
    throw ChainError(ErrorCode::ConvergenceFailure,
                     "no restart of " + std::to_string(runs.size()) +
                         " reached constraint tolerance; violation " +
                         std::to_string(worst_violation));
  }
  return *best;
}

}  // namespace hangchain
