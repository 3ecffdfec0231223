#include "hangchain/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hangchain/error.hpp"

namespace hangchain {
namespace {

// sinh(u)/u - 1 and its derivative, without cancellation near u = 0.
double sinhc_minus_one(double u) {
  if (std::abs(u) < 0.1) {
    const double u2 = u * u;
    return u2 * (1.0 / 6 + u2 * (1.0 / 120 + u2 * (1.0 / 5040 +
           u2 * (1.0 / 362880 + u2 / 39916800))));
  }
  return std::sinh(u) / u - 1.0;
}

double sinhc_derivative(double u) {
  if (std::abs(u) < 0.1) {
    const double u2 = u * u;
    return u * (1.0 / 3 + u2 * (1.0 / 30 + u2 * (1.0 / 840 +
           u2 * (1.0 / 45360 + u2 / 3991680))));
  }
  return (u * std::cosh(u) - std::sinh(u)) / (u * u);
}

}  // namespace

Polyline to_polyline(const ChainSolution& sol, const ValidatedChainSpec& spec) {
  Polyline out;
  out.vertices.reserve(sol.y.size() + 1);
  Point p{0.0, spec.beam_height()};
  out.vertices.push_back(p);
  for (std::size_t i = 0; i < sol.y.size(); ++i) {
    p.x += sol.x[i];
    p.y += sol.y[i];
    out.vertices.push_back(p);
  }
  out.endpoint_gap = std::max(std::abs(p.x - spec.span()),
                              std::abs(p.y - spec.beam_height()));
  return out;
}

double potential_energy(const ChainSolution& sol,
                        const ValidatedChainSpec& spec) {
  const Coefficients coeffs = compute_coefficients(spec);
  double weighted = 0.0;
  for (std::size_t i = 0; i < sol.y.size(); ++i) {
    weighted += coeffs.c[i] * sol.y[i];
  }
  return spec.gravity() *
         (spec.beam_height() * coeffs.total_mass + weighted);
}

double Catenary::height_at_offset(double s) const {
  const double u = span / (2.0 * a);
  const double v = std::min(std::abs(s) / a, u);
  // a (cosh v - cosh u) as a product of sinh terms, exact zero at the ends.
  return -2.0 * a * std::sinh(0.5 * (u + v)) * std::sinh(0.5 * (u - v));
}

double Catenary::height(double t) const {
  return height_at_offset(t - 0.5 * span);
}

Catenary solve_catenary(double span, double total_length) {
  if (!(span > 0.0) || !(span < total_length)) {
    throw ChainError(ErrorCode::NoSolution,
                     "a catenary needs 0 < span < length, got span " +
                         std::to_string(span) + " and length " +
                         std::to_string(total_length));
  }
  // With u = d / (2a) the parameter equation is sinh(u)/u = L/d.
  const double excess = (total_length - span) / span;
  const auto f = [excess](double u) { return sinhc_minus_one(u) - excess; };

  double lo = 0.0;
  double hi = 1.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double value = f(u);
    if (value == 0.0) break;
    if (value < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    double next = u - value / sinhc_derivative(u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-16 * u) {
      u = next;
      break;
    }
    u = next;
  }
  return Catenary{span, total_length, span / (2.0 * u)};
}

Polyline catenary_reference(double span, double total_length,
                            std::size_t samples) {
  const Catenary curve = solve_catenary(span, total_length);
  Polyline out;
  if (samples < 2) samples = 2;
  out.vertices.reserve(samples);
  const double step = span / static_cast<double>(samples - 1);
  const double middle = 0.5 * static_cast<double>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const double offset = (static_cast<double>(k) - middle) * step;
    Point p{0.5 * span + offset, curve.height_at_offset(offset)};
    if (k == 0) p = {0.0, 0.0};
    if (k + 1 == samples) p = {span, 0.0};
    out.vertices.push_back(p);
  }
  return out;
}

}  // namespace hangchain
