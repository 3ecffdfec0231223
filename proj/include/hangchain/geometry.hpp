#pragma once

#include <cstddef>
#include <vector>

#include "hangchain/chain_model.hpp"
#include "hangchain/solution.hpp"

namespace hangchain {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Vertices of the hanging chain, from the left attachment point.
struct Polyline {
  std::vector<Point> vertices;
  // max(|x_n - d|, |y_n - h|); never corrected away.
  double endpoint_gap = 0.0;
};

/// Cumulative sums of the link spans starting at (0, beam_height).
Polyline to_polyline(const ChainSolution& sol, const ValidatedChainSpec& spec);

/// g h sum(m) + g sum(c_i y_i).
double potential_energy(const ChainSolution& sol,
                        const ValidatedChainSpec& spec);

/// The uniform cable z(t) = a cosh((t - d/2) / a) - a cosh(d / (2a)) with
/// both ends at height 0 and arc length L.
struct Catenary {
  double span = 0.0;
  double length = 0.0;
  double a = 0.0;

  /// Height at horizontal position t in [0, span]; z(t) == z(span - t).
  double height(double t) const;
  /// Height at signed offset s from the midpoint.
  double height_at_offset(double s) const;
  double sag() const { return height_at_offset(0.0); }
};

/// Solves 2 a sinh(d / (2a)) = L for the parameter a. Throws NoSolution
/// unless 0 < d < L.
Catenary solve_catenary(double span, double total_length);

/// `samples` evenly spaced points of the catenary, endpoints included.
Polyline catenary_reference(double span, double total_length,
                            std::size_t samples);

}  // namespace hangchain
