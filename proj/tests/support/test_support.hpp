#pragma once

// Random instance generators and independent numerical oracles shared by the
// test binaries. Nothing here calls into the solvers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "hangchain/chain_model.hpp"

namespace hangchain::testing {

struct SpecRanges {
  int min_links = 2;
  int max_links = 50;
  double min_value = 0.1;  // masses and lengths
  double max_value = 10.0;
};

// Span drawn uniformly from the open interval (max l, sum l).
inline double random_span(const std::vector<double>& lengths,
                          std::mt19937_64& rng) {
  const double lo = *std::max_element(lengths.begin(), lengths.end());
  const double hi = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  std::uniform_real_distribution<double> dist(lo, hi);
  double d = dist(rng);
  while (!(d > lo && d < hi)) d = dist(rng);
  return d;
}

inline ChainSpec random_symmetric_spec(std::mt19937_64& rng,
                                       const SpecRanges& r = {}) {
  std::uniform_int_distribution<int> links(r.min_links, r.max_links);
  std::uniform_real_distribution<double> value(r.min_value, r.max_value);
  const int n = links(rng);
  ChainSpec spec;
  spec.masses.resize(n);
  spec.lengths.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    spec.masses[i] = spec.masses[n - 1 - i] = value(rng);
    spec.lengths[i] = spec.lengths[n - 1 - i] = value(rng);
  }
  spec.span = random_span(spec.lengths, rng);
  return spec;
}

// Independent draws per link; symmetric only by accident.
inline ChainSpec random_spec(std::mt19937_64& rng, const SpecRanges& r = {}) {
  std::uniform_int_distribution<int> links(r.min_links, r.max_links);
  std::uniform_real_distribution<double> value(r.min_value, r.max_value);
  const int n = links(rng);
  ChainSpec spec;
  for (int i = 0; i < n; ++i) {
    spec.masses.push_back(value(rng));
    spec.lengths.push_back(value(rng));
  }
  spec.span = random_span(spec.lengths, rng);
  return spec;
}

inline ChainSpec uniform_spec(int n, double span, double mass = 1.0,
                              double length = 1.0) {
  ChainSpec spec;
  spec.masses.assign(n, mass);
  spec.lengths.assign(n, length);
  spec.span = span;
  return spec;
}

// Plain bisection for a sign change of f on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi, double tol = 1e-14) {
  double f_lo = f(lo);
  for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid > 0) == (f_lo > 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Mass coefficients by the literal per-index definition (n independent
// sums), as an oracle for the suffix-sum implementation.
inline std::vector<double> coefficients_by_definition(
    const std::vector<double>& m) {
  const std::size_t n = m.size();
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    double tail = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) tail += m[j];
    c[i] = 0.5 * m[i] + tail;
  }
  return c;
}

}  // namespace hangchain::testing
