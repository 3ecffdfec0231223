#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hangchain {

/// A chain of links suspended between two points on a level beam.
///
/// Link i has mass masses[i] and length lengths[i]; the attachment points
/// are `span` apart. Gravity and beam height only matter for the absolute
/// potential energy, never for the equilibrium shape.
struct ChainSpec {
  std::vector<double> masses;
  std::vector<double> lengths;
  double span = 0.0;
  double gravity = 1.0;
  double beam_height = 0.0;
};

/// A ChainSpec known to satisfy the model requirements: at least two
/// links, positive masses and lengths, and max(lengths) < span < sum(lengths).
/// Only `validate` can produce one.
class ValidatedChainSpec {
 public:
  const ChainSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return spec_.masses.size(); }
  std::span<const double> masses() const noexcept { return spec_.masses; }
  std::span<const double> lengths() const noexcept { return spec_.lengths; }
  double span() const noexcept { return spec_.span; }
  double gravity() const noexcept { return spec_.gravity; }
  double beam_height() const noexcept { return spec_.beam_height; }

 private:
  explicit ValidatedChainSpec(ChainSpec spec) : spec_(std::move(spec)) {}
  friend ValidatedChainSpec validate(ChainSpec spec);

  ChainSpec spec_;
};

/// Throws ChainError naming the first violated requirement.
ValidatedChainSpec validate(ChainSpec spec);

/// Potential-energy weights: c[i] is the coefficient of the vertical span
/// y_i, i.e. half the link's own mass plus everything hanging after it.
struct Coefficients {
  std::vector<double> c;
  double c_bar = 0.0;  // half the total mass
  double total_mass = 0.0;
};

Coefficients compute_coefficients(const ValidatedChainSpec& spec);

struct SymmetryReport {
  bool is_symmetric = true;
  // 1-based (i, n+1-i) of the first mirrored pair that disagrees.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
};

inline constexpr double kDefaultSymmetryTolerance = 1e-12;

/// Mirrored masses and lengths must agree to within `tolerance`, relative
/// to the larger of the pair.
SymmetryReport check_symmetry(const ValidatedChainSpec& spec,
                              double tolerance = kDefaultSymmetryTolerance);

/// The spec with each mirrored pair of masses and lengths replaced by its
/// average. Always symmetric; span and constants are unchanged.
ValidatedChainSpec symmetrized(const ValidatedChainSpec& spec);

/// The same chain traversed right to left.
ValidatedChainSpec reversed(const ValidatedChainSpec& spec);

}  // namespace hangchain
