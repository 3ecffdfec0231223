#include "hangchain/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hangchain/error.hpp"

namespace hangchain {

ValidatedChainSpec validate(ChainSpec spec) {
  const std::size_t n = spec.masses.size();
  if (spec.lengths.size() != n) {
    throw ChainError(ErrorCode::LengthMismatch,
                     std::to_string(n) + " masses but " +
                         std::to_string(spec.lengths.size()) + " lengths");
  }
  if (n < 2) {
    throw ChainError(ErrorCode::TooFewLinks,
                     "a chain needs at least 2 links, got " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Written as !(x > 0) so NaN is rejected as well.
    if (!(spec.masses[i] > 0.0) || !std::isfinite(spec.masses[i])) {
      throw ChainError(ErrorCode::NonPositiveMass,
                       "mass of link " + std::to_string(i + 1) + " is " +
                           std::to_string(spec.masses[i]));
    }
    if (!(spec.lengths[i] > 0.0) || !std::isfinite(spec.lengths[i])) {
      throw ChainError(ErrorCode::NonPositiveLength,
                       "length of link " + std::to_string(i + 1) + " is " +
                           std::to_string(spec.lengths[i]));
    }
  }
  const double longest =
      *std::max_element(spec.lengths.begin(), spec.lengths.end());
  const double total =
      std::accumulate(spec.lengths.begin(), spec.lengths.end(), 0.0);
  if (!(spec.span > longest)) {
    throw ChainError(ErrorCode::SpanTooShort,
                     "span " + std::to_string(spec.span) +
                         " must exceed the longest link " +
                         std::to_string(longest));
  }
  if (!(spec.span < total)) {
    throw ChainError(ErrorCode::SpanTooLong,
                     "span " + std::to_string(spec.span) +
                         " must be below the total length " +
                         std::to_string(total));
  }
  return ValidatedChainSpec(std::move(spec));
}

Coefficients compute_coefficients(const ValidatedChainSpec& spec) {
  const auto m = spec.masses();
  const std::size_t n = m.size();
  Coefficients out;
  out.c.resize(n);
  // One reverse pass: `after` is the mass hanging beyond link i.
  double after = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    out.c[k] = 0.5 * m[k] + after;
    after += m[k];
  }
  out.total_mass = after;
  out.c_bar = 0.5 * after;
  return out;
}

SymmetryReport check_symmetry(const ValidatedChainSpec& spec,
                              double tolerance) {
  const auto close = [tolerance](double a, double b) {
    return std::abs(a - b) <= tolerance * std::max(std::abs(a), std::abs(b));
  };
  const auto m = spec.masses();
  const auto l = spec.lengths();
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    if (!close(m[i], m[j]) || !close(l[i], l[j])) {
      return {false, std::make_pair(i + 1, j + 1)};
    }
  }
  return {};
}

ValidatedChainSpec symmetrized(const ValidatedChainSpec& spec) {
  ChainSpec out = spec.spec();
  const std::size_t n = out.masses.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t j = n - 1 - i;
    out.masses[i] = out.masses[j] = 0.5 * (out.masses[i] + out.masses[j]);
    out.lengths[i] = out.lengths[j] = 0.5 * (out.lengths[i] + out.lengths[j]);
  }
  return validate(std::move(out));
}

ValidatedChainSpec reversed(const ValidatedChainSpec& spec) {
  ChainSpec out = spec.spec();
  std::reverse(out.masses.begin(), out.masses.end());
  std::reverse(out.lengths.begin(), out.lengths.end());
  return validate(std::move(out));
}

}  // namespace hangchain
