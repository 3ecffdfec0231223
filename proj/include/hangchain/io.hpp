#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hangchain/chain_model.hpp"
#include "hangchain/geometry.hpp"
#include "hangchain/solution.hpp"

namespace hangchain {

/// Reads a chain spec document:
///
///   {"masses": [...], "lengths": [...], "span": d,
///    "gravity": g (optional, 1), "beam_height": h (optional, 0)}
///
/// Malformed JSON throws ParseError with line and column; missing, unknown or
/// mistyped fields throw SchemaError naming the field; the result is then
/// validated, so model errors propagate unchanged.
ValidatedChainSpec parse_spec(std::string_view text);

/// The spec as a JSON document accepted by parse_spec.
std::string write_spec(const ChainSpec& spec);

struct LinkRow {
  std::size_t index = 0;  // 1-based
  double mass = 0.0;
  double length = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Everything the CLI reports about one solve. Floats round-trip exactly.
struct SolutionRecord {
  std::string solver;
  int iterations = 0;
  bool converged = false;
  bool fallback = false;
  double wall_time_s = 0.0;

  double span = 0.0;
  double gravity = 1.0;
  double beam_height = 0.0;
  std::vector<LinkRow> links;

  double lambda = 0.0;
  double mu = 0.0;
  double objective = 0.0;
  double potential_energy = 0.0;
  double endpoint_gap = 0.0;
  KktResiduals residuals;

  /// The chain that was solved.
  ChainSpec spec() const;
};

SolutionRecord make_record(const ValidatedChainSpec& spec,
                           const ChainSolution& sol, double wall_time_s);

std::string write_json(const SolutionRecord& record);
SolutionRecord read_json(std::string_view text);

/// Header `index,mass,length,x,y` then one row per link.
std::string write_csv(const SolutionRecord& record);

/// Static SVG 1.1 drawing: the chain as one polyline plus the two anchors.
std::string write_svg(const Polyline& chain);

/// Shortest decimal text that parses back to exactly `value`, independent
/// of the C locale.
std::string format_double(double value);

}  // namespace hangchain
