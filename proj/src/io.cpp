#include "hangchain/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hangchain/error.hpp"

namespace hangchain {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw ChainError(ErrorCode::SchemaError, what);
}

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text,
                                           std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending token.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, column] = locate(text, at);
    throw ChainError(ErrorCode::ParseError,
                     "line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what());
  }
}

double number_field(const json& doc, const std::string& key) {
  const json& value = doc.at(key);
  if (!value.is_number()) schema_error("\"" + key + "\" must be a number");
  return value.get<double>();
}

std::vector<double> number_array(const json& doc, const std::string& key) {
  const json& value = doc.at(key);
  if (!value.is_array()) schema_error("\"" + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) {
      schema_error("\"" + key + "\"[" + std::to_string(i) +
                   "] must be a number");
    }
    out.push_back(value[i].get<double>());
  }
  return out;
}

// Screen coordinate of a height; avoids printing "-0".
double flip(double y) { return y == 0.0 ? 0.0 : -y; }

json residuals_to_json(const KktResiduals& r) {
  return {{"stationarity", r.stationarity},
          {"sum_y", r.sum_y},
          {"span", r.span},
          {"dual", r.dual}};
}

}  // namespace

ValidatedChainSpec parse_spec(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) schema_error("top level must be a JSON object");

  static const std::set<std::string> known = {"masses", "lengths", "span",
                                              "gravity", "beam_height"};
  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      schema_error("unknown field \"" + item.key() + "\"");
    }
  }
  for (const char* required : {"masses", "lengths", "span"}) {
    if (!doc.contains(required)) {
      schema_error(std::string("missing field \"") + required + "\"");
    }
  }

  ChainSpec spec;
  spec.masses = number_array(doc, "masses");
  spec.lengths = number_array(doc, "lengths");
  spec.span = number_field(doc, "span");
  if (doc.contains("gravity")) spec.gravity = number_field(doc, "gravity");
  if (doc.contains("beam_height")) {
    spec.beam_height = number_field(doc, "beam_height");
  }
  return validate(std::move(spec));
}

std::string write_spec(const ChainSpec& spec) {
  const json doc = {{"masses", spec.masses},
                    {"lengths", spec.lengths},
                    {"span", spec.span},
                    {"gravity", spec.gravity},
                    {"beam_height", spec.beam_height}};
  return doc.dump(2) + "\n";
}

ChainSpec SolutionRecord::spec() const {
  ChainSpec out;
  out.span = span;
  out.gravity = gravity;
  out.beam_height = beam_height;
  for (const LinkRow& row : links) {
    out.masses.push_back(row.mass);
    out.lengths.push_back(row.length);
  }
  return out;
}

SolutionRecord make_record(const ValidatedChainSpec& spec,
                           const ChainSolution& sol, double wall_time_s) {
  SolutionRecord out;
  out.solver = sol.report.solver;
  out.iterations = sol.report.iterations;
  out.converged = sol.report.converged;
  out.fallback = sol.report.fallback;
  out.wall_time_s = wall_time_s;
  out.span = spec.span();
  out.gravity = spec.gravity();
  out.beam_height = spec.beam_height();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out.links.push_back(
        {i + 1, spec.masses()[i], spec.lengths()[i], sol.x[i], sol.y[i]});
  }
  out.lambda = sol.lambda;
  out.mu = sol.mu;
  out.objective = sol.objective;
  out.potential_energy = potential_energy(sol, spec);
  out.endpoint_gap = to_polyline(sol, spec).endpoint_gap;
  out.residuals = sol.residuals;
  return out;
}

std::string write_json(const SolutionRecord& record) {
  json links = json::array();
  for (const LinkRow& row : record.links) {
    links.push_back({{"index", row.index},
                     {"mass", row.mass},
                     {"length", row.length},
                     {"x", row.x},
                     {"y", row.y}});
  }
  const json doc = {{"solver", record.solver},
                    {"iterations", record.iterations},
                    {"converged", record.converged},
                    {"fallback", record.fallback},
                    {"wall_time_s", record.wall_time_s},
                    {"span", record.span},
                    {"gravity", record.gravity},
                    {"beam_height", record.beam_height},
                    {"lambda", record.lambda},
                    {"mu", record.mu},
                    {"objective", record.objective},
                    {"potential_energy", record.potential_energy},
                    {"endpoint_gap", record.endpoint_gap},
                    {"residuals", residuals_to_json(record.residuals)},
                    {"links", links}};
  return doc.dump(2) + "\n";
}

SolutionRecord read_json(std::string_view text) {
  const json doc = parse_document(text);
  SolutionRecord out;
  try {
    out.solver = doc.at("solver").get<std::string>();
    out.iterations = doc.at("iterations").get<int>();
    out.converged = doc.at("converged").get<bool>();
    out.fallback = doc.at("fallback").get<bool>();
    out.wall_time_s = doc.at("wall_time_s").get<double>();
    out.span = doc.at("span").get<double>();
    out.gravity = doc.at("gravity").get<double>();
    out.beam_height = doc.at("beam_height").get<double>();
    out.lambda = doc.at("lambda").get<double>();
    out.mu = doc.at("mu").get<double>();
    out.objective = doc.at("objective").get<double>();
    out.potential_energy = doc.at("potential_energy").get<double>();
    out.endpoint_gap = doc.at("endpoint_gap").get<double>();
    const json& r = doc.at("residuals");
    out.residuals.stationarity = r.at("stationarity").get<double>();
    out.residuals.sum_y = r.at("sum_y").get<double>();
    out.residuals.span = r.at("span").get<double>();
    out.residuals.dual = r.at("dual").get<double>();
    for (const json& row : doc.at("links")) {
      out.links.push_back({row.at("index").get<std::size_t>(),
                           row.at("mass").get<double>(),
                           row.at("length").get<double>(),
                           row.at("x").get<double>(),
                           row.at("y").get<double>()});
    }
  } catch (const json::exception& e) {
    schema_error(std::string("solution record: ") + e.what());
  }
  return out;
}

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

std::string write_csv(const SolutionRecord& record) {
  std::string out = "index,mass,length,x,y\n";
  for (const LinkRow& row : record.links) {
    out += std::to_string(row.index) + ',' + format_double(row.mass) + ',' +
           format_double(row.length) + ',' + format_double(row.x) + ',' +
           format_double(row.y) + '\n';
  }
  return out;
}

std::string write_svg(const Polyline& chain) {
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  if (!chain.vertices.empty()) {
    min_x = max_x = chain.vertices.front().x;
    min_y = max_y = flip(chain.vertices.front().y);
  }
  for (const Point& p : chain.vertices) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, flip(p.y));
    max_y = std::max(max_y, flip(p.y));
  }
  // Heights negated for the downward SVG y axis.
  const double extent = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double margin = 0.05 * extent;
  const double stroke = 0.005 * extent;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << format_double(min_x - margin) << ' ' << format_double(min_y - margin)
      << ' ' << format_double(max_x - min_x + 2 * margin) << ' '
      << format_double(max_y - min_y + 2 * margin) << "\">\n"
      << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\""
      << format_double(stroke) << "\" points=\"";
  for (std::size_t i = 0; i < chain.vertices.size(); ++i) {
    const Point& p = chain.vertices[i];
    svg << (i ? " " : "") << format_double(p.x) << ',' << format_double(flip(p.y));
  }
  svg << "\"/>\n";
  if (!chain.vertices.empty()) {
    for (const Point& p : {chain.vertices.front(), chain.vertices.back()}) {
      svg << "  <circle class=\"anchor\" cx=\"" << format_double(p.x)
          << "\" cy=\"" << format_double(flip(p.y)) << "\" r=\""
          << format_double(3 * stroke) << "\" fill=\"red\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace hangchain
