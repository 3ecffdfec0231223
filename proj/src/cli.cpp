#include "hangchain/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hangchain/error.hpp"
#include "hangchain/general_solver.hpp"
#include "hangchain/geometry.hpp"
#include "hangchain/io.hpp"
#include "hangchain/oracle.hpp"
#include "hangchain/symmetric_solver.hpp"

namespace hangchain {
namespace {

// Floor on the oracle's constraint tolerance.
constexpr double kOracleMinTol = 1e-10;

ChainSolution run_oracle(const ValidatedChainSpec& spec,
                         const SolveOptions& options) {
  OracleOptions oracle;
  oracle.restarts = options.oracle_restarts;
  oracle.seed = options.seed;
  oracle.tol = std::max(options.tol, kOracleMinTol);
  return oracle_minimize(spec, oracle);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Emitter {
  std::string path;
  std::ostream& out;

  void operator()(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text)) {
      throw std::runtime_error("cannot write " + path);
    }
  }
};

std::string render(const ValidatedChainSpec& spec, const ChainSolution& sol,
                   double seconds, const std::string& format) {
  if (format == "svg") return write_svg(to_polyline(sol, spec));
  const SolutionRecord record = make_record(spec, sol, seconds);
  if (format == "csv") return write_csv(record);
  return write_json(record);
}

int exit_code_for(const ChainError& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
      return kExitInvalidInput;
    default:
      return is_validation_error(e.code()) ? kExitInvalidInput
                                           : kExitSolverFailure;
  }
}

struct SolveFlags {
  std::string input;
  std::string output;
  std::string method = "auto";
  std::string format = "json";
  double tol = kDefaultTolerance;
  std::uint64_t seed = 0;
};

void add_solve_flags(CLI::App& cmd, SolveFlags& flags) {
  cmd.add_option("--method", flags.method, "auto, symmetric, general or oracle")
      ->check(CLI::IsMember({"auto", "symmetric", "general", "oracle"}))
      ->capture_default_str();
  cmd.add_option("--tol", flags.tol, "residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--output", flags.output, "write here instead of stdout");
  cmd.add_option("--format", flags.format, "json, csv or svg")
      ->check(CLI::IsMember({"json", "csv", "svg"}))
      ->capture_default_str();
  cmd.add_option("--seed", flags.seed, "oracle restart seed")
      ->capture_default_str();
}

int solve_and_emit(const ValidatedChainSpec& spec, const SolveFlags& flags,
                   std::ostream& out, std::ostream& err) {
  SolveOptions options;
  options.method = *parse_method(flags.method);
  options.tol = flags.tol;
  options.seed = flags.seed;
  const auto start = std::chrono::steady_clock::now();
  const ChainSolution sol = solve(spec, options, err);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Emitter{flags.output, out}(render(spec, sol, seconds, flags.format));
  return kExitOk;
}

}  // namespace

std::optional<Method> parse_method(std::string_view name) {
  if (name == "auto") return Method::Auto;
  if (name == "symmetric") return Method::Symmetric;
  if (name == "general") return Method::General;
  if (name == "oracle") return Method::Oracle;
  return std::nullopt;
}

ChainSolution solve(const ValidatedChainSpec& spec,
                    const SolveOptions& options, std::ostream& diagnostics) {
  switch (options.method) {
    case Method::Symmetric:
      return solve_symmetric(spec, options.tol);
    case Method::General:
      return solve_general(spec, options.tol);
    case Method::Oracle:
      return run_oracle(spec, options);
    case Method::Auto:
      break;
  }
  const bool symmetric = check_symmetry(spec).is_symmetric;
  try {
    return symmetric ? solve_symmetric(spec, options.tol)
                     : solve_general(spec, options.tol);
  } catch (const ChainError& e) {
    diagnostics << "note: " << (symmetric ? "symmetric" : "general")
                << " solver failed (" << e.what()
                << "); falling back to the oracle\n";
  }
  ChainSolution sol = run_oracle(spec, options);
  sol.report.fallback = true;
  return sol;
}

ChainSpec demo_spec() {
  ChainSpec spec;
  spec.masses.assign(19, 1.0);
  spec.lengths.assign(19, 1.0);
  spec.span = 12.0;
  return spec;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Equilibrium shape of a discrete hanging chain", "hangchain"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve a chain spec file");
  solve_cmd->add_option("--input", solve_flags.input, "chain spec JSON")
      ->required();
  add_solve_flags(*solve_cmd, solve_flags);

  std::string check_input;
  double symmetry_tol = kDefaultSymmetryTolerance;
  CLI::App* check_cmd =
      app.add_subcommand("check", "validate a spec and report symmetry");
  check_cmd->add_option("--input", check_input, "chain spec JSON")->required();
  check_cmd->add_option("--symmetry-tol", symmetry_tol,
                        "relative tolerance for mirrored links")
      ->capture_default_str();

  SolveFlags demo_flags;
  demo_flags.format = "svg";
  CLI::App* demo_cmd =
      app.add_subcommand("demo", "solve the built-in 19-link uniform chain");
  add_solve_flags(*demo_cmd, demo_flags);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*solve_cmd) {
      const ValidatedChainSpec spec = parse_spec(read_file(solve_flags.input));
      return solve_and_emit(spec, solve_flags, out, err);
    }
    if (*check_cmd) {
      const ValidatedChainSpec spec = parse_spec(read_file(check_input));
      const SymmetryReport report = check_symmetry(spec, symmetry_tol);
      out << "valid: " << spec.size() << " links, span "
          << format_double(spec.span()) << "\n";
      if (report.is_symmetric) {
        out << "symmetric\n";
      } else {
        out << "not symmetric, violation (" << report.first_violation->first
            << "," << report.first_violation->second << ")\n";
      }
      return kExitOk;
    }
    return solve_and_emit(validate(demo_spec()), demo_flags, out, err);
  } catch (const ChainError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

}  // namespace hangchain
