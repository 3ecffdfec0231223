#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hangchain/chain_model.hpp"
#include "hangchain/solution.hpp"

namespace hangchain {

enum class Method { Auto, Symmetric, General, Oracle };

std::optional<Method> parse_method(std::string_view name);

struct SolveOptions {
  Method method = Method::Auto;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  int oracle_restarts = 5;
};

/// Runs the requested solver. `Auto` uses the symmetric solver when the
/// chain is mirror-symmetric and the general solver otherwise; if the
/// general solver fails the oracle takes over, the report is flagged and a
/// note goes to `diagnostics`.
ChainSolution solve(const ValidatedChainSpec& spec,
                    const SolveOptions& options, std::ostream& diagnostics);

/// The 19-link uniform chain drawn by `hangchain demo`.
ChainSpec demo_spec();

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitSolverFailure = 2;

/// Entry point of the command-line tool; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hangchain
