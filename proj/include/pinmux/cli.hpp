#pragma once

#include "pinmux/board.hpp"
#include "pinmux/solver.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace pinmux::cli {

enum ExitCode : int {
    kSuccess = 0,    ///< success, or a feasible solve
    kInfeasible = 1, ///< valid run without a solution
    kUsage = 2,      ///< usage, parse or IO error
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The solve document: {"status", "assignment", "cost", "reason"?, "witness"?, "warnings"?}.
nlohmann::json outcome_to_json(const SolveOutcome& outcome);

nlohmann::json assignment_to_json(const Assignment& assignment);

/// Reads the "assignment" array of a solve document back, validating every
/// pin against `board`. Throws Error on malformed input.
Assignment assignment_from_json(const Board& board, const nlohmann::json& doc);

} // namespace pinmux::cli
