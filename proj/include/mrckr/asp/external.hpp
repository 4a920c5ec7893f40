#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mrckr/asp/program.hpp"
#include "mrckr/asp/solver.hpp"

namespace mrckr::asp {

/// Reads solver output made of `Answer: n` blocks, each followed by an atom
/// line and an optional `Optimization: c` line, ended by SATISFIABLE,
/// UNSATISFIABLE or OPTIMUM FOUND. Other lines outside blocks are ignored.
/// Without an Optimization line the cost is recomputed from `weaks`.
std::vector<CostedAnswerSet> parse_external_models(std::string_view text,
                                                   const std::vector<WeakConstraint>& weaks = {});

/// Keeps the cheapest answer sets, deduplicated and canonically sorted.
std::vector<CostedAnswerSet> cheapest(std::vector<CostedAnswerSet> models);

/// Writes `program` to a temporary file, runs `command_template` with `{file}`
/// replaced by its path, and parses the output. Throws Error if the command
/// cannot be started or prints nothing recognizable.
std::vector<CostedAnswerSet> run_external(const std::string& command_template, const Program& program);

}  // namespace mrckr::asp
