#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/program.hpp"

namespace mrckr::asp {

struct CostedAnswerSet {
  AtomSet atoms;
  std::int64_t cost = 0;

  bool operator==(const CostedAnswerSet&) const = default;
};

/// Total order on atom sets: at the smallest atom in the symmetric difference,
/// the set containing it comes first. It splits over disjoint atom blocks, so
/// the least model of a product family is the union of per-block least models.
bool canonical_less(const AtomSet& a, const AtomSet& b);
void canonical_sort(std::vector<AtomSet>& sets);

/// Gelfond-Lifschitz reduct; weak constraints are not part of the result.
Program reduct(const Program& ground, const AtomSet& interpretation);
bool is_stable(const Program& ground, const AtomSet& interpretation);
bool is_stable(const GroundProgram& gp, const std::vector<bool>& truth);

/// Brute force over all subsets of the program's atoms. Throws BoundExceeded
/// when there are more than `max_atoms` distinct atoms.
std::vector<AtomSet> enumerate(const Program& ground, std::size_t max_atoms = 20);

/// Sum over term-tuple groups of the largest weight among triggered weak constraints.
std::int64_t cost(const AtomSet& interpretation, const std::vector<WeakConstraint>& weaks);
std::int64_t cost(const GroundProgram& gp, const std::vector<bool>& truth);

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

/// Answer sets as a product: atoms fixed at the root plus, for each independent
/// component, the list of its admissible assignments (true atom ids).
struct ModelFamily {
  bool satisfiable = false;
  std::vector<int> fixed;
  std::vector<std::vector<std::vector<int>>> parts;

  /// Number of answer sets, saturating at the largest double.
  double count() const;
  std::vector<std::vector<int>> expand(std::optional<std::size_t> limit = std::nullopt) const;
  /// Least member under canonical_less.
  std::vector<int> canonical_first(const GroundProgram& gp) const;
};

struct SolveOptions {
  std::optional<std::size_t> limit;  // per component and for the expansion
  Deadline deadline;
};

ModelFamily solve_family(const GroundProgram& gp, const SolveOptions& options = {});
/// All answer sets (or up to `limit`), canonically sorted, each re-checked with is_stable.
std::vector<AtomSet> solve(const GroundProgram& gp, std::optional<std::size_t> limit = std::nullopt);
std::vector<AtomSet> solve(const Program& ground, std::optional<std::size_t> limit = std::nullopt);

enum class OptimizeMode {
  AllOptima,     // every minimal-cost answer set is kept
  FirstOptimum,  // stops improving once the bound is proven; one optimum per component
};

struct Optimum {
  bool satisfiable = false;
  std::int64_t cost = 0;
  ModelFamily family;  // answer sets of cost `cost`
};

Optimum optimize_family(const GroundProgram& gp, OptimizeMode mode = OptimizeMode::AllOptima,
                        Deadline deadline = std::nullopt);
/// Every optimal answer set with its cost, canonically sorted; empty when unsatisfiable.
std::vector<CostedAnswerSet> optimize(const GroundProgram& gp, std::optional<std::size_t> limit = std::nullopt);
std::vector<CostedAnswerSet> optimize(const Program& ground);

}  // namespace mrckr::asp
