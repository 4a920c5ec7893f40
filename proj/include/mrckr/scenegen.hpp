#pragma once

// Scene generation: the exchange/base/diagnosis repository, one optimization
// per diagnosis context, and scene diffs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrckr/asp/program.hpp"
#include "mrckr/ckr2asp.hpp"
#include "mrckr/kb.hpp"
#include "mrckr/measures.hpp"

namespace mrckr::scenegen {

inline constexpr const char* kExchange = "c_exch";
inline constexpr const char* kBase = "c_base";
inline constexpr const char* kRelation = "sim";

enum class SolverKind { Embedded, External };

struct GenerationConfig {
  /// Empty: every concept from which some diagnosis concept is derivable.
  std::vector<std::string> modifiable;
  measures::CostConfig costs;
  ckr2asp::Strategy translation = ckr2asp::Strategy::Specialized;
  SolverKind solver = SolverKind::Embedded;
  std::string solver_command;  // external solver; `{file}` is replaced by the program path
  std::size_t fresh_individuals = 0;
  double time_limit_seconds = 120;
  bool all_optima = false;
  std::size_t workers = 1;
};

struct Membership {
  std::string individual;
  std::string cls;

  auto operator<=>(const Membership&) const = default;
};

struct SceneDiff {
  std::string context;
  std::int64_t cost = 0;
  bool feasible = true;
  bool timed_out = false;
  std::vector<Membership> additions;
  std::vector<Membership> deletions;

  bool operator==(const SceneDiff&) const = default;
};

/// Reads and validates a scene file; with `ontology`, classes must be its concepts.
kb::Scene load_scene(const std::string& path, const kb::Ontology* ontology = nullptr);

std::string fresh_name(std::size_t k);  // f_1, f_2, ...

std::vector<std::string> default_modifiable(const kb::Ontology& ontology, const std::vector<ckr2asp::Diagnosis>& diagnoses);
/// cfg.modifiable, or the default when it is empty; checked against the ontology.
std::vector<std::string> resolve_modifiable(const kb::Ontology& ontology,
                                            const std::vector<ckr2asp::Diagnosis>& diagnoses,
                                            const GenerationConfig& cfg);

kb::SCKR build_sckr(const kb::Scene& scene, const kb::Ontology& ontology,
                    const std::vector<ckr2asp::Diagnosis>& diagnoses, const GenerationConfig& cfg);

/// The repository plus its translation, diagnosis constraints and similarity weaks.
struct Compiled {
  kb::SCKR sckr;
  std::vector<std::string> modifiable;
  ckr2asp::Translation translation;
  asp::Program program;
};

Compiled compile(const kb::Scene& scene, const kb::Ontology& ontology, const std::vector<ckr2asp::Diagnosis>& diagnoses,
                 const GenerationConfig& cfg);

/// Optimal answer sets of one diagnosis context, solved on its own.
struct ContextSolution {
  std::string context;
  bool feasible = false;
  bool timed_out = false;
  std::int64_t cost = 0;             // optimizer cost over every context of the program
  std::vector<asp::AtomSet> optima;  // canonical order; only the first unless all_optima
  Compiled compiled;
};

ContextSolution solve_diagnosis(const kb::Scene& scene, const kb::Ontology& ontology, const ckr2asp::Diagnosis& d,
                                const GenerationConfig& cfg);

/// Additions and deletions at `context` read from ADD_C / DEL_C memberships.
SceneDiff extract_diff(const asp::AtomSet& answer_set, const std::string& context,
                       const std::vector<std::string>& modifiable, const measures::CostConfig& costs);

/// One diff per diagnosis (all optima with cfg.all_optima), sorted by context.
std::vector<SceneDiff> generate(const kb::Scene& scene, const kb::Ontology& ontology,
                                const std::vector<ckr2asp::Diagnosis>& diagnoses, const GenerationConfig& cfg);

kb::Scene apply_diff(const kb::Scene& scene, const SceneDiff& diff);

std::string render_diffs(const std::vector<SceneDiff>& diffs);
std::vector<SceneDiff> parse_diffs(std::string_view json);

}  // namespace mrckr::scenegen
