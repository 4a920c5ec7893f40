#pragma once

// Compiling contextual repositories to answer-set programs over the
// instd(Individual, Concept, Context, "main") vocabulary.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/program.hpp"
#include "mrckr/kb.hpp"
#include "mrckr/measures.hpp"
#include "mrckr/oracle.hpp"

namespace mrckr::ckr2asp {

enum class Strategy { General, Specialized };

const char* to_string(Strategy s);
Strategy strategy_by_name(const std::string& name);  // "general" | "specialized"

inline constexpr const char* kEnvironment = "main";
inline constexpr const char* kNamed = "Named";

/// The concept names the prototype attaches to a modifiable concept C.
std::string add_concept(const std::string& c);    // ADD_C
std::string noadd_concept(const std::string& c);  // NOADD_C
std::string del_concept(const std::string& c);    // DEL_C
std::string nodel_concept(const std::string& c);  // NODEL_C
std::string orig_concept(const std::string& c);   // ORIG_C
/// True for Named and every ADD_/NOADD_/DEL_/NODEL_/ORIG_ concept.
bool is_auxiliary_concept(const std::string& cls);

asp::Atom instd(asp::Term individual, const std::string& cls, const std::string& context);

struct InstdEntry {
  std::string individual;
  std::string cls;
  std::string context;

  auto operator<=>(const InstdEntry&) const = default;
};

/// Reads instd(I, C, Ctx, "main"); nullopt for any other atom.
std::optional<InstdEntry> decode_instd(const asp::Atom& atom);

struct Translation {
  Strategy strategy = Strategy::General;
  asp::Program program;
  /// ovr(Id, X, Ctx) atoms refer to overridable[Id]; empty for Specialized.
  std::vector<kb::DefeasibleAxiom> overridable;
};

/// Every instd atom of a ground program with its decoded entry.
std::map<asp::Atom, InstdEntry> decode_map(const asp::GroundProgram& gp);

/// Either/or guesses for the prototype's Named ⊑ ADD_C / NOADD_C / DEL_C / NODEL_C defaults.
Translation translate_specialized(const kb::SCKR& sckr, const std::vector<std::string>& modifiable);
/// Override-based encoding of arbitrary Horn defaults.
Translation translate_general(const kb::SCKR& sckr);
Translation translate(const kb::SCKR& sckr, Strategy strategy, const std::vector<std::string>& modifiable);

struct Requirement {
  bool some = true;  // false: no member allowed
  std::string cls;

  auto operator<=>(const Requirement&) const = default;
};

struct Diagnosis {
  std::string name;
  std::vector<Requirement> requirements;

  std::string context() const { return "c_" + name; }
  auto operator<=>(const Diagnosis&) const = default;
};

/// `diagnosis NAME { some C; none C; ... }` blocks; `%` starts a comment.
std::vector<Diagnosis> parse_diagnoses(std::string_view text);
std::string render(const Diagnosis& d);

/// Lowercase identifier derived from a diagnosis name, used in found_<name>_<k>.
std::string found_prefix(const std::string& diagnosis_name);

std::vector<asp::Rule> compile_diagnosis(const Diagnosis& d, const std::string& context);

/// One weak constraint per modifiable concept, kind and context; an empty
/// context list leaves the context as a variable.
std::vector<asp::WeakConstraint> compile_similarity(const measures::CostConfig& costs,
                                                    const std::vector<std::string>& modifiable,
                                                    const std::vector<std::string>& contexts);

/// Per-context assertions and chi (from ovr atoms) of one answer set.
oracle::CASInterpretation decode(const kb::SCKR& sckr, const Translation& t, const asp::AtomSet& answer_set);

/// Keeps the models whose chi is MP-minimal among `models`, in input order.
std::vector<oracle::CASInterpretation> filter_preferred(const kb::SCKR& sckr,
                                                        std::vector<oracle::CASInterpretation> models);

}  // namespace mrckr::ckr2asp
