#pragma once

// Reference semantics for contextual repositories: least models under a set
// of clashing assumptions, CAS-model and justification checks, the local and
// model preferences, and exhaustive CKR-model enumeration.

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mrckr/kb.hpp"

namespace mrckr::oracle {

struct ContextModel {
  std::map<std::string, std::set<kb::Assertion>> per_context;
  std::set<std::string> inconsistent;

  bool consistent() const { return inconsistent.empty(); }
  bool holds(const std::string& context, const std::string& cls, const std::string& individual) const;
  bool operator==(const ContextModel&) const = default;
};

/// ⟨axiom, individual⟩ overridden at `context` along `relation`.
struct ClashingAssumption {
  std::string relation;
  kb::Subsumption axiom;
  std::string individual;
  std::string context;

  auto operator<=>(const ClashingAssumption&) const = default;
};

/// All relations and contexts at once; chi_r(c) is the slice with matching relation and context.
using Chi = std::set<ClashingAssumption>;

std::set<ClashingAssumption> slice(const Chi& chi, const std::string& relation, const std::string& context);

struct CASInterpretation {
  ContextModel model;
  Chi chi;

  auto operator<=>(const CASInterpretation& o) const {
    if (auto c = model.per_context <=> o.model.per_context; c != 0) return c;
    if (auto c = model.inconsistent <=> o.model.inconsistent; c != 0) return c;
    return chi <=> o.chi;
  }
  bool operator==(const CASInterpretation&) const = default;
};

enum class Preference { First, Second, Neither };

const char* to_string(Preference p);

/// Every assumption that may appear in some chi: defeasible axiom instances for
/// each individual at each context strictly below an applicable context.
std::vector<ClashingAssumption> eligible_assumptions(const kb::SCKR& sckr);

ContextModel least_model(const kb::SCKR& sckr, const Chi& chi);

bool check_cas_model(const kb::SCKR& sckr, const CASInterpretation& cas);

/// Strict axioms in force at `context` (owned by it or any context above it).
std::vector<kb::Subsumption> applicable_strict(const kb::SCKR& sckr, const std::string& context);

/// Concepts E with E ⊓ D' ⊑ ⊥ among `axioms` for some D' reachable from D
/// through atomic subsumptions of `axioms` (D itself included).
std::set<std::string> disjoint_partners(const std::vector<kb::Subsumption>& axioms, const std::string& cls);

/// Body instances plus, for an atomic rhs D, the smallest disjoint partner of D.
/// Throws when the rhs has no partner.
std::set<kb::Assertion> clashing_set(const kb::Subsumption& axiom, const std::string& individual,
                                     const std::vector<kb::Subsumption>& axioms);

bool is_justified(const kb::SCKR& sckr, const CASInterpretation& cas);
bool is_justified(const kb::SCKR& sckr, const ContextModel& model, const ClashingAssumption& a);

/// chi1 > chi2 at `context` for `relation`.
bool lp_greater(const kb::SCKR& sckr, const Chi& chi1, const Chi& chi2, const std::string& context,
                const std::string& relation);
Preference lp_compare(const kb::SCKR& sckr, const Chi& chi1, const Chi& chi2, const std::string& context,
                      const std::string& relation);
Preference mp_compare(const kb::SCKR& sckr, const Chi& chi1, const Chi& chi2);

/// Exact list of CKR models, sorted. Throws BoundExceeded when the number of
/// eligible assumptions exceeds `max_assumptions`.
std::vector<CASInterpretation> enumerate_ckr_models(const kb::SCKR& sckr, std::size_t max_assumptions = 20);

/// Keeps the entries whose chi is not beaten under mp_compare by any other entry.
std::vector<std::size_t> mp_minimal(const kb::SCKR& sckr, const std::vector<const Chi*>& candidates);

std::string render(const ClashingAssumption& a);
std::string render(const CASInterpretation& cas);

}  // namespace mrckr::oracle
