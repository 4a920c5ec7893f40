#pragma once

// Seeded generators and brute-force reference checks shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mrckr/asp/program.hpp"
#include "mrckr/ckr2asp.hpp"
#include "mrckr/kb.hpp"
#include "mrckr/oracle.hpp"

namespace mrckr::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}
inline std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string data_path(const std::string& name) { return std::string(MRCKR_DATA_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------------------
// Ground programs

struct ProgramShape {
  std::size_t max_atoms = 12;
  std::size_t max_rules = 30;
  double negation = 0.5;
  std::size_t max_weaks = 0;
  std::size_t weak_groups = 3;
  std::int64_t max_weight = 3;
  bool weight_in_terms = false;  // every tuple starts with its weight
};

inline asp::Atom prop(std::size_t i) { return {"a" + std::to_string(i), {}}; }

inline asp::Program random_program(Rng& rng, const ProgramShape& shape = {}) {
  asp::Program p;
  std::size_t atoms = between(rng, 1, shape.max_atoms);
  std::size_t rules = between(rng, 0, shape.max_rules);
  auto body = [&](std::vector<asp::Atom>& pos, std::vector<asp::Atom>& neg, std::size_t lo, std::size_t hi) {
    for (std::size_t k = between(rng, lo, hi); k > 0; --k) {
      (coin(rng, shape.negation) ? neg : pos).push_back(prop(pick(rng, atoms)));
    }
  };
  for (std::size_t i = 0; i < rules; ++i) {
    asp::Rule r;
    if (!coin(rng, 0.1)) r.head = prop(pick(rng, atoms));
    body(r.positive, r.negative, r.head ? 0 : 1, 3);
    p.rules.push_back(std::move(r));
  }
  for (std::size_t i = between(rng, 0, shape.max_weaks); i > 0; --i) {
    asp::WeakConstraint w;
    body(w.positive, w.negative, 1, 2);
    w.weight = static_cast<std::int64_t>(between(rng, 0, static_cast<std::size_t>(shape.max_weight)));
    if (shape.weight_in_terms) w.terms.push_back(asp::Term::integer(w.weight));
    w.terms.push_back(asp::Term::symbol("g" + std::to_string(pick(rng, shape.weak_groups))));
    p.weaks.push_back(std::move(w));
  }
  return p;
}

inline std::vector<asp::Atom> atoms_of(const asp::Program& p) {
  std::set<asp::Atom> all;
  for (const auto& r : p.rules) {
    if (r.head) all.insert(*r.head);
    all.insert(r.positive.begin(), r.positive.end());
    all.insert(r.negative.begin(), r.negative.end());
  }
  return {all.begin(), all.end()};
}

inline bool body_holds(const std::vector<asp::Atom>& pos, const std::vector<asp::Atom>& neg, const asp::AtomSet& m) {
  for (const auto& a : pos) {
    if (!m.count(a)) return false;
  }
  for (const auto& a : neg) {
    if (m.count(a)) return false;
  }
  return true;
}

/// Guess-and-check over every subset of rule heads: constraints hold and the
/// set is the least model of its reduct.
inline std::set<asp::AtomSet> brute_stable_models(const asp::Program& p) {
  std::set<asp::Atom> heads;
  for (const auto& r : p.rules) {
    if (r.head) heads.insert(*r.head);
  }
  std::vector<asp::Atom> atoms(heads.begin(), heads.end());
  std::set<asp::AtomSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
    asp::AtomSet m;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (mask >> i & 1) m.insert(atoms[i]);
    }
    bool ok = true;
    for (const auto& r : p.rules) {
      if (!r.head && body_holds(r.positive, r.negative, m)) ok = false;
    }
    if (!ok) continue;
    asp::AtomSet least;
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : p.rules) {
        if (!r.head || least.count(*r.head)) continue;
        if (body_holds(r.positive, {}, least) && body_holds({}, r.negative, m)) {
          least.insert(*r.head);
          changed = true;
        }
      }
    }
    if (least == m) out.insert(m);
  }
  return out;
}

/// Per term tuple, the largest weight among triggered weak constraints; summed.
inline std::int64_t brute_cost(const std::vector<asp::WeakConstraint>& weaks, const asp::AtomSet& m) {
  std::map<std::vector<asp::Term>, std::int64_t> best;
  for (const auto& w : weaks) {
    if (!body_holds(w.positive, w.negative, m)) continue;
    auto it = best.find(w.terms);
    if (it == best.end()) {
      best.emplace(w.terms, w.weight);
    } else if (w.weight > it->second) {
      it->second = w.weight;
    }
  }
  std::int64_t total = 0;
  for (const auto& kv : best) total += kv.second;
  return total;
}

/// Minimal-cost stable models and their cost; empty when unsatisfiable.
inline std::pair<std::set<asp::AtomSet>, std::int64_t> brute_optima(const asp::Program& p) {
  std::set<asp::AtomSet> best;
  std::int64_t cost = 0;
  for (const auto& m : brute_stable_models(p)) {
    std::int64_t c = brute_cost(p.weaks, m);
    if (best.empty() || c < cost) {
      best = {m};
      cost = c;
    } else if (c == cost) {
      best.insert(m);
    }
  }
  return {best, cost};
}

// ---------------------------------------------------------------------------
// Random Horn repositories

struct SckrShape {
  std::size_t min_contexts = 2, max_contexts = 4;
  std::size_t max_relations = 2;
  std::size_t concepts = 5;
  std::size_t max_individuals = 2;
  std::size_t max_eligible = 12;
  double eval_rate = 0.15;
};

inline kb::SCKR random_sckr(Rng& rng, const SckrShape& shape = {}) {
  const std::vector<std::string> all_concepts{"A", "B", "C", "D", "E", "F"};
  std::vector<std::string> concepts(all_concepts.begin(), all_concepts.begin() + static_cast<long>(shape.concepts));
  auto concept_at = [&]() { return concepts[pick(rng, concepts.size())]; };
  auto atomic = [&]() { return kb::ConceptRef::atomic(concept_at()); };

  for (;;) {
    kb::SCKR s;
    std::size_t n = between(rng, shape.min_contexts, shape.max_contexts);
    for (std::size_t i = 0; i < n; ++i) s.structure.contexts.push_back("k" + std::to_string(i));
    std::size_t rels = between(rng, 1, shape.max_relations);
    for (std::size_t r = 0; r < rels; ++r) {
      kb::Relation rel{"r" + std::to_string(r), {}};
      for (std::size_t parent = 0; parent < n; ++parent) {
        for (std::size_t child = parent + 1; child < n; ++child) {
          if (coin(rng, 0.45)) rel.edges.emplace_back(s.structure.contexts[child], s.structure.contexts[parent]);
        }
      }
      s.structure.relations.push_back(std::move(rel));
    }
    std::vector<std::string> individuals;
    for (std::size_t i = between(rng, 1, shape.max_individuals); i > 0; --i) {
      individuals.push_back(std::string(1, static_cast<char>('a' + individuals.size())));
    }

    s.signature.concepts.insert(concepts.begin(), concepts.end());
    s.signature.individuals.insert(individuals.begin(), individuals.end());
    s.signature.contexts.insert(s.structure.contexts.begin(), s.structure.contexts.end());
    for (const auto& r : s.structure.relations) s.signature.relations.insert(r.name);

    kb::ContextOrder order(s.structure);
    for (const auto& c : s.structure.contexts) {
      kb::ContextKB& kb = s.kbs[c];
      for (std::size_t i = between(rng, 0, 3); i > 0; --i) {
        kb::Subsumption ax;
        switch (pick(rng, 3)) {
          case 0:
            ax.lhs = {atomic()};
            ax.rhs = atomic();
            break;
          case 1:
            ax.lhs = {atomic(), atomic()};
            ax.rhs = atomic();
            break;
          default:
            ax.lhs = {atomic(), atomic()};
            ax.rhs = kb::ConceptRef::bottom();
            break;
        }
        if (coin(rng, shape.eval_rate)) {
          ax.lhs[0] = kb::ConceptRef::eval(ax.lhs[0].cls, s.structure.contexts[pick(rng, n)]);
        }
        kb.strict.push_back(std::move(ax));
      }
      for (std::size_t i = between(rng, 0, 2); i > 0; --i) {
        kb.assertions.push_back({concept_at(), individuals[pick(rng, individuals.size())]});
      }
      std::vector<std::string> usable;
      for (const auto& r : s.structure.relations) {
        if (!order.override_scope(r.name, c).empty()) usable.push_back(r.name);
      }
      if (usable.empty()) continue;
      for (std::size_t i = between(rng, 0, 2); i > 0; --i) {
        kb::DefeasibleAxiom d;
        d.relation = usable[pick(rng, usable.size())];
        if (coin(rng, 0.35)) {
          d.axiom.lhs = {atomic(), atomic()};
          d.axiom.rhs = kb::ConceptRef::bottom();
        } else {
          d.axiom.lhs = {atomic()};
          if (coin(rng, 0.3)) d.axiom.lhs.push_back(atomic());
          d.axiom.rhs = atomic();
          // a clashing partner for the rhs, visible at every context below
          std::vector<std::string> others;
          for (const auto& x : concepts) {
            if (x != d.axiom.rhs.cls) others.push_back(x);
          }
          std::string partner = others[pick(rng, others.size())];
          kb.strict.push_back({{kb::ConceptRef::atomic(partner), d.axiom.rhs}, kb::ConceptRef::bottom()});
        }
        kb.defeasible.push_back(std::move(d));
      }
    }
    if (!kb::validate(s).ok()) continue;
    if (oracle::eligible_assumptions(s).size() > shape.max_eligible) continue;
    return s;
  }
}

inline std::set<oracle::CASInterpretation> as_set(const std::vector<oracle::CASInterpretation>& v) {
  return {v.begin(), v.end()};
}

// ---------------------------------------------------------------------------
// Prototype instances

inline constexpr const char* kMiniOntology = R"(# compact street ontology for generated instances
sub Child Human.
sub Adult Human.
disjoint Child Adult.
sub Car Vehicle.
sub Truck Vehicle.
disjoint Human Vehicle.
sub Skateboard GlidingOnWheels.
sub GlidingOnWheels MovableObject.
sub RollingContainer MovableObject.
disjoint Human MovableObject.
disjoint Vehicle MovableObject.
)";

struct PrototypeInstance {
  kb::Ontology ontology;
  kb::Scene scene;
  std::vector<ckr2asp::Diagnosis> diagnoses;
  std::vector<std::string> modifiable;
};

/// At most 6 objects, at most 2 diagnoses, objects × modifiable concepts ≤ 8.
inline PrototypeInstance random_prototype(Rng& rng) {
  static const std::vector<std::string> leaves{"Child", "Adult", "Car", "Truck", "Skateboard", "RollingContainer"};
  static const std::vector<std::string> targets{"Human", "Child", "Vehicle", "Car", "GlidingOnWheels",
                                                "RollingContainer", "MovableObject", "Adult"};
  PrototypeInstance inst;
  inst.ontology = kb::parse_ontology(kMiniOntology);
  inst.scene.id = "generated";
  std::size_t objects = between(rng, 1, 6);
  for (std::size_t i = 1; i <= objects; ++i) {
    kb::SceneObject o;
    o.id = "o" + std::to_string(i);
    if (coin(rng, 0.7)) o.concepts.push_back(leaves[pick(rng, leaves.size())]);
    inst.scene.objects.push_back(std::move(o));
  }
  std::size_t max_mod = std::max<std::size_t>(1, std::min<std::size_t>(leaves.size(), 8 / objects));
  std::vector<std::string> pool = leaves;
  std::shuffle(pool.begin(), pool.end(), rng);
  inst.modifiable.assign(pool.begin(), pool.begin() + static_cast<long>(between(rng, 1, max_mod)));
  std::sort(inst.modifiable.begin(), inst.modifiable.end());

  std::size_t ds = between(rng, 1, 2);
  for (std::size_t i = 1; i <= ds; ++i) {
    ckr2asp::Diagnosis d;
    d.name = "d" + std::to_string(i);
    for (std::size_t k = between(rng, 1, 2); k > 0; --k) {
      d.requirements.push_back({coin(rng, 0.7), targets[pick(rng, targets.size())]});
    }
    inst.diagnoses.push_back(std::move(d));
  }
  return inst;
}

/// Per-context assertions over ontology concepts only.
using Restricted = std::map<std::string, std::set<kb::Assertion>>;

inline Restricted restrict_to_ontology(const oracle::ContextModel& m) {
  Restricted out;
  for (const auto& [ctx, facts] : m.per_context) {
    auto& slot = out[ctx];
    for (const auto& a : facts) {
      if (!ckr2asp::is_auxiliary_concept(a.cls)) slot.insert(a);
    }
  }
  return out;
}

}  // namespace mrckr::testing
