#include "mrckr/oracle.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "mrckr/error.hpp"

namespace mrckr::oracle {

using kb::Assertion;
using kb::ConceptRef;
using kb::SCKR;
using kb::Subsumption;

namespace {

struct RuleAt {
  const Subsumption* axiom;
  const std::string* relation;  // set for guarded applications
};

// Per-context instantiation of conditions (i)-(iii) for one repository.
class Prepared {
 public:
  explicit Prepared(const SCKR& sckr) : sckr_(sckr), order_(sckr.structure) {
    for (const auto& c : sckr.structure.contexts) contexts_.push_back(c);
    individuals_.assign(sckr.signature.individuals.begin(), sckr.signature.individuals.end());
    for (const auto& c : contexts_) {
      rules_[c];
      facts_[c];
    }
    for (const auto& [owner, kbc] : sckr.kbs) {
      if (!order_has(owner)) continue;
      for (const auto& low : order_.strict_scope(owner)) {
        if (!rules_.count(low)) continue;
        for (const auto& s : kbc.strict) rules_[low].push_back({&s, nullptr});
        for (const auto& a : kbc.assertions) facts_[low].push_back(a);
      }
      for (const auto& d : kbc.defeasible) {
        std::set<std::string> unguarded;
        for (const auto& low : order_.defeasible_scope(d.relation, owner)) {
          if (!rules_.count(low)) continue;
          unguarded.insert(low);
          rules_[low].push_back({&d.axiom, nullptr});
        }
        for (const auto& low : order_.override_scope(d.relation, owner)) {
          if (!rules_.count(low) || unguarded.count(low)) continue;
          rules_[low].push_back({&d.axiom, &d.relation});
        }
      }
    }
  }

  const SCKR& sckr() const { return sckr_; }
  const kb::ContextOrder& order() const { return order_; }
  const std::vector<std::string>& contexts() const { return contexts_; }

  bool order_has(const std::string& c) const {
    const auto& n = order_.names();
    return std::find(n.begin(), n.end(), c) != n.end();
  }

  static bool body_holds(const ContextModel& m, const std::string& ctx, const Subsumption& ax,
                         const std::string& ind) {
    for (const auto& r : ax.lhs) {
      const std::string& where = r.is_eval() ? r.context : ctx;
      if (!m.holds(where, r.cls, ind)) return false;
    }
    return true;
  }

  ContextModel least(const Chi& chi) const {
    ContextModel m;
    for (const auto& c : contexts_) {
      auto& set = m.per_context[c];
      for (const auto& a : facts_.at(c)) set.insert(a);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : contexts_) {
        for (const auto& rule : rules_.at(c)) {
          for (const auto& ind : individuals_) {
            if (!body_holds(m, c, *rule.axiom, ind)) continue;
            if (rule.relation && chi.count({*rule.relation, *rule.axiom, ind, c})) continue;
            if (rule.axiom->rhs.is_bottom()) {
              if (m.inconsistent.insert(c).second) changed = true;
            } else if (m.per_context[c].insert({rule.axiom->rhs.cls, ind}).second) {
              changed = true;
            }
          }
        }
      }
    }
    return m;
  }

  bool closed(const ContextModel& m, const Chi& chi) const {
    for (const auto& c : contexts_) {
      auto it = m.per_context.find(c);
      for (const auto& a : facts_.at(c)) {
        if (it == m.per_context.end() || !it->second.count(a)) return false;
      }
      for (const auto& rule : rules_.at(c)) {
        for (const auto& ind : individuals_) {
          if (!body_holds(m, c, *rule.axiom, ind)) continue;
          if (rule.relation && chi.count({*rule.relation, *rule.axiom, ind, c})) continue;
          if (rule.axiom->rhs.is_bottom()) return false;
          if (!m.holds(c, rule.axiom->rhs.cls, ind)) return false;
        }
      }
    }
    return true;
  }

  const std::set<std::string>& partners(const std::string& ctx, const std::string& cls) const {
    auto key = std::make_pair(ctx, cls);
    auto it = partner_cache_.find(key);
    if (it != partner_cache_.end()) return it->second;
    auto& axioms = strict_cache_[ctx];
    if (axioms.empty()) axioms = applicable_strict(sckr_, ctx);
    return partner_cache_[key] = disjoint_partners(axioms, cls);
  }

  bool justified(const ContextModel& m, const ClashingAssumption& a) const {
    if (!body_holds(m, a.context, a.axiom, a.individual)) return false;
    if (a.axiom.rhs.is_bottom()) return true;
    for (const auto& e : partners(a.context, a.axiom.rhs.cls)) {
      if (m.holds(a.context, e, a.individual)) return true;
    }
    return false;
  }

  // Contexts c_b with c ≺_rel c_b ⪯_{-rel} c_1 for some owner c_1 of D_rel(axiom).
  std::vector<std::string> origins(const ClashingAssumption& a) const {
    std::vector<std::string> out;
    for (const auto& cb : contexts_) {
      if (!order_.below(a.relation, a.context, cb)) continue;
      for (const auto& [owner, kbc] : sckr_.kbs) {
        if (!order_has(owner) || !order_.below_or_equal_except(a.relation, cb, owner)) continue;
        bool owns = std::any_of(kbc.defeasible.begin(), kbc.defeasible.end(), [&](const kb::DefeasibleAxiom& d) {
          return d.relation == a.relation && d.axiom == a.axiom;
        });
        if (owns) {
          out.push_back(cb);
          break;
        }
      }
    }
    return out;
  }

  bool lp_greater(const Chi& chi1, const Chi& chi2, const std::string& ctx, const std::string& rel) const {
    auto s1 = slice(chi1, rel, ctx);
    auto s2 = slice(chi2, rel, ctx);
    std::vector<ClashingAssumption> only1, only2;
    std::set_difference(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(only1));
    std::set_difference(s2.begin(), s2.end(), s1.begin(), s1.end(), std::back_inserter(only2));
    std::vector<std::vector<std::string>> origins2;
    for (const auto& a2 : only2) origins2.push_back(origins(a2));
    for (const auto& a1 : only1) {
      for (const auto& c1b : origins(a1)) {
        bool found = false;
        for (std::size_t k = 0; k < only2.size() && !found; ++k) {
          for (const auto& c2b : origins2[k]) {
            if (order_.below(rel, c2b, c1b)) {
              found = true;
              break;
            }
          }
        }
        if (!found) return false;
      }
    }
    return true;
  }

  Preference mp(const Chi& chi1, const Chi& chi2) const {
    for (const auto& r : sckr_.structure.relations) {
      bool first = false, second = false;
      for (const auto& c : contexts_) {
        bool g12 = lp_greater(chi1, chi2, c, r.name);
        bool g21 = lp_greater(chi2, chi1, c, r.name);
        if (g12 && !g21) first = true;
        if (g21 && !g12) second = true;
      }
      if (first && !second) return Preference::First;
      if (second && !first) return Preference::Second;
    }
    return Preference::Neither;
  }

 private:
  const SCKR& sckr_;
  kb::ContextOrder order_;
  std::vector<std::string> contexts_;
  std::vector<std::string> individuals_;
  std::map<std::string, std::vector<RuleAt>> rules_;
  std::map<std::string, std::vector<Assertion>> facts_;
  mutable std::map<std::string, std::vector<Subsumption>> strict_cache_;
  mutable std::map<std::pair<std::string, std::string>, std::set<std::string>> partner_cache_;
};

}  // namespace

bool ContextModel::holds(const std::string& context, const std::string& cls,
                         const std::string& individual) const {
  auto it = per_context.find(context);
  return it != per_context.end() && it->second.count({cls, individual});
}

std::set<ClashingAssumption> slice(const Chi& chi, const std::string& relation, const std::string& context) {
  std::set<ClashingAssumption> out;
  for (const auto& a : chi) {
    if (a.relation == relation && a.context == context) out.insert(a);
  }
  return out;
}

const char* to_string(Preference p) {
  switch (p) {
    case Preference::First:
      return "first-preferred";
    case Preference::Second:
      return "second-preferred";
    case Preference::Neither:
      return "neither";
  }
  return "";
}

std::vector<ClashingAssumption> eligible_assumptions(const SCKR& sckr) {
  kb::ContextOrder order(sckr.structure);
  std::set<ClashingAssumption> out;
  for (const auto& [owner, kbc] : sckr.kbs) {
    for (const auto& d : kbc.defeasible) {
      auto unguarded = order.defeasible_scope(d.relation, owner);
      for (const auto& low : order.override_scope(d.relation, owner)) {
        if (std::find(unguarded.begin(), unguarded.end(), low) != unguarded.end()) continue;
        for (const auto& ind : sckr.signature.individuals) out.insert({d.relation, d.axiom, ind, low});
      }
    }
  }
  return {out.begin(), out.end()};
}

ContextModel least_model(const SCKR& sckr, const Chi& chi) { return Prepared(sckr).least(chi); }

bool check_cas_model(const SCKR& sckr, const CASInterpretation& cas) {
  if (!cas.model.consistent()) return false;
  for (const auto& [c, _] : cas.model.per_context) {
    if (!sckr.signature.contexts.count(c)) return false;
  }
  return Prepared(sckr).closed(cas.model, cas.chi);
}

std::vector<Subsumption> applicable_strict(const SCKR& sckr, const std::string& context) {
  kb::ContextOrder order(sckr.structure);
  std::vector<Subsumption> out;
  for (const auto& [owner, kbc] : sckr.kbs) {
    if (owner != context && !order.below_or_equal_any(context, owner)) continue;
    out.insert(out.end(), kbc.strict.begin(), kbc.strict.end());
  }
  return out;
}

std::set<std::string> disjoint_partners(const std::vector<Subsumption>& axioms, const std::string& cls) {
  std::map<std::string, std::vector<std::string>> up;
  for (const auto& [a, b] : kb::atomic_edges(axioms)) up[a].push_back(b);
  std::set<std::string> reach{cls};
  std::deque<std::string> queue{cls};
  while (!queue.empty()) {
    std::string c = queue.front();
    queue.pop_front();
    for (const auto& p : up[c]) {
      if (reach.insert(p).second) queue.push_back(p);
    }
  }
  std::set<std::string> out;
  for (const auto& s : axioms) {
    if (!kb::is_binary_disjointness(s)) continue;
    const auto& a = s.lhs[0].cls;
    const auto& b = s.lhs[1].cls;
    if (reach.count(b)) out.insert(a);
    if (reach.count(a)) out.insert(b);
  }
  return out;
}

std::set<Assertion> clashing_set(const Subsumption& axiom, const std::string& individual,
                                 const std::vector<Subsumption>& axioms) {
  auto g = kb::instantiate(axiom, individual);
  std::set<Assertion> out(g.body.begin(), g.body.end());
  if (axiom.rhs.is_bottom()) return out;
  auto partners = disjoint_partners(axioms, axiom.rhs.cls);
  if (partners.empty()) {
    throw Error("no clashing set: nothing is disjoint from " + axiom.rhs.cls);
  }
  out.insert({*partners.begin(), individual});
  return out;
}

bool is_justified(const SCKR& sckr, const ContextModel& model, const ClashingAssumption& a) {
  return Prepared(sckr).justified(model, a);
}

bool is_justified(const SCKR& sckr, const CASInterpretation& cas) {
  Prepared p(sckr);
  return std::all_of(cas.chi.begin(), cas.chi.end(),
                     [&](const ClashingAssumption& a) { return p.justified(cas.model, a); });
}

bool lp_greater(const SCKR& sckr, const Chi& chi1, const Chi& chi2, const std::string& context,
                const std::string& relation) {
  return Prepared(sckr).lp_greater(chi1, chi2, context, relation);
}

Preference lp_compare(const SCKR& sckr, const Chi& chi1, const Chi& chi2, const std::string& context,
                      const std::string& relation) {
  Prepared p(sckr);
  bool g12 = p.lp_greater(chi1, chi2, context, relation);
  bool g21 = p.lp_greater(chi2, chi1, context, relation);
  if (g12 && !g21) return Preference::First;
  if (g21 && !g12) return Preference::Second;
  return Preference::Neither;
}

Preference mp_compare(const SCKR& sckr, const Chi& chi1, const Chi& chi2) { return Prepared(sckr).mp(chi1, chi2); }

std::vector<std::size_t> mp_minimal(const SCKR& sckr, const std::vector<const Chi*>& candidates) {
  Prepared p(sckr);
  // Many candidates share a chi; compare each distinct chi once.
  std::map<Chi, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < candidates.size(); ++i) groups[*candidates[i]].push_back(i);
  std::vector<const Chi*> distinct;
  for (const auto& [chi, _] : groups) distinct.push_back(&chi);
  std::vector<std::size_t> out;
  for (const Chi* chi : distinct) {
    bool beaten = false;
    for (const Chi* other : distinct) {
      if (other != chi && p.mp(*other, *chi) == Preference::First) {
        beaten = true;
        break;
      }
    }
    if (!beaten) {
      const auto& idx = groups.at(*chi);
      out.insert(out.end(), idx.begin(), idx.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CASInterpretation> enumerate_ckr_models(const SCKR& sckr, std::size_t max_assumptions) {
  auto eligible = eligible_assumptions(sckr);
  if (eligible.size() > max_assumptions) {
    throw BoundExceeded(std::to_string(eligible.size()) + " eligible clashing assumptions exceed the bound of " +
                        std::to_string(max_assumptions));
  }
  Prepared p(sckr);
  std::vector<CASInterpretation> candidates;
  const std::size_t n = eligible.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Chi chi;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) chi.insert(eligible[k]);
    }
    ContextModel m = p.least(chi);
    if (!m.consistent()) continue;
    bool ok = std::all_of(chi.begin(), chi.end(), [&](const ClashingAssumption& a) { return p.justified(m, a); });
    if (ok) candidates.push_back({std::move(m), std::move(chi)});
  }
  std::vector<const Chi*> chis;
  for (const auto& c : candidates) chis.push_back(&c.chi);
  std::vector<CASInterpretation> out;
  for (std::size_t i : mp_minimal(sckr, chis)) out.push_back(candidates[i]);
  std::sort(out.begin(), out.end());
  return out;
}

std::string render(const ClashingAssumption& a) {
  return "chi_" + a.relation + "(" + a.context + ") <" + kb::render(a.axiom) + " " + a.individual + ">";
}

std::string render(const CASInterpretation& cas) {
  std::ostringstream out;
  for (const auto& [c, set] : cas.model.per_context) {
    out << "  " << c << ":";
    for (const auto& a : set) out << " " << a.cls << "(" << a.individual << ")";
    if (cas.model.inconsistent.count(c)) out << " BOTTOM";
    out << "\n";
  }
  if (cas.chi.empty()) out << "  chi: none\n";
  for (const auto& a : cas.chi) out << "  " << render(a) << "\n";
  return out.str();
}

}  // namespace mrckr::oracle
