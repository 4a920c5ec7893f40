#include "mrckr/asp/ground.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "mrckr/error.hpp"

namespace mrckr::asp {

namespace {

std::size_t hash_term(const Term& t) {
  std::size_t h = std::hash<std::string>()(t.text);
  h ^= std::hash<std::int64_t>()(t.number) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 31 + static_cast<std::size_t>(t.kind);
}

std::string term_key(const Term& t) {
  if (t.kind == Term::Kind::Integer) return "i" + std::to_string(t.number);
  return (t.kind == Term::Kind::String ? "s" : "y") + t.text;
}

std::string pred_key(const Atom& a) { return a.predicate + "/" + std::to_string(a.args.size()); }

using Subst = std::vector<std::pair<std::string, Term>>;

const Term* lookup(const Subst& s, const std::string& var) {
  for (const auto& [v, t] : s) {
    if (v == var) return &t;
  }
  return nullptr;
}

Term apply(const Term& t, const Subst& s) {
  if (!t.is_variable()) return t;
  const Term* bound = lookup(s, t.text);
  if (!bound) throw Error("internal: unbound variable " + t.text);
  return *bound;
}

Atom apply(const Atom& a, const Subst& s) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& t : a.args) out.args.push_back(apply(t, s));
  return out;
}

bool match(const Atom& pattern, const Atom& ground, Subst& s) {
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& g = ground.args[i];
    if (p.is_variable()) {
      if (const Term* b = lookup(s, p.text)) {
        if (*b != g) return false;
      } else {
        s.emplace_back(p.text, g);
      }
    } else if (p != g) {
      return false;
    }
  }
  return true;
}

struct PendingRule {
  int head;
  std::vector<int> positive;
  std::vector<Atom> negative;
};

class Grounder {
 public:
  explicit Grounder(GroundProgram& gp) : gp_(gp) {}

  int intern(const Atom& a) {
    int before = static_cast<int>(gp_.atoms.size());
    int id = gp_.intern(a);
    if (id == before) {
      by_pred_[pred_key(a)].push_back(id);
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        by_arg_[arg_key(a.predicate, i, a.args[i])].push_back(id);
      }
    }
    return id;
  }

  // Calls `emit` for every substitution that maps the positive body onto
  // interned atoms; position `delta` ranges over [lo, hi), earlier positions
  // over [0, lo) and later ones over [0, hi). delta < 0 uses [0, hi) throughout.
  void join(const std::vector<Atom>& body, int delta, int lo, int hi, const std::function<void(const Subst&)>& emit) {
    std::vector<std::size_t> order;
    if (delta >= 0) order.push_back(static_cast<std::size_t>(delta));
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (static_cast<int>(i) != delta) order.push_back(i);
    }
    Subst s;
    join_rec(body, order, 0, delta, lo, hi, s, emit);
  }

 private:
  static std::string arg_key(const std::string& pred, std::size_t pos, const Term& t) {
    return pred + "\x1f" + std::to_string(pos) + "\x1f" + term_key(t);
  }

  const std::vector<int>* candidates(const Atom& pattern, const Subst& s) {
    const std::vector<int>* best = nullptr;
    auto it = by_pred_.find(pred_key(pattern));
    if (it == by_pred_.end()) return nullptr;
    best = &it->second;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
      const Term& p = pattern.args[i];
      const Term* value = p.is_variable() ? lookup(s, p.text) : &p;
      if (!value) continue;
      auto jt = by_arg_.find(arg_key(pattern.predicate, i, *value));
      if (jt == by_arg_.end()) return nullptr;
      if (jt->second.size() < best->size()) best = &jt->second;
    }
    return best;
  }

  void join_rec(const std::vector<Atom>& body, const std::vector<std::size_t>& order, std::size_t k, int delta,
                int lo, int hi, Subst& s, const std::function<void(const Subst&)>& emit) {
    if (k == order.size()) {
      emit(s);
      return;
    }
    std::size_t pos = order[k];
    const Atom& pattern = body[pos];
    const std::vector<int>* cand = candidates(pattern, s);
    if (!cand) return;
    int from = 0, to = hi;
    if (delta >= 0) {
      if (static_cast<int>(pos) == delta) {
        from = lo;
      } else if (static_cast<int>(pos) < delta) {
        to = lo;
      }
    }
    // Emitting may append to *cand and gp_.atoms; index by position and copy.
    auto b = static_cast<std::size_t>(std::lower_bound(cand->begin(), cand->end(), from) - cand->begin());
    auto e = static_cast<std::size_t>(std::lower_bound(cand->begin(), cand->end(), to) - cand->begin());
    for (std::size_t i = b; i < e; ++i) {
      Atom ground = gp_.atoms[static_cast<std::size_t>((*cand)[i])];
      std::size_t mark = s.size();
      if (match(pattern, ground, s)) join_rec(body, order, k + 1, delta, lo, hi, s, emit);
      s.resize(mark);
    }
  }

  GroundProgram& gp_;
  std::unordered_map<std::string, std::vector<int>> by_pred_;
  std::unordered_map<std::string, std::vector<int>> by_arg_;
};

void collect_constants(const Atom& a, std::set<Term>& out) {
  for (const auto& t : a.args) {
    if (!t.is_variable()) out.insert(t);
  }
}

void collect_variables(const Atom& a, std::vector<std::string>& out) {
  for (const auto& t : a.args) {
    if (t.is_variable() && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
  }
}

GroundProgram ground_relevant(const Program& program) {
  GroundProgram gp;
  Grounder g(gp);
  std::vector<PendingRule> pending;

  auto instantiate = [&](const Rule& r, const Subst& s) {
    PendingRule p;
    for (const auto& a : r.positive) p.positive.push_back(gp.find(apply(a, s)));
    for (const auto& a : r.negative) p.negative.push_back(apply(a, s));
    p.head = g.intern(apply(*r.head, s));
    pending.push_back(std::move(p));
  };

  std::vector<const Rule*> proper;
  for (const auto& r : program.rules) {
    if (r.is_constraint()) continue;
    if (r.positive.empty()) {
      instantiate(r, {});
    } else {
      proper.push_back(&r);
    }
  }
  int lo = 0;
  int hi = static_cast<int>(gp.atoms.size());
  while (lo < hi) {
    for (const Rule* r : proper) {
      for (std::size_t j = 0; j < r->positive.size(); ++j) {
        g.join(r->positive, static_cast<int>(j), lo, hi, [&](const Subst& s) { instantiate(*r, s); });
      }
    }
    lo = hi;
    hi = static_cast<int>(gp.atoms.size());
  }

  auto resolve_negative = [&](const std::vector<Atom>& neg) {
    std::vector<int> out;
    for (const auto& a : neg) {
      int id = gp.find(a);
      if (id >= 0) out.push_back(id);  // underivable atoms are false: the literal is dropped
    }
    return out;
  };

  for (auto& p : pending) gp.rules.push_back({p.head, std::move(p.positive), resolve_negative(p.negative)});

  const int all = static_cast<int>(gp.atoms.size());
  for (const auto& r : program.rules) {
    if (!r.is_constraint()) continue;
    auto emit = [&](const Subst& s) {
      GroundRule gr;
      for (const auto& a : r.positive) gr.positive.push_back(gp.find(apply(a, s)));
      std::vector<Atom> neg;
      for (const auto& a : r.negative) neg.push_back(apply(a, s));
      gr.negative = resolve_negative(neg);
      gp.rules.push_back(std::move(gr));
    };
    if (r.positive.empty()) {
      emit({});
    } else {
      g.join(r.positive, -1, 0, all, emit);
    }
  }
  for (const auto& w : program.weaks) {
    auto emit = [&](const Subst& s) {
      GroundWeak gw;
      for (const auto& a : w.positive) gw.positive.push_back(gp.find(apply(a, s)));
      std::vector<Atom> neg;
      for (const auto& a : w.negative) neg.push_back(apply(a, s));
      gw.negative = resolve_negative(neg);
      gw.weight = w.weight;
      std::vector<Term> terms;
      for (const auto& t : w.terms) terms.push_back(apply(t, s));
      gw.group = gp.group_of(terms);
      gp.weaks.push_back(std::move(gw));
    };
    if (w.positive.empty()) {
      emit({});
    } else {
      g.join(w.positive, -1, 0, all, emit);
    }
  }
  return gp;
}

void for_each_substitution(const std::vector<std::string>& vars, const std::vector<Term>& universe,
                           const std::function<void(const Subst&)>& fn) {
  Subst s;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == vars.size()) {
      fn(s);
      return;
    }
    for (const auto& t : universe) {
      s.emplace_back(vars[k], t);
      rec(k + 1);
      s.pop_back();
    }
  };
  rec(0);
}

GroundProgram ground_naive(const Program& program) {
  std::set<Term> constants;
  for (const auto& r : program.rules) {
    if (r.head) collect_constants(*r.head, constants);
    for (const auto& a : r.positive) collect_constants(a, constants);
    for (const auto& a : r.negative) collect_constants(a, constants);
  }
  for (const auto& w : program.weaks) {
    for (const auto& a : w.positive) collect_constants(a, constants);
    for (const auto& a : w.negative) collect_constants(a, constants);
    for (const auto& t : w.terms) {
      if (!t.is_variable()) constants.insert(t);
    }
  }
  std::vector<Term> universe(constants.begin(), constants.end());

  GroundProgram gp;
  for (const auto& r : program.rules) {
    std::vector<std::string> vars;
    for (const auto& a : r.positive) collect_variables(a, vars);
    for_each_substitution(vars, universe, [&](const Subst& s) {
      GroundRule gr;
      for (const auto& a : r.positive) gr.positive.push_back(gp.intern(apply(a, s)));
      for (const auto& a : r.negative) gr.negative.push_back(gp.intern(apply(a, s)));
      if (r.head) gr.head = gp.intern(apply(*r.head, s));
      gp.rules.push_back(std::move(gr));
    });
  }
  for (const auto& w : program.weaks) {
    std::vector<std::string> vars;
    for (const auto& a : w.positive) collect_variables(a, vars);
    for_each_substitution(vars, universe, [&](const Subst& s) {
      GroundWeak gw;
      for (const auto& a : w.positive) gw.positive.push_back(gp.intern(apply(a, s)));
      for (const auto& a : w.negative) gw.negative.push_back(gp.intern(apply(a, s)));
      gw.weight = w.weight;
      std::vector<Term> terms;
      for (const auto& t : w.terms) terms.push_back(apply(t, s));
      gw.group = gp.group_of(terms);
      gp.weaks.push_back(std::move(gw));
    });
  }
  return gp;
}

}  // namespace

std::size_t AtomHash::operator()(const Atom& a) const {
  std::size_t h = std::hash<std::string>()(a.predicate);
  for (const auto& t : a.args) h = h * 1000003u ^ hash_term(t);
  return h;
}

int GroundProgram::intern(const Atom& a) {
  auto [it, inserted] = index.emplace(a, static_cast<int>(atoms.size()));
  if (inserted) atoms.push_back(a);
  return it->second;
}

int GroundProgram::find(const Atom& a) const {
  auto it = index.find(a);
  return it == index.end() ? -1 : it->second;
}

int GroundProgram::group_of(const std::vector<Term>& terms) {
  auto [it, inserted] = group_index.emplace(terms, static_cast<int>(groups.size()));
  if (inserted) groups.push_back(terms);
  return it->second;
}

Program GroundProgram::to_program() const {
  Program p;
  for (const auto& r : rules) {
    Rule out;
    if (r.head >= 0) out.head = atoms[static_cast<std::size_t>(r.head)];
    for (int a : r.positive) out.positive.push_back(atoms[static_cast<std::size_t>(a)]);
    for (int a : r.negative) out.negative.push_back(atoms[static_cast<std::size_t>(a)]);
    p.rules.push_back(std::move(out));
  }
  for (const auto& w : weaks) {
    WeakConstraint out;
    for (int a : w.positive) out.positive.push_back(atoms[static_cast<std::size_t>(a)]);
    for (int a : w.negative) out.negative.push_back(atoms[static_cast<std::size_t>(a)]);
    out.weight = w.weight;
    out.terms = groups[static_cast<std::size_t>(w.group)];
    p.weaks.push_back(std::move(out));
  }
  return p;
}

AtomSet GroundProgram::to_atoms(const std::vector<int>& ids) const {
  AtomSet out;
  for (int id : ids) out.insert(atoms[static_cast<std::size_t>(id)]);
  return out;
}

std::vector<bool> GroundProgram::to_truth(const AtomSet& set) const {
  std::vector<bool> truth(atoms.size(), false);
  for (const auto& a : set) {
    int id = find(a);
    if (id >= 0) truth[static_cast<std::size_t>(id)] = true;
  }
  return truth;
}

GroundProgram GroundProgram::from_ground(const Program& program) {
  GroundProgram gp;
  auto need_ground = [](const Atom& a) {
    if (!a.is_ground()) throw Error("atom is not ground: " + render(a));
  };
  for (const auto& r : program.rules) {
    GroundRule gr;
    if (r.head) {
      need_ground(*r.head);
      gr.head = gp.intern(*r.head);
    }
    for (const auto& a : r.positive) {
      need_ground(a);
      gr.positive.push_back(gp.intern(a));
    }
    for (const auto& a : r.negative) {
      need_ground(a);
      gr.negative.push_back(gp.intern(a));
    }
    gp.rules.push_back(std::move(gr));
  }
  for (const auto& w : program.weaks) {
    GroundWeak gw;
    for (const auto& a : w.positive) {
      need_ground(a);
      gw.positive.push_back(gp.intern(a));
    }
    for (const auto& a : w.negative) {
      need_ground(a);
      gw.negative.push_back(gp.intern(a));
    }
    for (const auto& t : w.terms) {
      if (t.is_variable()) throw Error("weak constraint term is not ground: " + render(w));
    }
    gw.weight = w.weight;
    gw.group = gp.group_of(w.terms);
    gp.weaks.push_back(std::move(gw));
  }
  return gp;
}

void check_program(const Program& program) {
  std::map<std::string, std::size_t> arity;
  auto check_arity = [&](const Atom& a) {
    auto [it, inserted] = arity.emplace(a.predicate, a.args.size());
    if (!inserted && it->second != a.args.size()) {
      throw Error("predicate " + a.predicate + " used with arities " + std::to_string(it->second) + " and " +
                  std::to_string(a.args.size()));
    }
  };
  for (const auto& r : program.rules) {
    if (auto v = safety_violation(r)) throw Error(*v);
    if (r.head) check_arity(*r.head);
    for (const auto& a : r.positive) check_arity(a);
    for (const auto& a : r.negative) check_arity(a);
  }
  for (const auto& w : program.weaks) {
    if (auto v = safety_violation(w)) throw Error(*v);
    for (const auto& a : w.positive) check_arity(a);
    for (const auto& a : w.negative) check_arity(a);
  }
}

GroundProgram ground(const Program& program, GroundMode mode) {
  check_program(program);
  return mode == GroundMode::Naive ? ground_naive(program) : ground_relevant(program);
}

Program ground_program(const Program& program, GroundMode mode) { return ground(program, mode).to_program(); }

}  // namespace mrckr::asp
