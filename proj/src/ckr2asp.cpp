#include "mrckr/ckr2asp.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mrckr/error.hpp"

namespace mrckr::ckr2asp {

using asp::Atom;
using asp::Rule;
using asp::Term;
using kb::Subsumption;

const char* to_string(Strategy s) { return s == Strategy::General ? "general" : "specialized"; }

Strategy strategy_by_name(const std::string& name) {
  if (name == "general") return Strategy::General;
  if (name == "specialized") return Strategy::Specialized;
  throw Error("unknown translation '" + name + "' (expected specialized or general)");
}

std::string add_concept(const std::string& c) { return "ADD_" + c; }
std::string noadd_concept(const std::string& c) { return "NOADD_" + c; }
std::string del_concept(const std::string& c) { return "DEL_" + c; }
std::string nodel_concept(const std::string& c) { return "NODEL_" + c; }
std::string orig_concept(const std::string& c) { return "ORIG_" + c; }

bool is_auxiliary_concept(const std::string& cls) {
  if (cls == kNamed) return true;
  for (std::string_view p : {"ADD_", "NOADD_", "DEL_", "NODEL_", "ORIG_"}) {
    if (cls.size() > p.size() && cls.compare(0, p.size(), p) == 0) return true;
  }
  return false;
}

Atom instd(Term individual, const std::string& cls, const std::string& context) {
  return {"instd", {std::move(individual), Term::string(cls), Term::constant(context), Term::string(kEnvironment)}};
}

std::optional<InstdEntry> decode_instd(const Atom& atom) {
  if (atom.predicate != "instd" || atom.args.size() != 4 || !atom.is_ground()) return std::nullopt;
  if (atom.args[3].kind != Term::Kind::String || atom.args[3].text != kEnvironment) return std::nullopt;
  return InstdEntry{atom.args[0].name(), atom.args[1].name(), atom.args[2].name()};
}

std::map<Atom, InstdEntry> decode_map(const asp::GroundProgram& gp) {
  std::map<Atom, InstdEntry> out;
  for (const auto& a : gp.atoms) {
    if (auto e = decode_instd(a)) out.emplace(a, *e);
  }
  return out;
}

namespace {

const Term kX = Term::variable("X");

// Collects rules in first-emission order without duplicates.
class Emitter {
 public:
  void add(Rule r) {
    if (seen_.insert(r).second) rules_.push_back(std::move(r));
  }
  std::vector<Rule> take() { return std::move(rules_); }

 private:
  std::set<Rule> seen_;
  std::vector<Rule> rules_;
};

std::vector<Atom> body_at(const Subsumption& ax, const std::string& ctx) {
  std::vector<Atom> body;
  for (const auto& r : ax.lhs) {
    if (r.is_bottom()) throw Error("bottom on a left-hand side: " + kb::render(ax));
    body.push_back(instd(kX, r.cls, r.is_eval() ? r.context : ctx));
  }
  if (body.empty()) throw Error("axiom without a left-hand side: " + kb::render(ax));
  return body;
}

std::optional<Atom> head_at(const Subsumption& ax, const std::string& ctx) {
  if (ax.rhs.is_bottom()) return std::nullopt;
  if (ax.rhs.is_eval()) throw Error("eval on a right-hand side: " + kb::render(ax));
  return instd(kX, ax.rhs.cls, ctx);
}

bool known_context(const kb::ContextOrder& order, const std::string& c) {
  const auto& n = order.names();
  return std::find(n.begin(), n.end(), c) != n.end();
}

// Strict axioms and assertions at every context below their owner (condition (i)).
void emit_strict(const kb::SCKR& sckr, const kb::ContextOrder& order, Emitter& out) {
  for (const auto& [owner, kbc] : sckr.kbs) {
    if (!known_context(order, owner)) continue;
    for (const auto& low : order.strict_scope(owner)) {
      for (const auto& a : kbc.assertions) out.add({instd(Term::constant(a.individual), a.cls, low), {}, {}});
      for (const auto& s : kbc.strict) out.add({head_at(s, low), body_at(s, low), {}});
    }
  }
}

std::vector<std::string> guarded_contexts(const kb::ContextOrder& order, const kb::DefeasibleAxiom& d,
                                          const std::string& owner, const std::vector<std::string>& unguarded) {
  std::vector<std::string> out;
  for (const auto& low : order.override_scope(d.relation, owner)) {
    if (std::find(unguarded.begin(), unguarded.end(), low) == unguarded.end()) out.push_back(low);
  }
  return out;
}

bool has_disjointness(const std::vector<Subsumption>& axioms, const std::string& a, const std::string& b) {
  return std::any_of(axioms.begin(), axioms.end(), [&](const Subsumption& s) {
    if (!kb::is_binary_disjointness(s)) return false;
    const auto& x = s.lhs[0].cls;
    const auto& y = s.lhs[1].cls;
    return (x == a && y == b) || (x == b && y == a);
  });
}

}  // namespace

Translation translate_general(const kb::SCKR& sckr) {
  kb::ContextOrder order(sckr.structure);
  Emitter out;
  emit_strict(sckr, order, out);
  Translation t;
  t.strategy = Strategy::General;
  std::map<kb::DefeasibleAxiom, int> ids;
  std::map<std::string, std::vector<Subsumption>> strict_at;
  for (const auto& [owner, kbc] : sckr.kbs) {
    if (!known_context(order, owner)) continue;
    for (const auto& d : kbc.defeasible) {
      auto unguarded = order.defeasible_scope(d.relation, owner);
      for (const auto& low : unguarded) out.add({head_at(d.axiom, low), body_at(d.axiom, low), {}});
      auto guarded = guarded_contexts(order, d, owner, unguarded);
      if (guarded.empty()) continue;
      auto [it, inserted] = ids.emplace(d, static_cast<int>(t.overridable.size()));
      if (inserted) t.overridable.push_back(d);
      const int id = it->second;
      bool any_partner = d.axiom.rhs.is_bottom();
      for (const auto& low : guarded) {
        Atom ovr{"ovr", {Term::integer(id), kX, Term::constant(low)}};
        auto body = body_at(d.axiom, low);
        out.add({head_at(d.axiom, low), body, {ovr}});
        if (d.axiom.rhs.is_bottom()) {
          out.add({ovr, body, {}});
          continue;
        }
        auto& axioms = strict_at[low];
        if (axioms.empty()) axioms = oracle::applicable_strict(sckr, low);
        for (const auto& e : oracle::disjoint_partners(axioms, d.axiom.rhs.cls)) {
          auto witness = body;
          witness.push_back(instd(kX, e, low));
          out.add({ovr, std::move(witness), {}});
          any_partner = true;
        }
      }
      if (!any_partner) {
        throw Error("no clashing set for default " + kb::render(d.axiom) + ": nothing is disjoint from " +
                    d.axiom.rhs.cls);
      }
    }
  }
  t.program.rules = out.take();
  return t;
}

Translation translate_specialized(const kb::SCKR& sckr, const std::vector<std::string>& modifiable) {
  kb::ContextOrder order(sckr.structure);
  Emitter out;
  emit_strict(sckr, order, out);
  const std::set<std::string> mod(modifiable.begin(), modifiable.end());

  // (owner, relation, concept, addition?) -> which of the pair's defaults were seen
  struct Pair {
    bool positive = false;
    bool negative = false;
  };
  std::map<std::tuple<std::string, std::string, std::string, bool>, Pair> pairs;
  for (const auto& [owner, kbc] : sckr.kbs) {
    if (!known_context(order, owner)) continue;
    for (const auto& d : kbc.defeasible) {
      const auto& ax = d.axiom;
      bool named = ax.lhs.size() == 1 && ax.lhs[0].is_atomic() && ax.lhs[0].cls == kNamed && ax.rhs.is_atomic();
      bool matched = false;
      if (named) {
        for (const auto& c : mod) {
          const std::string& r = ax.rhs.cls;
          if (r == add_concept(c) || r == noadd_concept(c)) {
            auto& p = pairs[{owner, d.relation, c, true}];
            (r == add_concept(c) ? p.positive : p.negative) = true;
            matched = true;
          } else if (r == del_concept(c) || r == nodel_concept(c)) {
            auto& p = pairs[{owner, d.relation, c, false}];
            (r == del_concept(c) ? p.positive : p.negative) = true;
            matched = true;
          }
        }
      }
      if (!matched) {
        throw Error("not a prototype default for the specialized translation: " + kb::render(ax));
      }
    }
  }
  for (const auto& c : mod) {
    for (bool addition : {true, false}) {
      bool found = false;
      for (const auto& [key, p] : pairs) {
        if (std::get<2>(key) == c && std::get<3>(key) == addition) found = true;
      }
      if (!found) throw Error("modifiable concept " + c + " has no " + (addition ? "ADD/NOADD" : "DEL/NODEL") +
                              " defaults");
    }
  }

  for (const auto& [key, p] : pairs) {
    const auto& [owner, relation, c, addition] = key;
    const std::string yes = addition ? add_concept(c) : del_concept(c);
    const std::string no = addition ? noadd_concept(c) : nodel_concept(c);
    if (!p.positive || !p.negative) throw Error("default pair for " + yes + "/" + no + " is incomplete");
    kb::DefeasibleAxiom probe{relation, {{kb::ConceptRef::atomic(kNamed)}, kb::ConceptRef::atomic(yes)}};
    auto unguarded = order.defeasible_scope(relation, owner);
    for (const auto& low : unguarded) {
      for (const auto& cls : {yes, no}) {
        out.add({instd(kX, cls, low), {instd(kX, kNamed, low)}, {}});
      }
    }
    for (const auto& low : guarded_contexts(order, probe, owner, unguarded)) {
      if (!has_disjointness(oracle::applicable_strict(sckr, low), yes, no)) {
        throw Error("prototype shape: " + yes + " and " + no + " are not disjoint at " + low);
      }
      Atom named = instd(kX, kNamed, low);
      out.add({instd(kX, yes, low), {named}, {instd(kX, no, low)}});
      out.add({instd(kX, no, low), {named}, {instd(kX, yes, low)}});
    }
  }
  Translation t;
  t.strategy = Strategy::Specialized;
  t.program.rules = out.take();
  return t;
}

Translation translate(const kb::SCKR& sckr, Strategy strategy, const std::vector<std::string>& modifiable) {
  return strategy == Strategy::General ? translate_general(sckr) : translate_specialized(sckr, modifiable);
}

namespace {

class DiagnosisLexer {
 public:
  explicit DiagnosisLexer(std::string_view text) : text_(text) {}

  struct Token {
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
  };

  std::optional<Token> next() {
    skip();
    if (i_ >= text_.size()) return std::nullopt;
    Token t{{}, line_, col_};
    char c = text_[i_];
    if (c == '{' || c == '}' || c == ';') {
      t.text = std::string(1, c);
      advance();
      return t;
    }
    while (i_ < text_.size()) {
      c = text_[i_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}' || c == ';' || c == '%') break;
      t.text += c;
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip() {
    while (i_ < text_.size()) {
      if (text_[i_] == '%') {
        while (i_ < text_.size() && text_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(text_[i_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

}  // namespace

std::vector<Diagnosis> parse_diagnoses(std::string_view text) {
  DiagnosisLexer lex(text);
  std::vector<Diagnosis> out;
  std::set<std::string> names;
  std::size_t last_line = 1, last_col = 1;
  auto expect = [&](const char* what) {
    auto t = lex.next();
    if (!t) throw ParseError(std::string("expected ") + what + " before end of input", last_line, last_col);
    last_line = t->line;
    last_col = t->col;
    return *t;
  };
  while (auto kw = lex.next()) {
    last_line = kw->line;
    last_col = kw->col;
    if (kw->text != "diagnosis") throw ParseError("expected 'diagnosis'", kw->line, kw->col);
    auto name = expect("a diagnosis name");
    if (name.text == "{" || name.text == "}" || name.text == ";") {
      throw ParseError("expected a diagnosis name", name.line, name.col);
    }
    if (!names.insert(name.text).second) throw ParseError("duplicate diagnosis '" + name.text + "'", name.line, name.col);
    auto open = expect("'{'");
    if (open.text != "{") throw ParseError("expected '{'", open.line, open.col);
    Diagnosis d{name.text, {}};
    for (;;) {
      auto t = expect("'some', 'none' or '}'");
      if (t.text == "}") break;
      if (t.text != "some" && t.text != "none") throw ParseError("expected 'some', 'none' or '}'", t.line, t.col);
      auto cls = expect("a concept");
      if (cls.text == "{" || cls.text == "}" || cls.text == ";") {
        throw ParseError("expected a concept", cls.line, cls.col);
      }
      auto semi = expect("';'");
      if (semi.text != ";") throw ParseError("expected ';'", semi.line, semi.col);
      d.requirements.push_back({t.text == "some", cls.text});
    }
    if (d.requirements.empty()) throw ParseError("diagnosis '" + d.name + "' has no requirements", name.line, name.col);
    out.push_back(std::move(d));
  }
  return out;
}

std::string render(const Diagnosis& d) {
  std::string s = "diagnosis " + d.name + " {";
  for (const auto& r : d.requirements) s += std::string(r.some ? " some " : " none ") + r.cls + ";";
  return s + " }";
}

std::string found_prefix(const std::string& diagnosis_name) {
  std::string out;
  for (char c : diagnosis_name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty() || !std::islower(static_cast<unsigned char>(out[0]))) out = "d" + out;
  return out;
}

std::vector<Rule> compile_diagnosis(const Diagnosis& d, const std::string& context) {
  std::vector<Rule> out;
  const std::string prefix = "found_" + found_prefix(d.name) + "_";
  for (std::size_t k = 0; k < d.requirements.size(); ++k) {
    const auto& r = d.requirements[k];
    Atom found{prefix + std::to_string(k + 1), {}};
    out.push_back({found, {instd(kX, r.cls, context)}, {}});
    if (r.some) {
      out.push_back({std::nullopt, {}, {found}});
    } else {
      out.push_back({std::nullopt, {found}, {}});
    }
  }
  return out;
}

std::vector<asp::WeakConstraint> compile_similarity(const measures::CostConfig& costs,
                                                    const std::vector<std::string>& modifiable,
                                                    const std::vector<std::string>& contexts) {
  std::vector<asp::WeakConstraint> out;
  std::vector<Term> where;
  if (contexts.empty()) {
    where.push_back(Term::variable("Context"));
  } else {
    for (const auto& c : contexts) where.push_back(Term::constant(c));
  }
  for (const auto& c : modifiable) {
    for (bool addition : {false, true}) {
      const std::string cls = addition ? add_concept(c) : del_concept(c);
      for (const auto& ctx : where) {
        asp::WeakConstraint w;
        w.positive.push_back({"instd", {kX, Term::string(cls), ctx, Term::string(kEnvironment)}});
        w.weight = addition ? costs.add : costs.del;
        w.terms = {kX, Term::string(cls), ctx};
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

oracle::CASInterpretation decode(const kb::SCKR& sckr, const Translation& t, const asp::AtomSet& answer_set) {
  oracle::CASInterpretation cas;
  for (const auto& c : sckr.structure.contexts) cas.model.per_context[c];
  for (const auto& a : answer_set) {
    if (auto e = decode_instd(a)) {
      cas.model.per_context[e->context].insert({e->cls, e->individual});
    } else if (a.predicate == "ovr" && a.args.size() == 3 && a.args[0].kind == Term::Kind::Integer) {
      auto id = a.args[0].number;
      if (id < 0 || static_cast<std::size_t>(id) >= t.overridable.size()) {
        throw Error("ovr atom with unknown axiom id: " + asp::render(a));
      }
      const auto& d = t.overridable[static_cast<std::size_t>(id)];
      cas.chi.insert({d.relation, d.axiom, a.args[1].name(), a.args[2].name()});
    }
  }
  return cas;
}

std::vector<oracle::CASInterpretation> filter_preferred(const kb::SCKR& sckr,
                                                        std::vector<oracle::CASInterpretation> models) {
  std::vector<const oracle::Chi*> chis;
  for (const auto& m : models) chis.push_back(&m.chi);
  std::vector<oracle::CASInterpretation> out;
  for (std::size_t i : oracle::mp_minimal(sckr, chis)) out.push_back(std::move(models[i]));
  return out;
}

}  // namespace mrckr::ckr2asp
