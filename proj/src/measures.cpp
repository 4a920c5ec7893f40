#include "mrckr/measures.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <set>

#include <json.hpp>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/solver.hpp"
#include "mrckr/error.hpp"

namespace mrckr::measures {

using asp::Atom;
using asp::AtomSet;

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in semiring addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in semiring multiplication");
  return r;
}

const ExtendedNatural& en(const Value& v) { return std::get<ExtendedNatural>(v); }

}  // namespace

bool Semiring::contains(const Value& v) const {
  switch (carrier) {
    case Carrier::Boolean:
      return std::holds_alternative<bool>(v);
    case Carrier::ExtendedNatural:
      return std::holds_alternative<ExtendedNatural>(v) && (!en(v).infinite || en(v).value == 0);
    case Carrier::Natural:
      return std::holds_alternative<std::int64_t>(v) && std::get<std::int64_t>(v) >= 0;
    case Carrier::Integer:
      return std::holds_alternative<std::int64_t>(v);
  }
  return false;
}

Semiring boolean_semiring() {
  Semiring s;
  s.name = "boolean";
  s.carrier = Carrier::Boolean;
  s.plus = [](const Value& a, const Value& b) -> Value { return std::get<bool>(a) || std::get<bool>(b); };
  s.times = [](const Value& a, const Value& b) -> Value { return std::get<bool>(a) && std::get<bool>(b); };
  s.zero = false;
  s.one = true;
  return s;
}

Semiring min_plus() {
  Semiring s;
  s.name = "minplus";
  s.carrier = Carrier::ExtendedNatural;
  s.plus = [](const Value& a, const Value& b) -> Value {
    const auto& x = en(a);
    const auto& y = en(b);
    if (x.infinite) return y;
    if (y.infinite) return x;
    return ExtendedNatural::finite(std::min(x.value, y.value));
  };
  s.times = [](const Value& a, const Value& b) -> Value {
    const auto& x = en(a);
    const auto& y = en(b);
    if (x.infinite || y.infinite) return ExtendedNatural::infinity();
    std::uint64_t r;
    if (__builtin_add_overflow(x.value, y.value, &r)) throw Error("overflow in min-plus multiplication");
    return ExtendedNatural::finite(r);
  };
  s.zero = ExtendedNatural::infinity();
  s.one = ExtendedNatural::finite(0);
  return s;
}

Semiring naturals() {
  Semiring s;
  s.name = "nat";
  s.carrier = Carrier::Natural;
  s.plus = [](const Value& a, const Value& b) -> Value {
    return checked_add(std::get<std::int64_t>(a), std::get<std::int64_t>(b));
  };
  s.times = [](const Value& a, const Value& b) -> Value {
    return checked_mul(std::get<std::int64_t>(a), std::get<std::int64_t>(b));
  };
  s.zero = std::int64_t{0};
  s.one = std::int64_t{1};
  return s;
}

Semiring integers() {
  Semiring s = naturals();
  s.name = "int";
  s.carrier = Carrier::Integer;
  return s;
}

Semiring semiring_by_name(const std::string& name) {
  if (name == "boolean") return boolean_semiring();
  if (name == "minplus") return min_plus();
  if (name == "nat") return naturals();
  if (name == "int") return integers();
  throw Error("unknown semiring '" + name + "' (expected boolean, minplus, nat or int)");
}

std::string render(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* e = std::get_if<ExtendedNatural>(&v)) return e->infinite ? "inf" : std::to_string(e->value);
  return std::to_string(std::get<std::int64_t>(v));
}

Value parse_value(std::string_view text, const Semiring& sr) {
  std::string t(text);
  Value v;
  if (t == "true" || t == "false") {
    v = (t == "true");
  } else if (t == "inf") {
    v = ExtendedNatural::infinity();
  } else {
    std::size_t used = 0;
    long long n = 0;
    try {
      n = std::stoll(t, &used);
    } catch (const std::exception&) {
      throw Error("not a semiring value: '" + t + "'");
    }
    if (used != t.size()) throw Error("not a semiring value: '" + t + "'");
    if (sr.carrier == Carrier::ExtendedNatural) {
      if (n < 0) throw Error("negative value for " + sr.name + ": " + t);
      v = ExtendedNatural::finite(static_cast<std::uint64_t>(n));
    } else {
      v = static_cast<std::int64_t>(n);
    }
  }
  if (!sr.contains(v)) throw Error("value '" + t + "' is not in the carrier of " + sr.name);
  return v;
}

std::int64_t to_integer(const Value& v) {
  if (const auto* e = std::get_if<ExtendedNatural>(&v)) {
    if (e->infinite || e->value > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw Error("value is not a finite integer");
    }
    return static_cast<std::int64_t>(e->value);
  }
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  throw Error("boolean value is not an integer");
}

Value eval_weighted(const WeightedFormula& f, const std::function<bool(const Atom&)>& holds, const Semiring& sr) {
  switch (f.kind) {
    case WeightedFormula::Kind::Const:
      return f.value;
    case WeightedFormula::Kind::Pos:
      return holds(f.atom) ? sr.one : sr.zero;
    case WeightedFormula::Kind::Neg:
      return holds(f.atom) ? sr.zero : sr.one;
    case WeightedFormula::Kind::Sum: {
      Value acc = sr.zero;
      for (const auto& c : f.children) acc = sr.plus(acc, eval_weighted(c, holds, sr));
      return acc;
    }
    case WeightedFormula::Kind::Prod: {
      Value acc = sr.one;
      for (const auto& c : f.children) acc = sr.times(acc, eval_weighted(c, holds, sr));
      return acc;
    }
  }
  return sr.zero;
}

Value eval_weighted(const WeightedFormula& f, const AtomSet& interpretation, const Semiring& sr) {
  return eval_weighted(f, [&](const Atom& a) { return interpretation.count(a) > 0; }, sr);
}

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, const Semiring& sr) : text_(text), sr_(sr) {}

  WeightedFormula parse() {
    WeightedFormula f = sum();
    skip();
    if (i_ != text_.size()) fail("unexpected input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, i_ + 1);
  }
  void skip() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < text_.size() && text_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  WeightedFormula sum() {
    std::vector<WeightedFormula> parts{product()};
    while (accept('+')) parts.push_back(product());
    return parts.size() == 1 ? std::move(parts[0]) : WeightedFormula::sum(std::move(parts));
  }

  WeightedFormula product() {
    std::vector<WeightedFormula> parts{factor()};
    while (accept('*')) parts.push_back(factor());
    return parts.size() == 1 ? std::move(parts[0]) : WeightedFormula::prod(std::move(parts));
  }

  std::string word() {
    std::size_t start = i_;
    while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) ++i_;
    return std::string(text_.substr(start, i_ - start));
  }

  Atom atom_from(std::size_t start) {
    if (i_ < text_.size() && text_[i_] == '(') {
      int depth = 0;
      bool quoted = false;
      for (; i_ < text_.size(); ++i_) {
        char c = text_[i_];
        if (quoted) {
          if (c == '\\') ++i_;
          else if (c == '"') quoted = false;
          continue;
        }
        if (c == '"') quoted = true;
        else if (c == '(') ++depth;
        else if (c == ')' && --depth == 0) {
          ++i_;
          break;
        }
      }
      if (depth != 0) fail("unbalanced parentheses in atom");
    }
    try {
      return asp::parse_atom(text_.substr(start, i_ - start));
    } catch (const ParseError& e) {
      fail(std::string("bad atom: ") + e.what());
    }
  }

  WeightedFormula factor() {
    skip();
    if (i_ >= text_.size()) fail("unexpected end of formula");
    if (accept('(')) {
      WeightedFormula f = sum();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    char c = text_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t start = i_++;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
      return WeightedFormula::constant(parse_value(text_.substr(start, i_ - start), sr_));
    }
    if (!std::islower(static_cast<unsigned char>(c))) fail("expected a constant or an atom");
    std::size_t start = i_;
    std::string w = word();
    if (w == "inf" || w == "true" || w == "false") return WeightedFormula::constant(parse_value(w, sr_));
    if (w == "not") {
      skip();
      std::size_t s2 = i_;
      word();
      return WeightedFormula::neg(atom_from(s2));
    }
    return WeightedFormula::pos(atom_from(start));
  }

  std::string_view text_;
  const Semiring& sr_;
  std::size_t i_ = 0;
};

void render_into(const WeightedFormula& f, std::string& out, int parent) {
  // parent: 0 top, 1 inside sum, 2 inside product
  switch (f.kind) {
    case WeightedFormula::Kind::Const:
      out += render(f.value);
      return;
    case WeightedFormula::Kind::Pos:
      out += asp::render(f.atom);
      return;
    case WeightedFormula::Kind::Neg:
      out += "not " + asp::render(f.atom);
      return;
    case WeightedFormula::Kind::Sum:
    case WeightedFormula::Kind::Prod: {
      bool is_sum = f.kind == WeightedFormula::Kind::Sum;
      if (f.children.empty()) {
        out += is_sum ? "(0)" : "(1)";
        return;
      }
      bool paren = (is_sum && parent == 2) || f.children.size() == 1;
      if (paren) out += "(";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += is_sum ? " + " : " * ";
        render_into(f.children[i], out, is_sum ? 1 : 2);
      }
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

WeightedFormula parse_formula(std::string_view text, const Semiring& sr) { return FormulaParser(text, sr).parse(); }

std::string render(const WeightedFormula& f) {
  std::string out;
  render_into(f, out, 0);
  return out;
}

Value measure_weight(const Measure& m, const AtomSet& answer_set) {
  asp::GroundProgram gp = asp::ground(m.program);
  for (const auto& a : answer_set) {
    if (gp.find(a) < 0) throw Error("not an answer set: " + asp::render(a) + " is underivable");
  }
  if (!asp::is_stable(gp, gp.to_truth(answer_set))) throw Error("not an answer set of the measure's program");
  return eval_weighted(m.formula, answer_set, m.semiring);
}

namespace {

void collect_atoms(const WeightedFormula& f, std::vector<const Atom*>& out) {
  if (f.kind == WeightedFormula::Kind::Pos || f.kind == WeightedFormula::Kind::Neg) out.push_back(&f.atom);
  for (const auto& c : f.children) collect_atoms(c, out);
}

// ⊕ over the answer sets of `family` of the formula weight, splitting the
// formula over independent components when it is a product.
Value aggregate(const asp::GroundProgram& gp, const asp::ModelFamily& family, const WeightedFormula& formula,
                const Semiring& sr, const QueryOptions& options) {
  if (!family.satisfiable) return sr.zero;
  std::vector<char> truth(gp.atoms.size(), 0);
  for (int a : family.fixed) truth[static_cast<std::size_t>(a)] = 1;
  auto holds = [&](const Atom& a) {
    int id = gp.find(a);
    return id >= 0 && truth[static_cast<std::size_t>(id)];
  };
  std::vector<int> component(gp.atoms.size(), -1);
  for (std::size_t k = 0; k < family.parts.size(); ++k) {
    for (const auto& model : family.parts[k]) {
      for (int a : model) component[static_cast<std::size_t>(a)] = static_cast<int>(k);
    }
  }
  auto owner = [&](const WeightedFormula& f) -> int {
    std::vector<const Atom*> atoms;
    collect_atoms(f, atoms);
    int found = -1;
    for (const Atom* a : atoms) {
      int id = gp.find(*a);
      int c = id < 0 ? -1 : component[static_cast<std::size_t>(id)];
      if (c < 0) continue;
      if (found >= 0 && found != c) return -2;
      found = c;
    }
    return found;
  };

  std::vector<const WeightedFormula*> factors;
  if (formula.kind == WeightedFormula::Kind::Prod) {
    for (const auto& c : formula.children) factors.push_back(&c);
  } else {
    factors.push_back(&formula);
  }
  std::vector<std::vector<const WeightedFormula*>> by_component(family.parts.size());
  std::vector<const WeightedFormula*> constant;
  bool splits = true;
  for (const auto* f : factors) {
    int c = owner(*f);
    if (c == -2) {
      splits = false;
      break;
    }
    if (c < 0) {
      constant.push_back(f);
    } else {
      by_component[static_cast<std::size_t>(c)].push_back(f);
    }
  }

  if (!splits) {
    if (family.count() > static_cast<double>(options.max_models)) {
      throw BoundExceeded("formula couples components and the answer-set family exceeds " +
                          std::to_string(options.max_models) + " members");
    }
    Value acc = sr.zero;
    for (const auto& ids : family.expand()) {
      std::fill(truth.begin(), truth.end(), 0);
      for (int a : ids) truth[static_cast<std::size_t>(a)] = 1;
      acc = sr.plus(acc, eval_weighted(formula, holds, sr));
    }
    return acc;
  }

  // ⊗ distributes over ⊕ and ⊗ is commutative for every shipped semiring.
  Value result = sr.one;
  for (const auto* f : constant) result = sr.times(result, eval_weighted(*f, holds, sr));
  for (std::size_t k = 0; k < family.parts.size(); ++k) {
    Value acc = sr.zero;
    for (const auto& model : family.parts[k]) {
      for (int a : model) truth[static_cast<std::size_t>(a)] = 1;
      Value w = sr.one;
      for (const auto* f : by_component[k]) w = sr.times(w, eval_weighted(*f, holds, sr));
      acc = sr.plus(acc, w);
      for (int a : model) truth[static_cast<std::size_t>(a)] = 0;
    }
    result = sr.times(result, acc);
  }
  return result;
}

asp::ModelFamily bounded_family(const asp::GroundProgram& gp, const QueryOptions& options) {
  asp::ModelFamily family = asp::solve_family(gp, {options.max_models + 1, std::nullopt});
  for (const auto& part : family.parts) {
    if (part.size() > options.max_models) {
      throw BoundExceeded("a component has more than " + std::to_string(options.max_models) + " answer sets");
    }
  }
  return family;
}

}  // namespace

Value overall_weight(const Measure& m, const QueryOptions& options) {
  asp::GroundProgram gp = asp::ground(m.program);
  return aggregate(gp, bounded_family(gp, options), m.formula, m.semiring, options);
}

Value atomic_query(const Measure& m, const Atom& atom, const QueryOptions& options) {
  asp::GroundProgram gp = asp::ground(m.program);
  int id = gp.find(atom);
  if (id < 0) return m.semiring.zero;
  asp::ModelFamily family = bounded_family(gp, options);
  if (!family.satisfiable) return m.semiring.zero;
  if (std::find(family.fixed.begin(), family.fixed.end(), id) == family.fixed.end()) {
    bool found = false;
    for (auto& part : family.parts) {
      bool here = std::any_of(part.begin(), part.end(), [&](const std::vector<int>& model) {
        return std::find(model.begin(), model.end(), id) != model.end();
      });
      if (!here) continue;
      part.erase(std::remove_if(part.begin(), part.end(),
                                [&](const std::vector<int>& model) {
                                  return std::find(model.begin(), model.end(), id) == model.end();
                                }),
                 part.end());
      found = true;
      break;
    }
    if (!found) return m.semiring.zero;
  }
  return aggregate(gp, family, m.formula, m.semiring, options);
}

std::vector<std::string> CostConfig::warnings() const {
  std::vector<std::string> out;
  if (!(pdel == padd && padd > pmod)) out.push_back("property costs usually satisfy pdel = padd > pmod");
  return out;
}

CostConfig parse_cost_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("cost configuration: ") + e.what());
  }
  if (!j.is_object()) throw Error("cost configuration must be a JSON object");
  CostConfig c;
  const std::map<std::string, std::int64_t*> fields{{"add", &c.add},   {"del", &c.del},   {"disp", &c.disp},
                                                    {"pdel", &c.pdel}, {"padd", &c.padd}, {"pmod", &c.pmod}};
  for (const auto& [key, value] : j.items()) {
    if (key == "allowed_superclasses") {
      if (!value.is_array()) throw Error("cost configuration: allowed_superclasses must be a list");
      c.allowed_superclasses.clear();
      for (const auto& s : value) {
        if (!s.is_string()) throw Error("cost configuration: allowed_superclasses must hold strings");
        c.allowed_superclasses.push_back(s.get<std::string>());
      }
      continue;
    }
    auto it = fields.find(key);
    if (it == fields.end()) throw Error("cost configuration: unknown key '" + key + "'");
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
      throw Error("cost configuration: '" + key + "' must be a nonnegative integer");
    }
    *it->second = value.get<std::int64_t>();
  }
  return c;
}

std::string render_cost_config(const CostConfig& c) {
  nlohmann::ordered_json j;
  j["add"] = c.add;
  j["del"] = c.del;
  j["disp"] = c.disp;
  j["pdel"] = c.pdel;
  j["padd"] = c.padd;
  j["pmod"] = c.pmod;
  j["allowed_superclasses"] = c.allowed_superclasses;
  return j.dump(2);
}

namespace {

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::int64_t factor_cost(const CostConfig& costs, const ModificationVocabulary& vocab, const Atom& a) {
  const auto& p = a.predicate;
  const auto n = a.args.size();
  if (p == "addition" && n == 2) return costs.add;
  if (p == "deletion" && n == 2) return costs.del;
  if (p == "displacement" && n == 1) return costs.disp;
  if (p == "classVar" && n == 3) {
    auto it = vocab.distances.find({a.args[1].name(), a.args[2].name()});
    if (it == vocab.distances.end()) {
      throw Error("no class distance for " + a.args[1].name() + " -> " + a.args[2].name());
    }
    return it->second;
  }
  if (p == "propertyVar" && n == 2) {
    std::string kind = lower(a.args[1].name());
    if (kind == "pdel") return costs.pdel;
    if (kind == "padd") return costs.padd;
    if (kind == "pmod") return costs.pmod;
    throw Error("unknown property variation kind '" + a.args[1].name() + "'");
  }
  throw Error("not a modification atom: " + asp::render(a));
}

std::string tag_of(const std::string& predicate) {
  if (predicate == "addition") return "add";
  if (predicate == "deletion") return "del";
  if (predicate == "displacement") return "disp";
  if (predicate == "classVar") return "classvar";
  if (predicate == "propertyVar") return "propvar";
  return predicate;
}

bool is_one(const Value& v) {
  const auto* e = std::get_if<ExtendedNatural>(&v);
  return e && !e->infinite && e->value == 0;
}

// Matches (a * w + not a) in either operand order; returns the atom and weight.
std::optional<std::pair<Atom, std::int64_t>> match_factor(const WeightedFormula& f) {
  using K = WeightedFormula::Kind;
  if (f.kind != K::Sum || f.children.size() != 2) return std::nullopt;
  const WeightedFormula* neg = nullptr;
  const WeightedFormula* pos = nullptr;
  for (const auto& c : f.children) {
    if (c.kind == K::Neg) {
      neg = &c;
    } else {
      pos = &c;
    }
  }
  if (!neg || !pos) return std::nullopt;
  std::optional<Atom> atom;
  std::uint64_t weight = 0;
  if (pos->kind == K::Pos) {
    atom = pos->atom;
  } else if (pos->kind == K::Prod) {
    for (const auto& c : pos->children) {
      if (c.kind == K::Pos) {
        if (atom) return std::nullopt;
        atom = c.atom;
      } else if (c.kind == K::Const) {
        const auto* e = std::get_if<ExtendedNatural>(&c.value);
        if (!e) return std::nullopt;
        if (e->infinite) throw Error("cost factor with infinite weight has no weak-constraint form");
        weight += e->value;
      } else {
        return std::nullopt;
      }
    }
  }
  if (!atom || *atom != neg->atom) return std::nullopt;
  if (weight > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw Error("cost factor weight too large");
  }
  return std::make_pair(*atom, static_cast<std::int64_t>(weight));
}

}  // namespace

WeightedFormula build_cost_formula(const CostConfig& costs, const ModificationVocabulary& vocab) {
  if (vocab.atoms.empty()) return WeightedFormula::constant(ExtendedNatural::finite(0));
  std::vector<WeightedFormula> factors;
  for (const auto& a : vocab.atoms) {
    if (!a.is_ground()) throw Error("modification atom is not ground: " + asp::render(a));
    auto w = static_cast<std::uint64_t>(factor_cost(costs, vocab, a));
    factors.push_back(WeightedFormula::sum(
        {WeightedFormula::prod({WeightedFormula::pos(a), WeightedFormula::constant(ExtendedNatural::finite(w))}),
         WeightedFormula::neg(a)}));
  }
  return WeightedFormula::prod(std::move(factors));
}

std::vector<asp::WeakConstraint> formula_to_weaks(const WeightedFormula& formula) {
  using K = WeightedFormula::Kind;
  std::vector<const WeightedFormula*> factors;
  if (formula.kind == K::Prod) {
    for (const auto& c : formula.children) factors.push_back(&c);
  } else {
    factors.push_back(&formula);
  }
  std::vector<Atom> order;
  std::map<Atom, std::int64_t> weight;
  for (const auto* f : factors) {
    if (f->kind == K::Const && is_one(f->value)) continue;
    auto m = match_factor(*f);
    if (!m) throw Error("formula is not in cost normal form near: " + render(*f));
    auto [it, inserted] = weight.emplace(m->first, 0);
    if (inserted) order.push_back(m->first);
    if (__builtin_add_overflow(it->second, m->second, &it->second)) throw Error("cost factor weight too large");
  }
  std::vector<asp::WeakConstraint> out;
  std::map<std::vector<asp::Term>, Atom> seen;
  for (const auto& a : order) {
    asp::WeakConstraint w;
    w.positive.push_back(a);
    w.weight = weight.at(a);
    w.terms.push_back(asp::Term::symbol(tag_of(a.predicate)));
    w.terms.insert(w.terms.end(), a.args.begin(), a.args.end());
    auto [it, inserted] = seen.emplace(w.terms, a);
    if (!inserted) {
      throw Error("weak constraint terms of " + asp::render(a) + " collide with " + asp::render(it->second));
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::optional<ClassDistance> class_distance(const std::vector<std::pair<std::string, std::string>>& subsumptions,
                                            const std::string& c1, const std::string& c2,
                                            const std::vector<std::string>& allowed_supers) {
  if (c1 == c2) return ClassDistance{0, {}};
  std::map<std::string, std::vector<std::string>> up;
  for (const auto& [sub, super] : subsumptions) up[sub].push_back(super);
  auto bfs = [&](const std::string& start) {
    std::map<std::string, std::int64_t> dist{{start, 0}};
    std::deque<std::string> queue{start};
    while (!queue.empty()) {
      std::string c = queue.front();
      queue.pop_front();
      for (const auto& p : up[c]) {
        if (dist.emplace(p, dist[c] + 1).second) queue.push_back(p);
      }
    }
    return dist;
  };
  auto d1 = bfs(c1);
  auto d2 = bfs(c2);
  std::optional<ClassDistance> best;
  std::vector<std::string> supers = allowed_supers;
  std::sort(supers.begin(), supers.end());
  for (const auto& s : supers) {
    auto a = d1.find(s);
    auto b = d2.find(s);
    if (a == d1.end() || b == d2.end()) continue;
    std::int64_t total = a->second + b->second;
    if (!best || total < best->distance) best = ClassDistance{total, s};
  }
  return best;
}

}  // namespace mrckr::measures
