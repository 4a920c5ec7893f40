#include <doctest.h>

#include <functional>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/solver.hpp"
#include "mrckr/error.hpp"
#include "mrckr/measures.hpp"
#include "support.hpp"

using namespace mrckr;
using namespace mrckr::measures;
using asp::Atom;
using asp::AtomSet;
using asp::parse_atom;
using mrckr::testing::Rng;

namespace {

Value fin(std::uint64_t v) { return ExtendedNatural::finite(v); }
Value inf() { return ExtendedNatural::infinity(); }

WeightedFormula factor(const Atom& a, std::uint64_t w) {
  return WeightedFormula::sum({WeightedFormula::prod({WeightedFormula::pos(a), WeightedFormula::constant(fin(w))}),
                               WeightedFormula::neg(a)});
}

// α_cost over the four-object example vocabulary
ModificationVocabulary example_vocab() {
  ModificationVocabulary v;
  for (const char* c : {"Child", "Car", "RollingContainer"}) {
    for (const char* i : {"i1", "i2", "i3", "i4"}) {
      v.atoms.push_back(Atom{"addition", {asp::Term::constant(c), asp::Term::constant(i)}});
      v.atoms.push_back(Atom{"deletion", {asp::Term::constant(c), asp::Term::constant(i)}});
    }
  }
  return v;
}

AtomSet example_interpretation() {
  return {Atom{"addition", {asp::Term::constant("RollingContainer"), asp::Term::constant("i1")}},
          Atom{"deletion", {asp::Term::constant("Child"), asp::Term::constant("i2")}},
          Atom{"deletion", {asp::Term::constant("Child"), asp::Term::constant("i3")}}};
}

Value sample(Rng& rng, const Semiring& sr) {
  switch (sr.carrier) {
    case Carrier::Boolean:
      return testing::coin(rng);
    case Carrier::ExtendedNatural:
      return testing::coin(rng, 0.15) ? inf() : fin(testing::between(rng, 0, 1000));
    case Carrier::Natural:
      return static_cast<std::int64_t>(testing::between(rng, 0, 1000));
    case Carrier::Integer:
      return static_cast<std::int64_t>(testing::between(rng, 0, 2000)) - 1000;
  }
  return false;
}

}  // namespace

TEST_CASE("semiring laws") {
  Rng rng(71);
  for (const auto& sr : {boolean_semiring(), min_plus(), naturals(), integers()}) {
    CAPTURE(sr.name);
    CHECK(sr.contains(sr.zero));
    CHECK(sr.contains(sr.one));
    for (int i = 0; i < 1000; ++i) {
      Value a = sample(rng, sr), b = sample(rng, sr), c = sample(rng, sr);
      const auto& p = sr.plus;
      const auto& t = sr.times;
      CHECK(p(a, b) == p(b, a));
      CHECK(t(a, b) == t(b, a));
      CHECK(p(p(a, b), c) == p(a, p(b, c)));
      CHECK(t(t(a, b), c) == t(a, t(b, c)));
      CHECK(p(a, sr.zero) == a);
      CHECK(t(a, sr.one) == a);
      CHECK(t(a, sr.zero) == sr.zero);
      CHECK(t(a, p(b, c)) == p(t(a, b), t(a, c)));
      CHECK(t(p(a, b), c) == p(t(a, c), t(b, c)));
    }
  }
}

TEST_CASE("min-plus specifics") {
  auto mp = min_plus();
  CHECK(mp.zero == inf());
  CHECK(mp.one == fin(0));
  CHECK(mp.plus(fin(3), fin(5)) == fin(3));
  CHECK(mp.times(fin(3), fin(5)) == fin(8));
  CHECK(mp.times(inf(), fin(5)) == inf());
  CHECK(render(inf()) == "inf");
  CHECK(parse_value("inf", mp) == inf());
  CHECK(parse_value("7", mp) == fin(7));
  CHECK_THROWS_AS(parse_value("-1", mp), Error);
  CHECK_THROWS_AS(parse_value("inf", naturals()), Error);
  CHECK(parse_value("-4", integers()) == Value{std::int64_t{-4}});
  CHECK(parse_value("true", boolean_semiring()) == Value{true});
  CHECK_THROWS_AS(naturals().times(std::int64_t{1} << 40, std::int64_t{1} << 40), Error);
  CHECK(semiring_by_name("minplus").carrier == Carrier::ExtendedNatural);
  CHECK_THROWS_AS(semiring_by_name("rational"), Error);
}

TEST_CASE("weighted formula evaluation") {
  auto mp = min_plus();
  auto alpha = build_cost_formula(CostConfig{}, example_vocab());
  CHECK(eval_weighted(alpha, example_interpretation(), mp) == fin(3));
  CHECK(eval_weighted(alpha, AtomSet{}, mp) == fin(0));
  CHECK(eval_weighted(WeightedFormula::constant(fin(5)), example_interpretation(), mp) == fin(5));
  CHECK(eval_weighted(WeightedFormula::pos(parse_atom("v")), AtomSet{}, mp) == inf());
  CHECK(eval_weighted(WeightedFormula::neg(parse_atom("v")), AtomSet{}, mp) == fin(0));
  auto holds = [](const Atom& a) { return a.predicate == "v"; };
  CHECK(eval_weighted(WeightedFormula::pos(parse_atom("v")), holds, mp) == fin(0));
}

TEST_CASE("formula text") {
  auto mp = min_plus();
  auto f = parse_formula("addition(\"Car\",i1) * 2 + not addition(\"Car\",i1)", mp);
  CHECK(f == factor(Atom{"addition", {asp::Term::string("Car"), asp::Term::symbol("i1")}}, 2));
  CHECK(parse_formula(render(f), mp) == f);
  auto g = parse_formula("(a + b) * inf * (not c + 3)", mp);
  CHECK(parse_formula(render(g), mp) == g);
  CHECK(eval_weighted(g, asp::parse_atom_list("a"), mp) == inf());
  CHECK_THROWS_AS(parse_formula("a * ", mp), Error);
  CHECK_THROWS_AS(parse_formula("true", mp), Error);
  CHECK(eval_weighted(parse_formula("a * b + not a", boolean_semiring()), asp::parse_atom_list("a"),
                      boolean_semiring()) == Value{false});
}

TEST_CASE("Boolean evaluation agrees with classical satisfaction") {
  Rng rng(73);
  struct Prop {
    int kind;  // 0 var, 1 negated var, 2 and, 3 or
    std::size_t var = 0;
    std::vector<Prop> kids;
  };
  std::function<Prop(int)> gen = [&](int depth) {
    if (depth == 0 || testing::coin(rng, 0.3)) {
      return Prop{static_cast<int>(testing::pick(rng, 2)), testing::pick(rng, 10), {}};
    }
    Prop p{2 + static_cast<int>(testing::pick(rng, 2)), 0, {}};
    for (std::size_t k = testing::between(rng, 2, 3); k > 0; --k) p.kids.push_back(gen(depth - 1));
    return p;
  };
  std::function<WeightedFormula(const Prop&)> to_formula = [&](const Prop& p) {
    Atom a{"x" + std::to_string(p.var), {}};
    std::vector<WeightedFormula> kids;
    for (const auto& k : p.kids) kids.push_back(to_formula(k));
    switch (p.kind) {
      case 0:
        return WeightedFormula::pos(a);
      case 1:
        return WeightedFormula::neg(a);
      case 2:
        return WeightedFormula::prod(std::move(kids));
      default:
        return WeightedFormula::sum(std::move(kids));
    }
  };
  std::function<bool(const Prop&, unsigned)> classical = [&](const Prop& p, unsigned bits) {
    switch (p.kind) {
      case 0:
        return (bits >> p.var & 1u) != 0;
      case 1:
        return (bits >> p.var & 1u) == 0;
      case 2:
        return std::all_of(p.kids.begin(), p.kids.end(), [&](const Prop& k) { return classical(k, bits); });
      default:
        return std::any_of(p.kids.begin(), p.kids.end(), [&](const Prop& k) { return classical(k, bits); });
    }
  };
  auto b = boolean_semiring();
  for (int i = 0; i < 30; ++i) {
    Prop p = gen(4);
    WeightedFormula f = to_formula(p);
    for (unsigned bits = 0; bits < 1024; ++bits) {
      auto holds = [&](const Atom& a) { return (bits >> std::stoul(a.predicate.substr(1)) & 1u) != 0; };
      CHECK(eval_weighted(f, holds, b) == Value{classical(p, bits)});
    }
  }
}

TEST_CASE("measures over answer sets") {
  auto choice = asp::parse_program("a :- not b. b :- not a.");
  Measure count{choice, WeightedFormula::constant(std::int64_t{1}), naturals()};
  CHECK(atomic_query(count, parse_atom("a")) == Value{std::int64_t{1}});
  CHECK(atomic_query(count, parse_atom("zzz")) == Value{std::int64_t{0}});
  CHECK(overall_weight(count) == Value{std::int64_t{2}});
  CHECK(measure_weight(count, asp::parse_atom_list("a")) == Value{std::int64_t{1}});
  CHECK_THROWS_AS(measure_weight(count, asp::parse_atom_list("a b")), Error);

  Measure cred{choice, WeightedFormula::constant(true), boolean_semiring()};
  CHECK(atomic_query(cred, parse_atom("a")) == Value{true});
  CHECK(atomic_query(cred, parse_atom("c")) == Value{false});

  Measure empty{asp::parse_program("a. :- a."), WeightedFormula::constant(fin(0)), min_plus()};
  CHECK(overall_weight(empty) == inf());

  auto vocab = example_vocab();
  auto alpha = build_cost_formula(CostConfig{}, vocab);
  std::string text;
  for (const auto& a : example_interpretation()) text += asp::render(a) + ".\n";
  Measure fixed{asp::parse_program(text), alpha, min_plus()};
  CHECK(measure_weight(fixed, example_interpretation()) == fin(3));
  CHECK(overall_weight(fixed) == fin(3));
}

TEST_CASE("aggregation splits over independent choices and respects the bound") {
  // 12 independent binary choices: 4096 answer sets, factorized without enumeration
  std::string text;
  std::vector<WeightedFormula> factors;
  for (int i = 0; i < 12; ++i) {
    auto n = std::to_string(i);
    text += "p" + n + " :- not q" + n + ". q" + n + " :- not p" + n + ".\n";
    factors.push_back(factor(parse_atom("p" + n), static_cast<std::uint64_t>(i + 1)));
  }
  auto program = asp::parse_program(text);
  Measure m{program, WeightedFormula::prod(factors), min_plus()};
  CHECK(overall_weight(m, {4}) == fin(0));
  CHECK(atomic_query(m, parse_atom("p3"), {4}) == fin(4));
  Measure count{program, WeightedFormula::constant(std::int64_t{1}), naturals()};
  CHECK(overall_weight(count) == Value{std::int64_t{4096}});

  // a sum does not split; the expansion bound applies
  Measure tangled{program, WeightedFormula::sum({WeightedFormula::pos(parse_atom("p0")), WeightedFormula::pos(parse_atom("q1"))}),
                  min_plus()};
  CHECK_THROWS_AS(overall_weight(tangled, {100}), BoundExceeded);
}

TEST_CASE("cost formula construction") {
  auto car = Atom{"addition", {asp::Term::constant("Car"), asp::Term::constant("i1")}};
  ModificationVocabulary one{{car}, {}};
  CHECK(build_cost_formula(CostConfig{}, one) == WeightedFormula::prod({factor(car, 1)}));
  CHECK(build_cost_formula(CostConfig{}, ModificationVocabulary{}) == WeightedFormula::constant(fin(0)));

  ModificationVocabulary cv;
  cv.atoms.push_back(Atom{"classVar", {asp::Term::constant("i"), asp::Term::constant("Hedgehog"), asp::Term::constant("Tiger")}});
  cv.distances[{"Hedgehog", "Tiger"}] = 2;
  CHECK(build_cost_formula(CostConfig{}, cv) == WeightedFormula::prod({factor(cv.atoms[0], 2)}));
  cv.distances.clear();
  CHECK_THROWS_AS(build_cost_formula(CostConfig{}, cv), Error);

  CostConfig c;
  ModificationVocabulary kinds{{parse_atom("displacement(i)"), parse_atom("propertyVar(i,pdel)"),
                                parse_atom("propertyVar(i,pmod)")},
                               {}};
  auto f = build_cost_formula(c, kinds);
  CHECK(eval_weighted(f, AtomSet(kinds.atoms.begin(), kinds.atoms.end()), min_plus()) == fin(c.disp + c.pdel + c.pmod));
  CHECK_THROWS_AS(build_cost_formula(c, ModificationVocabulary{{parse_atom("teleport(i)")}, {}}), Error);
}

TEST_CASE("weak-constraint form") {
  auto add = Atom{"addition", {asp::Term::symbol("c"), asp::Term::symbol("i")}};
  auto weaks = formula_to_weaks(WeightedFormula::prod({factor(add, 1)}));
  REQUIRE(weaks.size() == 1);
  CHECK(asp::render(weaks[0]) == ":~ addition(c,i). [1@0,add,c,i]");
  CHECK(formula_to_weaks(WeightedFormula::constant(fin(0))).empty());
  CHECK(formula_to_weaks(WeightedFormula::prod({})).empty());

  auto alpha = build_cost_formula(CostConfig{}, example_vocab());
  CHECK(asp::cost(example_interpretation(), formula_to_weaks(alpha)) == 3);

  CHECK_THROWS_AS(formula_to_weaks(WeightedFormula::sum({WeightedFormula::pos(add), WeightedFormula::pos(add)})), Error);
  auto infinite = WeightedFormula::sum(
      {WeightedFormula::prod({WeightedFormula::pos(add), WeightedFormula::constant(inf())}), WeightedFormula::neg(add)});
  CHECK_THROWS_AS(formula_to_weaks(infinite), Error);
  // addition(c,i) and add(c,i) would share the tuple [add,c,i]
  CHECK_THROWS_AS(formula_to_weaks(WeightedFormula::prod({factor(add, 1), factor(parse_atom("add(c,i)"), 1)})), Error);
}

TEST_CASE("weak-constraint form preserves the cost of every interpretation") {
  Rng rng(79);
  const std::vector<std::string> preds{"addition", "deletion", "displacement", "classVar", "propertyVar", "other"};
  for (int i = 0; i < 500; ++i) {
    std::vector<Atom> pool;
    for (std::size_t k = testing::between(rng, 1, 8); k > 0; --k) {
      Atom a{preds[testing::pick(rng, preds.size())], {asp::Term::symbol("o" + std::to_string(testing::pick(rng, 3)))}};
      pool.push_back(a);
    }
    std::vector<WeightedFormula> factors;
    for (std::size_t k = testing::between(rng, 0, 10); k > 0; --k) {
      const Atom& a = pool[testing::pick(rng, pool.size())];
      auto w = static_cast<std::uint64_t>(testing::between(rng, 0, 9));
      auto f = factor(a, w);
      if (testing::coin(rng)) std::swap(f.children[0], f.children[1]);
      if (testing::coin(rng, 0.2)) f.children[0] = WeightedFormula::pos(a), f.children[1] = WeightedFormula::neg(a);
      factors.push_back(std::move(f));
      if (testing::coin(rng, 0.1)) factors.push_back(WeightedFormula::constant(fin(0)));
    }
    WeightedFormula formula = WeightedFormula::prod(factors);
    auto weaks = formula_to_weaks(formula);
    for (int k = 0; k < 8; ++k) {
      AtomSet m;
      for (const auto& a : pool) {
        if (testing::coin(rng)) m.insert(a);
      }
      auto expected = eval_weighted(formula, m, min_plus());
      CHECK(expected == fin(static_cast<std::uint64_t>(asp::cost(m, weaks))));
      CHECK(expected == fin(static_cast<std::uint64_t>(testing::brute_cost(weaks, m))));
    }
  }
}

TEST_CASE("optimization agrees with the min-plus measure") {
  Rng rng(83);
  testing::ProgramShape shape;
  shape.max_atoms = 8;
  shape.max_rules = 14;
  for (int i = 0; i < 150; ++i) {
    asp::Program p = testing::random_program(rng, shape);
    auto atoms = testing::atoms_of(p);
    std::vector<WeightedFormula> factors;
    for (const auto& a : atoms) {
      if (testing::coin(rng, 0.6)) factors.push_back(factor(a, testing::between(rng, 0, 5)));
    }
    WeightedFormula alpha = WeightedFormula::prod(factors);
    Measure m{p, alpha, min_plus()};
    asp::Program with = p;
    auto weaks = formula_to_weaks(alpha);
    with.weaks.insert(with.weaks.end(), weaks.begin(), weaks.end());
    auto opt = asp::optimize(with);

    Value best = inf();
    for (const auto& s : testing::brute_stable_models(p)) best = min_plus().plus(best, eval_weighted(alpha, s, min_plus()));
    CHECK(overall_weight(m) == best);
    if (opt.empty()) {
      CHECK(best == inf());
    } else {
      CHECK(best == fin(static_cast<std::uint64_t>(opt.front().cost)));
    }
  }
}

TEST_CASE("cost configuration") {
  CostConfig d;
  CHECK(d.add == 1);
  CHECK(d.del == 1);
  CHECK(d.warnings().empty());
  auto c = parse_cost_config(R"({"add": 2, "del": 3, "allowed_superclasses": ["Animal"]})");
  CHECK(c.add == 2);
  CHECK(c.del == 3);
  CHECK(c.disp == d.disp);
  CHECK(c.allowed_superclasses == std::vector<std::string>{"Animal"});
  CHECK(parse_cost_config(render_cost_config(c)) == c);
  CHECK_THROWS_AS(parse_cost_config(R"({"add": -1})"), Error);
  CHECK_THROWS_AS(parse_cost_config(R"({"colour": 1})"), Error);
  CHECK_THROWS_AS(parse_cost_config("[1]"), Error);
  CHECK_FALSE(parse_cost_config(R"({"pmod": 5})").warnings().empty());
  CHECK(parse_cost_config(testing::read_text(testing::data_path("costs.json"))) == d);
}

TEST_CASE("class distance") {
  std::vector<std::pair<std::string, std::string>> two{{"Hedgehog", "DangerousAnimal"}, {"Tiger", "DangerousAnimal"}};
  auto d = class_distance(two, "Hedgehog", "Tiger", {"DangerousAnimal"});
  REQUIRE(d.has_value());
  CHECK(d->distance == 2);
  CHECK(d->via == "DangerousAnimal");
  CHECK(class_distance(two, "Tiger", "Tiger", {"DangerousAnimal"})->distance == 0);
  CHECK_FALSE(class_distance({{"Car", "Vehicle"}, {"Dog", "Animal"}}, "Car", "Dog", {"Vehicle", "Animal"}).has_value());
  CHECK_FALSE(class_distance(two, "Hedgehog", "Tiger", {"Vehicle"}).has_value());

  // a longer chain loses to a shorter one; equal totals go to the smaller name
  std::vector<std::pair<std::string, std::string>> h{{"A", "M"}, {"M", "Top"}, {"B", "Top"}, {"A", "Z"}, {"B", "Z"}, {"A", "Y"}, {"B", "Y"}};
  auto best = class_distance(h, "A", "B", {"Top", "Z", "Y"});
  REQUIRE(best.has_value());
  CHECK(best->distance == 2);
  CHECK(best->via == "Y");
}
