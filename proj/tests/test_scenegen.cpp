#include <doctest.h>

#include <cstdlib>

#include "mrckr/error.hpp"
#include "mrckr/oracle.hpp"
#include "mrckr/scenegen.hpp"
#include "support.hpp"

using namespace mrckr;
using namespace mrckr::scenegen;
using ckr2asp::Diagnosis;
using mrckr::testing::Rng;

namespace {

struct Example {
  kb::Ontology ontology = kb::parse_ontology(testing::read_text(testing::data_path("ontology.kb")));
  std::vector<Diagnosis> diagnoses = ckr2asp::parse_diagnoses(testing::read_text(testing::data_path("diagnoses.dx")));
  kb::Scene scene = load_scene(testing::data_path("scene_example.json"), &ontology);
};

const SceneDiff& by_context(const std::vector<SceneDiff>& diffs, const std::string& context) {
  for (const auto& d : diffs) {
    if (d.context == context) return d;
  }
  FAIL("no diff for " << context);
  throw std::logic_error("unreachable");
}

// The ontology closed over a scene in one isolated context.
oracle::ContextModel close_scene(const kb::Ontology& ontology, const kb::Scene& scene) {
  kb::SCKR s;
  s.signature.concepts = ontology.signature.concepts;
  s.signature.contexts = {"k"};
  s.structure.contexts = {"k"};
  auto& kb = s.kbs["k"];
  kb.strict = kb::normalize_all(ontology.axioms).strict;
  for (const auto& o : scene.objects) {
    s.signature.individuals.insert(o.id);
    for (const auto& c : o.concepts) {
      s.signature.concepts.insert(c);
      kb.assertions.push_back({c, o.id});
    }
  }
  return oracle::least_model(s, {});
}

bool satisfies(const oracle::ContextModel& m, const Diagnosis& d) {
  for (const auto& r : d.requirements) {
    bool found = false;
    for (const auto& a : m.per_context.at("k")) found = found || a.cls == r.cls;
    if (found != r.some) return false;
  }
  return true;
}

// Minimum |ADD|·add + |DEL|·del over all modification sets whose closed scene is
// consistent and satisfies d; nullopt when none exists.
std::optional<std::int64_t> brute_minimum(const kb::Scene& scene, const kb::Ontology& ontology, const Diagnosis& d,
                                          const std::vector<std::string>& modifiable, const measures::CostConfig& costs) {
  struct Move {
    bool add;
    std::string individual, cls;
  };
  std::vector<Move> moves;
  for (const auto& o : scene.objects) {
    for (const auto& c : modifiable) {
      bool has = std::find(o.concepts.begin(), o.concepts.end(), c) != o.concepts.end();
      moves.push_back({!has, o.id, c});
    }
  }
  REQUIRE(moves.size() <= 16);
  std::optional<std::int64_t> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << moves.size()); ++mask) {
    SceneDiff diff;
    std::int64_t cost = 0;
    for (std::size_t k = 0; k < moves.size(); ++k) {
      if (!(mask >> k & 1)) continue;
      const auto& mv = moves[k];
      (mv.add ? diff.additions : diff.deletions).push_back({mv.individual, mv.cls});
      cost += mv.add ? costs.add : costs.del;
    }
    if (best && cost >= *best) continue;
    auto m = close_scene(ontology, apply_diff(scene, diff));
    if (m.consistent() && satisfies(m, d)) best = cost;
  }
  return best;
}

}  // namespace

TEST_CASE("load_scene") {
  Example ex;
  REQUIRE(ex.scene.objects.size() == 4);
  CHECK(ex.scene.objects[1].id == "i2");
  CHECK(ex.scene.objects[1].concepts == std::vector<std::string>{"Child"});
  CHECK(ex.scene.objects[0].concepts.empty());
  CHECK(load_scene(testing::data_path("street_scene.json"), &ex.ontology).objects.size() == 60);
  CHECK_THROWS_AS(load_scene(testing::data_path("missing.json")), FileError);
  CHECK_THROWS_AS(load_scene(testing::data_path("ontology.kb")), Error);
}

TEST_CASE("build_sckr structure") {
  Example ex;
  GenerationConfig cfg;
  auto two = build_sckr(ex.scene, ex.ontology, {ex.diagnoses[0], ex.diagnoses[1]}, cfg);
  CHECK(two.structure.contexts.size() == 4);
  REQUIRE(two.structure.relations.size() == 1);
  CHECK(two.structure.relations[0].name == kRelation);
  CHECK(two.structure.relations[0].edges.size() == 3);
  CHECK(kb::validate(two).ok());

  auto all = build_sckr(ex.scene, ex.ontology, ex.diagnoses, cfg);
  CHECK(kb::validate(all).ok());
  std::set<std::string> contexts(all.structure.contexts.begin(), all.structure.contexts.end());
  CHECK(contexts == std::set<std::string>{"c_exch", "c_base", "c_gliding", "c_child", "c_rolling", "c_sign&smoke",
                                          "c_sign&stop"});
  kb::ContextOrder order(all.structure);
  CHECK(order.below(kRelation, "c_base", "c_exch"));
  CHECK(order.below(kRelation, "c_rolling", "c_base"));
  CHECK(order.below(kRelation, "c_rolling", "c_exch"));

  const auto& base = all.kbs.at("c_base").assertions;
  auto has = [&](const std::string& cls, const std::string& ind) {
    return std::find(base.begin(), base.end(), kb::Assertion{cls, ind}) != base.end();
  };
  CHECK(has("ORIG_Child", "i2"));
  CHECK(has("Named", "i2"));
  CHECK(has("Named", "i1"));
  CHECK_FALSE(has("ORIG_Child", "i1"));

  // one default per exchange kind and modifiable concept
  auto mod = resolve_modifiable(ex.ontology, ex.diagnoses, cfg);
  CHECK(all.kbs.at("c_exch").defeasible.size() == 4 * mod.size());

  GenerationConfig fresh;
  fresh.fresh_individuals = 2;
  auto f = build_sckr(ex.scene, ex.ontology, ex.diagnoses, fresh);
  CHECK(f.signature.individuals.count("f_2"));
  CHECK(kb::validate(f).ok());

  CHECK_THROWS_AS(build_sckr(ex.scene, ex.ontology, {Diagnosis{"x", {{true, "Unicorn"}}}}, cfg), Error);
  GenerationConfig bad;
  bad.modifiable = {"Unicorn"};
  CHECK_THROWS_AS(build_sckr(ex.scene, ex.ontology, ex.diagnoses, bad), Error);
}

TEST_CASE("default modifiable concepts reach the diagnosis concepts") {
  Example ex;
  auto mod = default_modifiable(ex.ontology, {ex.diagnoses[0]});
  CHECK(mod == std::vector<std::string>{"GlidingOnWheels", "Scooter", "Skateboard"});
}

TEST_CASE("generate on the example scene") {
  Example ex;
  GenerationConfig cfg;
  auto diffs = generate(ex.scene, ex.ontology, ex.diagnoses, cfg);
  REQUIRE(diffs.size() == 5);
  CHECK(std::is_sorted(diffs.begin(), diffs.end(), [](const auto& a, const auto& b) { return a.context < b.context; }));

  const auto& rolling = by_context(diffs, "c_rolling");
  CHECK(rolling.feasible);
  CHECK(rolling.cost == 3);
  CHECK(rolling.additions == std::vector<Membership>{{"i1", "RollingContainer"}});
  CHECK(rolling.deletions == std::vector<Membership>{{"i2", "Child"}, {"i3", "Child"}});

  const auto& child = by_context(diffs, "c_child");
  CHECK(child.cost == 0);
  CHECK(child.additions.empty());
  CHECK(child.deletions.empty());

  CHECK(by_context(diffs, "c_gliding").cost == 1);
  CHECK(by_context(diffs, "c_sign&smoke").cost == 2);
  CHECK(by_context(diffs, "c_sign&stop").cost == 2);

  auto applied = apply_diff(ex.scene, rolling);
  CHECK(applied.find("i1")->concepts == std::vector<std::string>{"RollingContainer"});
  CHECK(applied.find("i2")->concepts.empty());
  CHECK(applied.find("i3")->concepts.empty());
  CHECK(applied.find("i4")->concepts == std::vector<std::string>{"Car"});
  CHECK(satisfies(close_scene(ex.ontology, applied), ex.diagnoses[2]));
}

TEST_CASE("an unreachable diagnosis is reported infeasible") {
  Example ex;
  GenerationConfig cfg;
  cfg.modifiable = {"Car"};
  auto diffs = generate(ex.scene, ex.ontology, {Diagnosis{"dog", {{true, "Dog"}}}}, cfg);
  REQUIRE(diffs.size() == 1);
  CHECK_FALSE(diffs[0].feasible);
  CHECK(diffs[0].additions.empty());

  // without a spare object, additions need a fresh individual
  kb::Scene full{"full", {{"o1", {"Child"}, {}}}};
  cfg.modifiable = {"Car"};
  Diagnosis car{"car", {{true, "Car"}, {true, "Child"}}};
  CHECK_FALSE(generate(full, ex.ontology, {car}, cfg)[0].feasible);
  cfg.fresh_individuals = 1;
  auto fresh = generate(full, ex.ontology, {car}, cfg);
  REQUIRE(fresh[0].feasible);
  CHECK(fresh[0].additions == std::vector<Membership>{{"f_1", "Car"}});
  auto applied = apply_diff(full, fresh[0]);
  REQUIRE(applied.objects.size() == 2);
  CHECK(applied.objects[1].id == "f_1");
}

TEST_CASE("apply_diff") {
  Example ex;
  CHECK(apply_diff(ex.scene, SceneDiff{}) == ex.scene);
  SceneDiff unknown;
  unknown.additions = {{"i9", "Car"}};
  CHECK_THROWS_AS(apply_diff(ex.scene, unknown), Error);
  SceneDiff nonmember;
  nonmember.deletions = {{"i1", "Child"}};
  CHECK_THROWS_AS(apply_diff(ex.scene, nonmember), Error);

  kb::Scene attrs{"a", {{"o", {"Car"}, {{"x", "3"}}}}};
  SceneDiff swap;
  swap.additions = {{"o", "Truck"}};
  swap.deletions = {{"o", "Car"}};
  auto out = apply_diff(attrs, swap);
  CHECK(out.objects[0].concepts == std::vector<std::string>{"Truck"});
  CHECK(out.objects[0].attributes.at("x") == "3");
}

TEST_CASE("diff files round trip") {
  Example ex;
  auto diffs = generate(ex.scene, ex.ontology, ex.diagnoses, GenerationConfig{});
  CHECK(parse_diffs(render_diffs(diffs)) == diffs);
  CHECK(parse_diffs("[]").empty());
  CHECK_THROWS_AS(parse_diffs("{"), Error);
  CHECK_THROWS_AS(parse_diffs(R"([{"context": 3}])"), Error);
}

TEST_CASE("determinism and strategy agreement on the example") {
  Example ex;
  GenerationConfig cfg;
  auto a = generate(ex.scene, ex.ontology, ex.diagnoses, cfg);
  CHECK(generate(ex.scene, ex.ontology, ex.diagnoses, cfg) == a);
  cfg.workers = 3;
  CHECK(generate(ex.scene, ex.ontology, ex.diagnoses, cfg) == a);

  GenerationConfig general;
  general.translation = ckr2asp::Strategy::General;
  auto g = generate(ex.scene, ex.ontology, ex.diagnoses, general);
  REQUIRE(g.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(g[i].context == a[i].context);
    CHECK(g[i].cost == a[i].cost);
  }
}

TEST_CASE("an external solver reproduces the embedded diffs") {
  Example ex;
  GenerationConfig cfg;
  auto embedded = generate(ex.scene, ex.ontology, ex.diagnoses, cfg);
  cfg.solver = SolverKind::External;
  cfg.solver_command = std::string(MRCKR_ASPSOLVE) + " {file}";
  auto external = generate(ex.scene, ex.ontology, ex.diagnoses, cfg);
  CHECK(external == embedded);

  cfg.solver_command = "false {file}";
  CHECK_THROWS_AS(generate(ex.scene, ex.ontology, ex.diagnoses, cfg), Error);
}

TEST_CASE("a zero time limit yields timed-out diffs") {
  Example ex;
  GenerationConfig cfg;
  cfg.time_limit_seconds = 1e-9;
  auto street = load_scene(testing::data_path("street_scene.json"), &ex.ontology);
  cfg.translation = ckr2asp::Strategy::General;
  auto diffs = generate(street, ex.ontology, {ex.diagnoses[2]}, cfg);
  REQUIRE(diffs.size() == 1);
  CHECK(diffs[0].timed_out);
}

TEST_CASE("realism, danger and minimality on random prototypes") {
  Rng rng(211);
  for (int i = 0; i < 40; ++i) {
    auto inst = testing::random_prototype(rng);
    GenerationConfig cfg;
    cfg.modifiable = inst.modifiable;
    CAPTURE(kb::render_scene(inst.scene));
    auto diffs = generate(inst.scene, inst.ontology, inst.diagnoses, cfg);
    REQUIRE(diffs.size() == inst.diagnoses.size());
    for (const auto& d : inst.diagnoses) {
      const auto& diff = by_context(diffs, d.context());
      CAPTURE(d.name);
      auto best = brute_minimum(inst.scene, inst.ontology, d, inst.modifiable, cfg.costs);
      REQUIRE(diff.feasible == best.has_value());
      if (!diff.feasible) continue;
      CHECK(diff.cost == *best);
      CHECK(diff.cost == static_cast<std::int64_t>(diff.additions.size()) * cfg.costs.add +
                             static_cast<std::int64_t>(diff.deletions.size()) * cfg.costs.del);
      for (const auto& m : diff.additions) {
        CHECK(std::find(diff.deletions.begin(), diff.deletions.end(), m) == diff.deletions.end());
      }
      auto closed = close_scene(inst.ontology, apply_diff(inst.scene, diff));
      CHECK(closed.consistent());
      CHECK(satisfies(closed, d));

      // the same diff comes out when the diagnosis is solved alone
      CHECK(generate(inst.scene, inst.ontology, {d}, cfg) == std::vector<SceneDiff>{diff});
    }
  }
}

TEST_CASE("non-default unit costs scale the diff cost") {
  Example ex;
  GenerationConfig cfg;
  cfg.costs.add = 3;
  cfg.costs.del = 2;
  auto diffs = generate(ex.scene, ex.ontology, {ex.diagnoses[2]}, cfg);
  REQUIRE(diffs.size() == 1);
  CHECK(diffs[0].cost == 3 + 2 * 2);
}
