#include <doctest.h>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/solver.hpp"
#include "mrckr/ckr2asp.hpp"
#include "mrckr/error.hpp"
#include "mrckr/scenegen.hpp"
#include "support.hpp"

using namespace mrckr;
using namespace mrckr::ckr2asp;
using mrckr::testing::Rng;

namespace {

constexpr const char* kOneConcept = R"(
relation sim.
context c_exch {
  def[sim] sub Named ADD_Car.
  def[sim] sub Named NOADD_Car.
  def[sim] sub Named DEL_Car.
  def[sim] sub Named NODEL_Car.
  sub ORIG_Car & NODEL_Car Car.
  sub ADD_Car Car.
}
context c3 {
  disjoint ADD_Car NOADD_Car.
  disjoint DEL_Car NODEL_Car.
  inst i1 Named.
}
edge sim c3 c_exch.
)";

bool has_line(const asp::Program& p, const std::string& line) {
  std::string text = asp::to_aspcore2(p);
  return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

std::vector<oracle::CASInterpretation> decoded_models(const kb::SCKR& s, const Translation& t) {
  std::vector<oracle::CASInterpretation> out;
  for (const auto& m : asp::solve(asp::ground(t.program))) out.push_back(decode(s, t, m));
  return out;
}

}  // namespace

TEST_CASE("specialized translation emits the either/or guess") {
  auto s = kb::parse_sckr(kOneConcept);
  auto t = translate_specialized(s, {"Car"});
  CHECK(t.strategy == Strategy::Specialized);
  CHECK(t.overridable.empty());
  CHECK(has_line(t.program,
                 R"(instd(X,"ADD_Car",c3,"main") :- instd(X,"Named",c3,"main"), not instd(X,"NOADD_Car",c3,"main").)"));
  CHECK(has_line(t.program,
                 R"(instd(X,"NOADD_Car",c3,"main") :- instd(X,"Named",c3,"main"), not instd(X,"ADD_Car",c3,"main").)"));
  CHECK(has_line(t.program, R"(:- instd(X,"ADD_Car",c3,"main"), instd(X,"NOADD_Car",c3,"main").)"));
  // one object, one concept, one guess context: 2^2 answer sets
  auto models = asp::solve(asp::ground(t.program));
  CHECK(models.size() == 4);
  auto general = decoded_models(s, translate_general(s));
  std::set<testing::Restricted> a, b;
  for (const auto& m : models) a.insert(testing::restrict_to_ontology(decode(s, t, m).model));
  for (const auto& m : filter_preferred(s, general)) b.insert(testing::restrict_to_ontology(m.model));
  CHECK(a == b);
}

TEST_CASE("specialized translation rejects other shapes") {
  auto s = kb::parse_sckr(kOneConcept);
  CHECK_THROWS_AS(translate_specialized(s, {"Truck"}), Error);
  auto missing = s;
  missing.kbs["c_exch"].defeasible.pop_back();
  CHECK_THROWS_AS(translate_specialized(missing, {"Car"}), Error);
  auto no_disjoint = s;
  no_disjoint.kbs["c3"].strict.erase(no_disjoint.kbs["c3"].strict.begin());
  CHECK_THROWS_AS(translate_specialized(no_disjoint, {"Car"}), Error);
  auto extra = s;
  extra.kbs["c_exch"].defeasible.push_back({"sim", {{kb::ConceptRef::atomic("Car")}, kb::ConceptRef::atomic("Truck")}});
  CHECK_THROWS_AS(translate_specialized(extra, {"Car"}), Error);
}

TEST_CASE("strict axioms propagate to more specific contexts") {
  auto s = kb::parse_sckr(R"(
relation sim.
context base { sub Child Human. inst i2 Child. }
context c { }
edge sim c base.
)");
  auto t = translate_general(s);
  CHECK(has_line(t.program, R"(instd(X,"Human",c,"main") :- instd(X,"Child",c,"main").)"));
  CHECK(has_line(t.program, R"(instd(X,"Human",base,"main") :- instd(X,"Child",base,"main").)"));
  auto models = asp::solve(asp::ground(t.program));
  REQUIRE(models.size() == 1);
  CHECK(models[0].count(instd(asp::Term::constant("i2"), "Human", "c")));
}

TEST_CASE("general translation of the Dog repository") {
  auto s = kb::parse_sckr(testing::read_text(testing::data_path("dog.sckr")));
  auto t = translate_general(s);
  REQUIRE(t.overridable.size() == 1);
  auto models = asp::solve(asp::ground(t.program));
  REQUIRE(models.size() == 1);
  const auto& m = models[0];
  auto d = asp::Term::constant("d");
  CHECK(m.count(asp::Atom{"ovr", {asp::Term::integer(0), d, asp::Term::constant("c2")}}));
  CHECK(m.count(instd(d, "Dog", "c2")));
  CHECK(m.count(instd(d, "DangerousAnimal", "c2")));
  auto cas = decode(s, t, m);
  auto oracle_models = oracle::enumerate_ckr_models(s);
  REQUIRE(oracle_models.size() == 1);
  CHECK(cas == oracle_models[0]);
}

TEST_CASE("general translation of a default pair") {
  auto s = kb::parse_sckr(R"(
relation sim.
context ex {
  def[sim] sub Named ADD_Car.
  def[sim] sub Named NOADD_Car.
}
context base {
  disjoint ADD_Car NOADD_Car.
  inst o Named.
}
edge sim base ex.
)");
  auto models = decoded_models(s, translate_general(s));
  CHECK(models.size() == 2);
  CHECK(testing::as_set(filter_preferred(s, models)) == testing::as_set(oracle::enumerate_ckr_models(s)));
}

TEST_CASE("a default without any clashing partner cannot be translated") {
  auto s = kb::parse_sckr(R"(
relation r.
context top { def[r] sub A B. }
context low { inst x A. }
edge r low top.
)");
  CHECK_THROWS_AS(translate_general(s), Error);
}

TEST_CASE("diagnosis constraints") {
  Diagnosis rolling{"rolling", {{true, "RollingContainer"}, {false, "Human"}}};
  std::vector<std::string> lines;
  for (const auto& r : compile_diagnosis(rolling, "c3")) lines.push_back(asp::render(r));
  CHECK(lines == std::vector<std::string>{
                     R"(found_rolling_1 :- instd(X,"RollingContainer",c3,"main").)",
                     ":- not found_rolling_1.",
                     R"(found_rolling_2 :- instd(X,"Human",c3,"main").)",
                     ":- found_rolling_2.",
                 });
  auto gliding = compile_diagnosis({"gliding", {{true, "GlidingOnWheels"}}}, "c_gliding");
  REQUIRE(gliding.size() == 2);
  CHECK(asp::render(gliding[1]) == ":- not found_gliding_1.");
  CHECK(found_prefix("sign&smoke") == "sign_smoke");
  CHECK(found_prefix("Sign&Stop") == "sign_stop");
}

TEST_CASE("diagnosis file format") {
  auto ds = parse_diagnoses(testing::read_text(testing::data_path("diagnoses.dx")));
  REQUIRE(ds.size() == 5);
  CHECK(ds[2].name == "rolling");
  CHECK(ds[2].requirements == std::vector<Requirement>{{true, "RollingContainer"}, {false, "Human"}});
  CHECK(ds[3].context() == "c_sign&smoke");
  for (const auto& d : ds) CHECK(parse_diagnoses(render(d)) == std::vector<Diagnosis>{d});
  CHECK_THROWS_AS(parse_diagnoses("diagnosis x { }"), Error);
  CHECK_THROWS_AS(parse_diagnoses("diagnosis x { some A; } diagnosis x { some B; }"), Error);
  CHECK_THROWS_AS(parse_diagnoses("diagnosis x { maybe A; }"), ParseError);
  CHECK(parse_diagnoses("% nothing\n").empty());
}

TEST_CASE("similarity weak constraints") {
  auto weaks = compile_similarity(measures::CostConfig{}, {"Child"}, {});
  REQUIRE(weaks.size() == 2);
  std::set<std::string> rendered{asp::render(weaks[0]), asp::render(weaks[1])};
  CHECK(rendered.count(R"(:~ instd(X,"DEL_Child",Context,"main"). [1@0,X,"DEL_Child",Context])"));
  CHECK(rendered.count(R"(:~ instd(X,"ADD_Child",Context,"main"). [1@0,X,"ADD_Child",Context])"));
  CHECK(compile_similarity(measures::CostConfig{}, {}, {}).empty());
  measures::CostConfig c;
  c.del = 4;
  auto two = compile_similarity(c, {"Child", "Car"}, {"c_base", "c_x"});
  CHECK(two.size() == 8);
  for (const auto& w : two) {
    CHECK(asp::safety_violation(w) == std::nullopt);
    bool del = asp::render(w).find("DEL_") != std::string::npos;
    CHECK(w.weight == (del ? 4 : 1));
  }
}

TEST_CASE("preference filter") {
  auto chain = kb::parse_sckr(R"(
relation r.
context t {
  def[r] sub X P.
  disjoint P Q.
}
context m {
  def[r] sub X Q.
}
context c { inst e X. }
edge r c m.
edge r m t.
)");
  auto models = decoded_models(chain, translate_general(chain));
  REQUIRE(models.size() == 2);
  auto kept = filter_preferred(chain, models);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].chi.begin()->axiom.rhs.cls == "P");
  CHECK(filter_preferred(chain, {models[1]}).size() == 1);
  CHECK(filter_preferred(chain, {models[0], models[0]}).size() == 2);
}

TEST_CASE("decoded General models match the oracle on random repositories") {
  Rng rng(101);
  for (int i = 0; i < 40; ++i) {
    kb::SCKR s = testing::random_sckr(rng);
    CAPTURE(kb::render(s));
    auto t = translate_general(s);
    auto models = decoded_models(s, t);
    for (const auto& m : models) {
      CHECK(oracle::check_cas_model(s, m));
      CHECK(m.model.consistent());
      // no ⊥-axiom in force is violated
      for (const auto& ctx : s.structure.contexts) {
        for (const auto& ax : oracle::applicable_strict(s, ctx)) {
          if (!kb::is_binary_disjointness(ax)) continue;
          for (const auto& ind : s.signature.individuals) {
            CHECK_FALSE((m.model.holds(ctx, ax.lhs[0].cls, ind) && m.model.holds(ctx, ax.lhs[1].cls, ind)));
          }
        }
      }
    }
    CHECK(testing::as_set(filter_preferred(s, models)) == testing::as_set(oracle::enumerate_ckr_models(s)));
  }
}

TEST_CASE("Specialized and General agree on small prototype repositories") {
  Rng rng(103);
  int branching = 0;
  for (int i = 0; i < 25; ++i) {
    auto inst = testing::random_prototype(rng);
    inst.scene.objects.resize(std::min<std::size_t>(inst.scene.objects.size(), 2));
    inst.modifiable.resize(1);
    inst.diagnoses.resize(1);
    scenegen::GenerationConfig cfg;
    cfg.modifiable = inst.modifiable;
    auto s = scenegen::build_sckr(inst.scene, inst.ontology, inst.diagnoses, cfg);
    CHECK(kb::validate(s).ok());
    auto special = translate_specialized(s, inst.modifiable);
    auto gen = translate_general(s);
    std::set<testing::Restricted> a, b;
    for (const auto& m : asp::solve(asp::ground(special.program))) {
      auto d = decode(s, special, m);
      CHECK(d.model.consistent());
      a.insert(testing::restrict_to_ontology(d.model));
    }
    for (const auto& m : filter_preferred(s, decoded_models(s, gen))) b.insert(testing::restrict_to_ontology(m.model));
    CHECK(a == b);
    if (a.size() > 1) ++branching;
  }
  // a diagnosis may pin a single model, but most instances should branch
  CHECK(branching >= 12);
}
