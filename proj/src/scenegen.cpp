#include "mrckr/scenegen.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <deque>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mrckr/asp/external.hpp"
#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/solver.hpp"
#include "mrckr/error.hpp"

namespace mrckr::scenegen {

using ckr2asp::Diagnosis;
using kb::ConceptRef;
using kb::Subsumption;

namespace {

// Largest optimum family expanded for the preference filter of the General translation.
constexpr double kPreferenceBound = 4096;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Subsumption sub(std::vector<std::string> lhs, std::optional<std::string> rhs) {
  Subsumption s;
  for (auto& c : lhs) s.lhs.push_back(ConceptRef::atomic(std::move(c)));
  s.rhs = rhs ? ConceptRef::atomic(*rhs) : ConceptRef::bottom();
  return s;
}

}  // namespace

kb::Scene load_scene(const std::string& path, const kb::Ontology* ontology) {
  return kb::parse_scene(read_file(path), ontology ? &ontology->signature : nullptr);
}

std::string fresh_name(std::size_t k) { return "f_" + std::to_string(k); }

std::vector<std::string> default_modifiable(const kb::Ontology& ontology, const std::vector<Diagnosis>& diagnoses) {
  auto norm = kb::normalize_all(ontology.axioms);
  std::set<std::string> reach;
  std::deque<std::string> queue;
  for (const auto& d : diagnoses) {
    for (const auto& r : d.requirements) {
      if (reach.insert(r.cls).second) queue.push_back(r.cls);
    }
  }
  while (!queue.empty()) {
    std::string c = queue.front();
    queue.pop_front();
    for (const auto& s : norm.strict) {
      if (!s.rhs.is_atomic() || s.rhs.cls != c) continue;
      for (const auto& l : s.lhs) {
        if (l.is_atomic() && reach.insert(l.cls).second) queue.push_back(l.cls);
      }
    }
  }
  return {reach.begin(), reach.end()};
}

std::vector<std::string> resolve_modifiable(const kb::Ontology& ontology, const std::vector<Diagnosis>& diagnoses,
                                            const GenerationConfig& cfg) {
  for (const auto& d : diagnoses) {
    for (const auto& r : d.requirements) {
      if (!ontology.signature.concepts.count(r.cls)) {
        throw Error("diagnosis " + d.name + " uses concept " + r.cls + " which the ontology does not declare");
      }
    }
  }
  if (cfg.modifiable.empty()) return default_modifiable(ontology, diagnoses);
  std::set<std::string> out;
  for (const auto& c : cfg.modifiable) {
    if (!ontology.signature.concepts.count(c)) throw Error("modifiable concept " + c + " is not declared");
    if (ckr2asp::is_auxiliary_concept(c)) throw Error("modifiable concept " + c + " uses a reserved prefix");
    out.insert(c);
  }
  return {out.begin(), out.end()};
}

kb::SCKR build_sckr(const kb::Scene& scene, const kb::Ontology& ontology, const std::vector<Diagnosis>& diagnoses,
                    const GenerationConfig& cfg) {
  using namespace ckr2asp;
  const auto modifiable = resolve_modifiable(ontology, diagnoses, cfg);
  const std::set<std::string> mod(modifiable.begin(), modifiable.end());
  auto norm = kb::normalize_all(ontology.axioms);
  if (!norm.defeasible.empty()) throw Error("the scene pipeline does not accept defaults in the base ontology");

  kb::SCKR s;
  s.signature.concepts = ontology.signature.concepts;
  s.signature.concepts.insert(kNamed);
  s.signature.individuals = ontology.signature.individuals;
  s.signature.relations = {kRelation};
  s.structure.contexts = {kExchange, kBase};
  kb::Relation rel{kRelation, {{kBase, kExchange}}};
  for (const auto& d : diagnoses) {
    const std::string c = d.context();
    if (std::find(s.structure.contexts.begin(), s.structure.contexts.end(), c) != s.structure.contexts.end()) {
      throw Error("duplicate diagnosis context " + c);
    }
    s.structure.contexts.push_back(c);
    rel.edges.emplace_back(c, kBase);
  }
  s.structure.relations.push_back(std::move(rel));
  for (const auto& c : s.structure.contexts) {
    s.signature.contexts.insert(c);
    s.kbs[c];
  }

  auto& exch = s.kbs[kExchange];
  auto& base = s.kbs[kBase];
  for (const auto& c : modifiable) {
    for (const auto& aux : {add_concept(c), noadd_concept(c), del_concept(c), nodel_concept(c)}) {
      s.signature.concepts.insert(aux);
      exch.defeasible.push_back({kRelation, sub({kNamed}, aux)});
    }
    s.signature.concepts.insert(orig_concept(c));
    // (ORIG_C ⊓ NODEL_C) ⊔ ADD_C ⊑ C, split into its two Horn halves
    exch.strict.push_back(sub({orig_concept(c), nodel_concept(c)}, c));
    exch.strict.push_back(sub({add_concept(c)}, c));
    base.strict.push_back(sub({add_concept(c), noadd_concept(c)}, std::nullopt));
    base.strict.push_back(sub({del_concept(c), nodel_concept(c)}, std::nullopt));
  }
  base.strict.insert(base.strict.end(), norm.strict.begin(), norm.strict.end());
  base.assertions.insert(base.assertions.end(), ontology.assertions.begin(), ontology.assertions.end());
  for (const auto& o : scene.objects) {
    s.signature.individuals.insert(o.id);
    base.assertions.push_back({kNamed, o.id});
    for (const auto& c : o.concepts) base.assertions.push_back({mod.count(c) ? orig_concept(c) : c, o.id});
  }
  for (std::size_t k = 1; k <= cfg.fresh_individuals; ++k) {
    const std::string f = fresh_name(k);
    if (scene.find(f)) throw Error("fresh individual " + f + " collides with a scene object");
    s.signature.individuals.insert(f);
    base.assertions.push_back({kNamed, f});
  }
  return s;
}

Compiled compile(const kb::Scene& scene, const kb::Ontology& ontology, const std::vector<Diagnosis>& diagnoses,
                 const GenerationConfig& cfg) {
  Compiled out;
  out.modifiable = resolve_modifiable(ontology, diagnoses, cfg);
  out.sckr = build_sckr(scene, ontology, diagnoses, cfg);
  out.translation = ckr2asp::translate(out.sckr, cfg.translation, out.modifiable);
  out.program = out.translation.program;
  std::vector<std::string> weighted{kBase};
  for (const auto& d : diagnoses) {
    auto rules = ckr2asp::compile_diagnosis(d, d.context());
    out.program.rules.insert(out.program.rules.end(), rules.begin(), rules.end());
    weighted.push_back(d.context());
  }
  out.program.weaks = ckr2asp::compile_similarity(cfg.costs, out.modifiable, weighted);
  return out;
}

namespace {

std::vector<asp::AtomSet> preferred(const Compiled& c, std::vector<asp::AtomSet> models) {
  std::vector<oracle::CASInterpretation> decoded;
  for (const auto& m : models) decoded.push_back(ckr2asp::decode(c.sckr, c.translation, m));
  std::vector<const oracle::Chi*> chis;
  for (const auto& d : decoded) chis.push_back(&d.chi);
  std::vector<asp::AtomSet> out;
  for (std::size_t i : oracle::mp_minimal(c.sckr, chis)) out.push_back(std::move(models[i]));
  asp::canonical_sort(out);
  return out;
}

}  // namespace

ContextSolution solve_diagnosis(const kb::Scene& scene, const kb::Ontology& ontology, const Diagnosis& d,
                                const GenerationConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(
                                           std::chrono::duration<double>(cfg.time_limit_seconds));
  ContextSolution sol;
  sol.context = d.context();
  sol.compiled = compile(scene, ontology, {d}, cfg);
  const bool general = cfg.translation == ckr2asp::Strategy::General;

  if (cfg.solver == SolverKind::External) {
    auto best = asp::cheapest(asp::run_external(cfg.solver_command, sol.compiled.program));
    if (best.empty()) return sol;
    sol.feasible = true;
    sol.cost = best.front().cost;
    for (auto& m : best) sol.optima.push_back(std::move(m.atoms));
    if (general) sol.optima = preferred(sol.compiled, std::move(sol.optima));
    if (!cfg.all_optima) sol.optima.resize(1);
    return sol;
  }

  try {
    asp::GroundProgram gp = asp::ground(sol.compiled.program);
    asp::Optimum opt = asp::optimize_family(gp, asp::OptimizeMode::AllOptima, deadline);
    if (!opt.satisfiable) return sol;
    sol.feasible = true;
    sol.cost = opt.cost;
    if (cfg.all_optima || (general && opt.family.count() <= kPreferenceBound)) {
      for (const auto& ids : opt.family.expand()) sol.optima.push_back(gp.to_atoms(ids));
      if (general) {
        sol.optima = preferred(sol.compiled, std::move(sol.optima));
      } else {
        asp::canonical_sort(sol.optima);
      }
      if (!cfg.all_optima) sol.optima.resize(1);
    } else {
      sol.optima.push_back(gp.to_atoms(opt.family.canonical_first(gp)));
    }
  } catch (const Timeout&) {
    sol.feasible = false;
    sol.timed_out = true;
    sol.optima.clear();
  }
  return sol;
}

SceneDiff extract_diff(const asp::AtomSet& answer_set, const std::string& context,
                       const std::vector<std::string>& modifiable, const measures::CostConfig& costs) {
  std::map<std::string, std::pair<std::string, bool>> kinds;  // aux concept -> (C, addition?)
  for (const auto& c : modifiable) {
    kinds[ckr2asp::add_concept(c)] = {c, true};
    kinds[ckr2asp::del_concept(c)] = {c, false};
  }
  SceneDiff diff;
  diff.context = context;
  for (const auto& a : answer_set) {
    auto e = ckr2asp::decode_instd(a);
    if (!e || e->context != context) continue;
    auto it = kinds.find(e->cls);
    if (it == kinds.end()) continue;
    Membership m{e->individual, it->second.first};
    (it->second.second ? diff.additions : diff.deletions).push_back(std::move(m));
  }
  std::sort(diff.additions.begin(), diff.additions.end());
  std::sort(diff.deletions.begin(), diff.deletions.end());
  diff.cost = static_cast<std::int64_t>(diff.additions.size()) * costs.add +
              static_cast<std::int64_t>(diff.deletions.size()) * costs.del;
  return diff;
}

std::vector<SceneDiff> generate(const kb::Scene& scene, const kb::Ontology& ontology,
                                const std::vector<Diagnosis>& diagnoses, const GenerationConfig& cfg) {
  std::vector<std::vector<SceneDiff>> results(diagnoses.size());
  std::vector<std::exception_ptr> errors(diagnoses.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < diagnoses.size(); i = next++) {
      try {
        const auto& d = diagnoses[i];
        ContextSolution sol = solve_diagnosis(scene, ontology, d, cfg);
        if (!sol.feasible) {
          SceneDiff diff;
          diff.context = sol.context;
          diff.feasible = false;
          diff.timed_out = sol.timed_out;
          results[i].push_back(std::move(diff));
          continue;
        }
        for (const auto& m : sol.optima) {
          results[i].push_back(extract_diff(m, sol.context, sol.compiled.modifiable, cfg.costs));
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, std::min(cfg.workers, diagnoses.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<SceneDiff> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  std::stable_sort(out.begin(), out.end(), [](const SceneDiff& a, const SceneDiff& b) { return a.context < b.context; });
  return out;
}

kb::Scene apply_diff(const kb::Scene& scene, const SceneDiff& diff) {
  kb::Scene out = scene;
  auto object = [&](const std::string& id, bool create) -> kb::SceneObject& {
    for (auto& o : out.objects) {
      if (o.id == id) return o;
    }
    bool fresh = id.size() > 2 && id.compare(0, 2, "f_") == 0 &&
                 std::all_of(id.begin() + 2, id.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!create || !fresh) throw Error("diff refers to unknown individual " + id);
    out.objects.push_back({id, {}, {}});
    return out.objects.back();
  };
  for (const auto& m : diff.deletions) {
    auto& o = object(m.individual, false);
    auto it = std::find(o.concepts.begin(), o.concepts.end(), m.cls);
    if (it == o.concepts.end()) throw Error("cannot delete " + m.individual + " from " + m.cls + ": not a member");
    o.concepts.erase(it);
  }
  for (const auto& m : diff.additions) {
    auto& o = object(m.individual, true);
    if (std::find(o.concepts.begin(), o.concepts.end(), m.cls) == o.concepts.end()) o.concepts.push_back(m.cls);
  }
  return out;
}

std::string render_diffs(const std::vector<SceneDiff>& diffs) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  auto list = [](const std::vector<Membership>& ms) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& m : ms) a.push_back({{"individual", m.individual}, {"class", m.cls}});
    return a;
  };
  for (const auto& d : diffs) {
    nlohmann::ordered_json j;
    j["context"] = d.context;
    j["cost"] = d.cost;
    j["feasible"] = d.feasible;
    j["timed_out"] = d.timed_out;
    j["additions"] = list(d.additions);
    j["deletions"] = list(d.deletions);
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::vector<SceneDiff> parse_diffs(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw Error("diff file must hold a JSON list");
    std::vector<SceneDiff> out;
    for (const auto& e : j) {
      SceneDiff d;
      d.context = e.at("context").get<std::string>();
      d.cost = e.at("cost").get<std::int64_t>();
      d.feasible = e.at("feasible").get<bool>();
      d.timed_out = e.value("timed_out", false);
      for (const auto& m : e.at("additions")) {
        d.additions.push_back({m.at("individual").get<std::string>(), m.at("class").get<std::string>()});
      }
      for (const auto& m : e.at("deletions")) {
        d.deletions.push_back({m.at("individual").get<std::string>(), m.at("class").get<std::string>()});
      }
      out.push_back(std::move(d));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("diff file: ") + e.what());
  }
}

}  // namespace mrckr::scenegen
