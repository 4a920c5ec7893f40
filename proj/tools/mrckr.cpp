// mrckr: scene generation, oracle checks, program export, measure evaluation
// and the scalability benchmark.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/program.hpp"
#include "mrckr/bench.hpp"
#include "mrckr/ckr2asp.hpp"
#include "mrckr/error.hpp"
#include "mrckr/kb.hpp"
#include "mrckr/measures.hpp"
#include "mrckr/oracle.hpp"
#include "mrckr/scenegen.hpp"

namespace {

using namespace mrckr;

constexpr int kInfeasible = 2;
constexpr int kTimeout = 3;
constexpr int kBound = 4;
constexpr int kUsage = 64;
constexpr int kFile = 66;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw FileError("cannot write " + path);
}

// Prefixes errors with the file they came from.
template <typename F>
auto load(const std::string& path, F&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw FileError(path + ":" + e.what());
  }
}

struct Inputs {
  std::string scene, ontology, diagnoses, costs, translation = "specialized", solver = "embedded", solver_cmd, out;
  std::size_t fresh = 0;
  double time_limit = 120;
  bool all_optima = false;
  std::size_t workers = 1;
};

void add_inputs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--scene", in.scene, "scene JSON")->required();
  cmd->add_option("--ontology", in.ontology, "ontology file")->required();
  cmd->add_option("--diagnoses", in.diagnoses, "diagnosis file")->required();
  cmd->add_option("--costs", in.costs, "cost configuration JSON")->required();
  cmd->add_option("--translation", in.translation)->check(CLI::IsMember({"specialized", "general"}));
  cmd->add_option("--solver", in.solver)->check(CLI::IsMember({"embedded", "external"}));
  cmd->add_option("--solver-cmd", in.solver_cmd, "external solver command; {file} is the program path");
  cmd->add_option("--fresh", in.fresh, "fresh individuals available for additions");
  cmd->add_option("--time-limit", in.time_limit, "seconds per diagnosis")->check(CLI::PositiveNumber);
  cmd->add_flag("--all-optima", in.all_optima, "emit every optimal diff");
  cmd->add_option("--workers", in.workers, "concurrent diagnosis solves")->check(CLI::PositiveNumber);
  cmd->add_option("--out", in.out, "output file")->required();
}

struct Loaded {
  kb::Ontology ontology;
  kb::Scene scene;
  std::vector<ckr2asp::Diagnosis> diagnoses;
  scenegen::GenerationConfig cfg;
};

Loaded load_inputs(const Inputs& in) {
  Loaded l;
  l.ontology = load(in.ontology, [](const std::string& t) { return kb::parse_ontology(t); });
  l.scene = load(in.scene, [&](const std::string& t) { return kb::parse_scene(t, &l.ontology.signature); });
  l.diagnoses = load(in.diagnoses, [](const std::string& t) { return ckr2asp::parse_diagnoses(t); });
  l.cfg.costs = load(in.costs, [](const std::string& t) { return measures::parse_cost_config(t); });
  for (const auto& w : l.cfg.costs.warnings()) std::cerr << "warning: " << w << "\n";
  l.cfg.translation = ckr2asp::strategy_by_name(in.translation);
  l.cfg.solver = in.solver == "external" ? scenegen::SolverKind::External : scenegen::SolverKind::Embedded;
  l.cfg.solver_command = in.solver_cmd;
  l.cfg.fresh_individuals = in.fresh;
  l.cfg.time_limit_seconds = in.time_limit;
  l.cfg.all_optima = in.all_optima;
  l.cfg.workers = in.workers;
  return l;
}

int cmd_generate(const Inputs& in) {
  if (in.solver == "external" && in.solver_cmd.empty()) throw CLI::ValidationError("--solver external needs --solver-cmd");
  Loaded l = load_inputs(in);
  auto diffs = scenegen::generate(l.scene, l.ontology, l.diagnoses, l.cfg);
  write_file(in.out, scenegen::render_diffs(diffs));
  bool timed_out = false, infeasible = false;
  for (const auto& d : diffs) {
    if (d.timed_out) {
      timed_out = true;
      std::cerr << d.context << ": time limit exceeded\n";
    } else if (!d.feasible) {
      infeasible = true;
      std::cerr << d.context << ": infeasible\n";
    } else {
      std::cout << d.context << ": cost " << d.cost << ", " << d.additions.size() << " additions, "
                << d.deletions.size() << " deletions\n";
    }
  }
  if (timed_out) return kTimeout;
  return infeasible ? kInfeasible : 0;
}

int cmd_export(const Inputs& in) {
  Loaded l = load_inputs(in);
  auto compiled = scenegen::compile(l.scene, l.ontology, l.diagnoses, l.cfg);
  write_file(in.out, asp::to_aspcore2(compiled.program));
  return 0;
}

int cmd_oracle(const std::string& path, std::size_t max_assumptions) {
  kb::SCKR sckr = load(path, [](const std::string& t) { return kb::parse_sckr(t); });
  auto report = kb::validate(sckr);
  if (!report.ok()) {
    std::string msg;
    for (const auto& e : report.errors) msg += "\n  " + e;
    throw FileError(path + ": invalid repository:" + msg);
  }
  auto models = oracle::enumerate_ckr_models(sckr, max_assumptions);
  for (std::size_t i = 0; i < models.size(); ++i) {
    std::cout << "model " << i + 1 << ":\n" << oracle::render(models[i]);
  }
  std::cout << "models: " << models.size() << "\n";
  return 0;
}

int cmd_eval_measure(const std::string& program_path, const std::string& formula_path, const std::string& semiring,
                     const std::vector<std::string>& queries, std::size_t max_models) {
  measures::Measure m{{}, {}, measures::semiring_by_name(semiring)};
  m.program = load(program_path, [](const std::string& t) { return asp::parse_program(t); });
  m.formula = load(formula_path, [&](const std::string& t) { return measures::parse_formula(t, m.semiring); });
  measures::QueryOptions opts{max_models};
  for (const auto& q : queries) {
    asp::Atom a = asp::parse_atom(q);
    std::cout << "query " << asp::render(a) << ": " << measures::render(measures::atomic_query(m, a, opts)) << "\n";
  }
  std::cout << "overall: " << measures::render(measures::overall_weight(m, opts)) << "\n";
  return 0;
}

struct BenchArgs {
  std::string scene, ontology, diagnoses, costs, csv;
  std::size_t max_objects = 20, max_contexts = 5, workers = 1;
  double time_limit = 120;
  std::optional<std::uint64_t> seed;
};

int cmd_bench(const BenchArgs& a) {
  kb::Ontology ontology = load(a.ontology, [](const std::string& t) { return kb::parse_ontology(t); });
  kb::Scene scene = load(a.scene, [&](const std::string& t) { return kb::parse_scene(t, &ontology.signature); });
  auto diagnoses = load(a.diagnoses, [](const std::string& t) { return ckr2asp::parse_diagnoses(t); });
  bench::BenchConfig cfg;
  if (!a.costs.empty()) cfg.costs = load(a.costs, [](const std::string& t) { return measures::parse_cost_config(t); });
  cfg.max_objects = a.max_objects;
  cfg.max_contexts = a.max_contexts;
  cfg.time_limit_seconds = a.time_limit;
  cfg.seed = a.seed;
  cfg.workers = a.workers;
  if (a.max_objects > scene.objects.size()) {
    throw FileError(a.scene + ": scene has only " + std::to_string(scene.objects.size()) + " objects");
  }
  if (a.max_contexts > diagnoses.size()) {
    throw FileError(a.diagnoses + ": only " + std::to_string(diagnoses.size()) + " diagnoses");
  }
  std::ofstream out(a.csv);
  if (!out) throw FileError("cannot write " + a.csv);
  out << bench::kCsvHeader << "\n" << std::flush;
  bench::run_bench(scene, ontology, diagnoses, cfg, [&](const bench::BenchRow& r) {
    out << bench::render_row(r) << "\n" << std::flush;
    std::cerr << bench::render_row(r) << "\n";
  });
  if (!out) throw FileError("cannot write " + a.csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-based scene generation with multi-relational contextual repositories"};
  app.require_subcommand(1);

  Inputs gen_in, exp_in;
  auto* generate = app.add_subcommand("generate", "generate one scene diff per diagnosis");
  add_inputs(generate, gen_in);
  auto* exporter = app.add_subcommand("export", "write the compiled program in ASP-Core-2 syntax");
  add_inputs(exporter, exp_in);

  std::string sckr_path;
  std::size_t max_assumptions = 20;
  auto* oracle_cmd = app.add_subcommand("oracle", "enumerate the CKR models of a small repository");
  oracle_cmd->add_option("--sckr", sckr_path, "repository file")->required();
  oracle_cmd->add_option("--max-assumptions", max_assumptions, "largest number of eligible clashing assumptions");

  std::string program_path, formula_path, semiring;
  std::vector<std::string> queries;
  std::size_t max_models = 1'000'000;
  auto* measure = app.add_subcommand("eval-measure", "evaluate an algebraic measure");
  measure->add_option("--program", program_path)->required();
  measure->add_option("--formula", formula_path)->required();
  measure->add_option("--semiring", semiring)->required()->check(CLI::IsMember({"boolean", "minplus", "nat", "int"}));
  measure->add_option("--query", queries, "ground atom for an atomic query (repeatable)");
  measure->add_option("--max-models", max_models, "enumeration bound per component");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "time both translations over objects x contexts");
  bench_cmd->add_option("--scene", bench_args.scene)->required();
  bench_cmd->add_option("--ontology", bench_args.ontology)->required();
  bench_cmd->add_option("--diagnoses", bench_args.diagnoses)->required();
  bench_cmd->add_option("--costs", bench_args.costs);
  bench_cmd->add_option("--max-objects", bench_args.max_objects)->required()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-contexts", bench_args.max_contexts)->required()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--time-limit", bench_args.time_limit)->required()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--csv", bench_args.csv)->required();
  bench_cmd->add_option("--seed", bench_args.seed);
  bench_cmd->add_option("--workers", bench_args.workers)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return cmd_generate(gen_in);
    if (*exporter) return cmd_export(exp_in);
    if (*oracle_cmd) return cmd_oracle(sckr_path, max_assumptions);
    if (*measure) return cmd_eval_measure(program_path, formula_path, semiring, queries, max_models);
    if (*bench_cmd) return cmd_bench(bench_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const Timeout& e) {
    std::cerr << "time limit exceeded: " << e.what() << "\n";
    return kTimeout;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFile;
  }
  return kUsage;
}
