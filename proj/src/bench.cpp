#include "mrckr/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

#include "mrckr/asp/ground.hpp"
#include "mrckr/asp/solver.hpp"
#include "mrckr/error.hpp"
#include "mrckr/scenegen.hpp"

namespace mrckr::bench {

kb::Scene subsample(const kb::Scene& scene, std::size_t n, std::optional<std::uint64_t> seed) {
  if (n > scene.objects.size()) {
    throw Error("scene has " + std::to_string(scene.objects.size()) + " objects, " + std::to_string(n) + " requested");
  }
  std::vector<std::size_t> keep(scene.objects.size());
  std::iota(keep.begin(), keep.end(), 0);
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(keep.begin(), keep.end(), rng);
  }
  keep.resize(n);
  std::sort(keep.begin(), keep.end());
  kb::Scene out{scene.id, {}};
  for (std::size_t i : keep) out.objects.push_back(scene.objects[i]);
  return out;
}

BenchRow run_cell(const kb::Scene& scene, const kb::Ontology& ontology, const std::vector<ckr2asp::Diagnosis>& diagnoses,
                  ckr2asp::Strategy translation, const BenchConfig& cfg) {
  using clock = std::chrono::steady_clock;
  scenegen::GenerationConfig g;
  g.modifiable = cfg.modifiable;
  g.costs = cfg.costs;
  g.translation = translation;
  auto compiled = scenegen::compile(scene, ontology, diagnoses, g);

  BenchRow row;
  row.translation = translation;
  row.objects = scene.objects.size();
  row.contexts = diagnoses.size();
  const auto start = clock::now();
  const auto deadline = start + std::chrono::duration_cast<clock::duration>(
                                    std::chrono::duration<double>(cfg.time_limit_seconds));
  asp::GroundProgram gp = asp::ground(compiled.program);
  row.ground_atoms = gp.atom_count();
  row.ground_rules = gp.rule_count();
  try {
    auto opt = asp::optimize_family(gp, asp::OptimizeMode::FirstOptimum, deadline);
    row.solve_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
    if (opt.satisfiable) row.optimal_cost = opt.cost;
  } catch (const Timeout&) {
    row.timed_out = true;
  }
  if (row.timed_out || row.solve_ms > cfg.time_limit_seconds * 1000) {
    row.timed_out = true;
    row.optimal_cost.reset();
    row.solve_ms = cfg.time_limit_seconds * 1000;
  }
  return row;
}

std::vector<BenchRow> run_bench(const kb::Scene& scene, const kb::Ontology& ontology,
                                const std::vector<ckr2asp::Diagnosis>& diagnoses, const BenchConfig& cfg,
                                const std::function<void(const BenchRow&)>& progress) {
  if (cfg.max_contexts > diagnoses.size()) {
    throw Error(std::to_string(diagnoses.size()) + " diagnoses available, " + std::to_string(cfg.max_contexts) +
                " contexts requested");
  }
  if (cfg.max_objects > scene.objects.size()) {
    throw Error("scene has " + std::to_string(scene.objects.size()) + " objects, " +
                std::to_string(cfg.max_objects) + " requested");
  }
  struct Cell {
    ckr2asp::Strategy translation;
    std::size_t objects, contexts;
  };
  std::vector<Cell> cells;
  for (auto t : {ckr2asp::Strategy::General, ckr2asp::Strategy::Specialized}) {
    for (std::size_t n = 1; n <= cfg.max_objects; ++n) {
      for (std::size_t k = 1; k <= cfg.max_contexts; ++k) cells.push_back({t, n, k});
    }
  }
  std::vector<BenchRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const auto& c = cells[i];
        std::vector<ckr2asp::Diagnosis> prefix(diagnoses.begin(), diagnoses.begin() + static_cast<long>(c.contexts));
        rows[i] = run_cell(subsample(scene, c.objects, cfg.seed), ontology, prefix, c.translation, cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::max<std::size_t>(1, cfg.workers);
  if (n == 1) {
    // Sequential runs report rows as they finish.
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      std::vector<ckr2asp::Diagnosis> prefix(diagnoses.begin(), diagnoses.begin() + static_cast<long>(c.contexts));
      rows[i] = run_cell(subsample(scene, c.objects, cfg.seed), ontology, prefix, c.translation, cfg);
      if (progress) progress(rows[i]);
    }
    return rows;
  }
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < n; ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (progress) {
    for (const auto& r : rows) progress(r);
  }
  return rows;
}

std::string render_row(const BenchRow& r) {
  char ms[64];
  std::snprintf(ms, sizeof ms, "%.3f", r.solve_ms);
  return std::string(ckr2asp::to_string(r.translation)) + "," + std::to_string(r.objects) + "," +
         std::to_string(r.contexts) + "," + std::to_string(r.ground_atoms) + "," + std::to_string(r.ground_rules) +
         "," + ms + "," + (r.timed_out ? "true" : "false") + "," +
         (r.optimal_cost ? std::to_string(*r.optimal_cost) : std::string());
}

std::string render_csv(const std::vector<BenchRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) out += render_row(r) + "\n";
  return out;
}

}  // namespace mrckr::bench
