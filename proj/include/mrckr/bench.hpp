#pragma once

// Scalability benchmark over scene size and number of diagnosis contexts.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrckr/ckr2asp.hpp"
#include "mrckr/kb.hpp"
#include "mrckr/measures.hpp"

namespace mrckr::bench {

struct BenchConfig {
  std::size_t max_objects = 20;
  std::size_t max_contexts = 5;
  double time_limit_seconds = 120;
  std::optional<std::uint64_t> seed;  // random subsampling instead of file order
  std::size_t workers = 1;
  measures::CostConfig costs;
  std::vector<std::string> modifiable;  // empty: derived from the diagnoses of each cell
};

struct BenchRow {
  ckr2asp::Strategy translation = ckr2asp::Strategy::Specialized;
  std::size_t objects = 0;
  std::size_t contexts = 0;
  std::size_t ground_atoms = 0;
  std::size_t ground_rules = 0;
  double solve_ms = 0;  // grounding plus optimization; the time limit when timed out
  bool timed_out = false;
  std::optional<std::int64_t> optimal_cost;  // absent when timed out or infeasible
};

/// The first `n` objects, or `n` objects drawn with `seed` and kept in file order.
kb::Scene subsample(const kb::Scene& scene, std::size_t n, std::optional<std::uint64_t> seed = std::nullopt);

/// One cell: every diagnosis of `diagnoses` at once over `scene`.
BenchRow run_cell(const kb::Scene& scene, const kb::Ontology& ontology,
                  const std::vector<ckr2asp::Diagnosis>& diagnoses, ckr2asp::Strategy translation,
                  const BenchConfig& cfg);

/// General then Specialized; objects 1..max_objects; diagnosis prefixes 1..max_contexts.
std::vector<BenchRow> run_bench(const kb::Scene& scene, const kb::Ontology& ontology,
                                const std::vector<ckr2asp::Diagnosis>& diagnoses, const BenchConfig& cfg,
                                const std::function<void(const BenchRow&)>& progress = {});

inline constexpr const char* kCsvHeader =
    "translation,objects,contexts,ground_atoms,ground_rules,solve_ms,timed_out,optimal_cost";

std::string render_row(const BenchRow& row);
std::string render_csv(const std::vector<BenchRow>& rows);

}  // namespace mrckr::bench
