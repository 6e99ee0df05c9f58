#ifndef TLFE_BENCH_HPP
#define TLFE_BENCH_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tlfe/episode.hpp"
#include "tlfe/planner.hpp"

namespace tlfe {

/// Search-and-rescue task over {l, p, s}: reach a person p before any exit s,
/// never leave a lower-level region l except through p/l cells into s, and
/// eventually reach s.
inline constexpr const char* kRescueFormula = "(!l U (l U (p U ((l|p) U s)))) & F s & (!s U p)";

enum class Method { Ours, Baseline };

const char* method_name(Method m);
Method parse_method(const std::string& name);

struct BenchConfig {
  int size = 20;
  int n_blocks = 0;
  int n_maps = 500;
  std::uint64_t base_seed = 0;
  std::string formula = kRescueFormula;
  std::vector<Method> methods{Method::Ours, Method::Baseline};
  PlannerConfig cfg;
  unsigned jobs = 1;
};

struct RunRecord {
  std::uint64_t map_seed = 0;
  int n_blocks = 0;
  Method method = Method::Ours;
  bool satisfied = false;
  std::size_t steps = 0;
  long wall_ms = 0;
};

struct MethodSummary {
  int n_blocks = 0;
  Method method = Method::Ours;
  std::size_t runs = 0;
  double satisfaction_rate = 0.0;  // percent
  double avg_steps = 0.0;
};

struct BenchResult {
  std::vector<RunRecord> records;  // ordered by (map index, method)
  std::vector<MethodSummary> summary;
};

/// Called once per episode with the generated map and its result. With
/// jobs > 1 calls are serialized but arrive in completion order.
using EpisodeObserver =
    std::function<void(const GridMap& map, std::uint64_t seed, Method method, const EpisodeResult& result)>;

/// Runs every method on `n_maps` generated maps (seed = base_seed + index).
/// Each satisfied run is re-verified by replaying its word through the
/// automaton; a failed replay throws.
BenchResult run_bench(const BenchConfig& cfg, const EpisodeObserver& observer = {});

/// Per (n_blocks, method) aggregates in first-appearance order. Throws on
/// empty input.
std::vector<MethodSummary> summarize(std::span<const RunRecord> records);

/// Plain-text table: one row per (n, method).
std::string summary_table(std::span<const MethodSummary> summary);
std::string summary_json(std::span<const MethodSummary> summary);

/// One JSON object per record, then a final {"summary": ...} object.
/// Wall-clock times are written only when `include_timing` is set, so that
/// default output is reproducible byte for byte.
std::string results_to_jsonl(const BenchResult& result, bool include_timing);

}  // namespace tlfe

#endif  // TLFE_BENCH_HPP
