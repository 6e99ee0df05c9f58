#include "tlfe/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "tlfe/baseline.hpp"
#include "tlfe/commit.hpp"

namespace tlfe {

const char* method_name(Method m) { return m == Method::Ours ? "ours" : "baseline"; }

Method parse_method(const std::string& name) {
  if (name == "ours") return Method::Ours;
  if (name == "baseline") return Method::Baseline;
  throw InputError("unknown method '" + name + "' (expected ours or baseline)");
}

BenchResult run_bench(const BenchConfig& cfg, const EpisodeObserver& observer) {
  if (cfg.n_maps <= 0) throw InputError("n_maps must be positive");
  if (cfg.methods.empty()) throw InputError("no methods selected");
  cfg.cfg.validate();

  const ObservationSet alphabet({"l", "p", "s"});
  const TotalDfa dfa = compile_dfa(parse_formula(cfg.formula, alphabet), alphabet);
  const CommitReport commits = commit_states(dfa);

  const std::size_t per_map = cfg.methods.size();
  std::vector<RunRecord> records(static_cast<std::size_t>(cfg.n_maps) * per_map);
  std::mutex observer_mutex;
  std::atomic<int> next_map{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const int i = next_map.fetch_add(1);
      if (i >= cfg.n_maps) return;
      try {
        const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(i);
        const GridMap map = random_map(cfg.size, cfg.n_blocks, seed);
        for (std::size_t k = 0; k < per_map; ++k) {
          const Method method = cfg.methods[k];
          const auto t0 = std::chrono::steady_clock::now();
          EpisodeResult result =
              method == Method::Ours ? run_episode(map, dfa, commits, cfg.cfg) : run_baseline(map, dfa, cfg.cfg);
          const auto t1 = std::chrono::steady_clock::now();
          if (result.satisfied() && !replay_accepts(dfa, result.word)) {
            throw Error("satisfied run failed word replay (seed " + std::to_string(seed) + ")");
          }
          RunRecord& r = records[static_cast<std::size_t>(i) * per_map + k];
          r.map_seed = seed;
          r.n_blocks = cfg.n_blocks;
          r.method = method;
          r.satisfied = result.satisfied();
          r.steps = result.steps;
          r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
          if (observer) {
            std::lock_guard lock(observer_mutex);
            observer(map, seed, method, result);
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next_map = cfg.n_maps;
        return;
      }
    }
  };

  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  BenchResult out;
  out.records = std::move(records);
  out.summary = summarize(out.records);
  return out;
}

std::vector<MethodSummary> summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw InputError("cannot summarize an empty record set");
  std::vector<MethodSummary> out;
  std::vector<std::size_t> satisfied;
  std::vector<double> total_steps;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const MethodSummary& s) { return s.n_blocks == r.n_blocks && s.method == r.method; });
    std::size_t k = static_cast<std::size_t>(it - out.begin());
    if (it == out.end()) {
      out.push_back({r.n_blocks, r.method, 0, 0.0, 0.0});
      satisfied.push_back(0);
      total_steps.push_back(0.0);
    }
    out[k].runs += 1;
    satisfied[k] += r.satisfied ? 1 : 0;
    total_steps[k] += static_cast<double>(r.steps);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].satisfaction_rate = 100.0 * static_cast<double>(satisfied[k]) / static_cast<double>(out[k].runs);
    out[k].avg_steps = total_steps[k] / static_cast<double>(out[k].runs);
  }
  return out;
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string summary_table(std::span<const MethodSummary> summary) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof line, "%-4s %-10s %6s %22s %18s\n", "n", "method", "runs", "avg trajectory length",
                "satisfaction rate");
  out << line;
  for (const auto& s : summary) {
    std::snprintf(line, sizeof line, "%-4d %-10s %6zu %22s %17s%%\n", s.n_blocks, method_name(s.method), s.runs,
                  fixed2(s.avg_steps).c_str(), fixed2(s.satisfaction_rate).c_str());
    out << line;
  }
  return out.str();
}

namespace {

nlohmann::ordered_json summary_array(std::span<const MethodSummary> summary) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : summary) {
    nlohmann::ordered_json j;
    j["n_blocks"] = s.n_blocks;
    j["method"] = method_name(s.method);
    j["runs"] = s.runs;
    // Rounded to two decimals through text so the file is stable.
    j["satisfaction_rate"] = std::stod(fixed2(s.satisfaction_rate));
    j["avg_steps"] = std::stod(fixed2(s.avg_steps));
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

std::string summary_json(std::span<const MethodSummary> summary) { return summary_array(summary).dump(); }

std::string results_to_jsonl(const BenchResult& result, bool include_timing) {
  std::ostringstream out;
  for (const auto& r : result.records) {
    nlohmann::ordered_json j;
    j["map_seed"] = r.map_seed;
    j["n_blocks"] = r.n_blocks;
    j["method"] = method_name(r.method);
    j["satisfied"] = r.satisfied;
    j["steps"] = r.steps;
    if (include_timing) j["wall_ms"] = r.wall_ms;
    out << j.dump() << "\n";
  }
  nlohmann::ordered_json tail;
  tail["summary"] = summary_array(result.summary);
  tail["conventions"] = {
      {"baseline", "nearest frontier by physical path weight, row-major ties, re-planned after each frontier"},
      {"start", "top-left corner"},
      {"blocks", "5x5, fully inside the grid, overlap allowed"},
  };
  out << tail.dump() << "\n";
  return out.str();
}

}  // namespace tlfe
