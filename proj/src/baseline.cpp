#include "tlfe/baseline.hpp"

#include <algorithm>
#include <queue>

namespace tlfe {

namespace {

struct PhysicalPaths {
  std::vector<long> weight;  // -1 when unreachable
  std::vector<std::size_t> parent;
  std::vector<Action> via;
};

PhysicalPaths physical_paths(const GridMap& map, const KnownSet& known, Cell from) {
  PhysicalPaths out{std::vector<long>(map.cell_count(), -1), std::vector<std::size_t>(map.cell_count(), 0),
                    std::vector<Action>(map.cell_count(), Action::Stay)};
  using Entry = std::pair<long, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  out.weight[map.index(from)] = 0;
  open.emplace(0, map.index(from));
  while (!open.empty()) {
    auto [w, idx] = open.top();
    open.pop();
    if (w != out.weight[idx]) continue;
    const Cell c = map.cell(idx);
    for (Action a : kMoves) {
      auto to = map.step(c, a);
      if (!to || !known.is_known(map.index(*to))) continue;
      const std::size_t t = map.index(*to);
      const long nw = w + map.weight(c, a);
      if (out.weight[t] < 0 || nw < out.weight[t]) {
        out.weight[t] = nw;
        out.parent[t] = idx;
        out.via[t] = a;
        open.emplace(nw, t);
      }
    }
  }
  return out;
}

std::vector<Action> actions_to(const GridMap& map, const PhysicalPaths& paths, Cell from, Cell to) {
  std::vector<Action> out;
  std::size_t at = map.index(to);
  while (at != map.index(from)) {
    out.push_back(paths.via[at]);
    at = paths.parent[at];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool path_violates(const GridMap& map, const TotalDfa& dfa, ProductState from, const std::vector<Action>& actions) {
  ProductState p = from;
  for (Action a : actions) {
    p.cell = *map.step(p.cell, a);
    p.dfa = dfa.next(p.dfa, map.letter(p.cell));
    if (dfa.is_trash(p.dfa)) return true;
  }
  return false;
}

}  // namespace

EpisodeResult run_baseline(const GridMap& map, const TotalDfa& dfa, const PlannerConfig& cfg) {
  cfg.validate();
  EpisodeRecorder rec(map, dfa, cfg.h, cfg.effective_step_cap(map, dfa), cfg.record_product);

  while (!accepting_reachable(rec.graph(), rec.current())) {
    const auto candidates = frontiers(map, rec.known());
    if (candidates.empty()) {
      rec.log_iteration({std::nullopt, kMinusInfinity, rec.known().count(), 0, std::nullopt});
      return rec.finish(Verdict::Unsatisfiable, "no frontiers left");
    }
    const ProductState cur = rec.current();
    const PhysicalPaths paths = physical_paths(map, rec.known(), cur.cell);

    std::optional<Cell> target;
    std::vector<Action> route;
    long best = 0;
    if (!dfa.is_trash(cur.dfa)) {
      for (Cell x : candidates) {
        const long w = paths.weight[map.index(x)];
        if (w <= 0 || (target && w >= best)) continue;
        auto actions = actions_to(map, paths, cur.cell, x);
        if (path_violates(map, dfa, cur, actions)) continue;
        target = x;
        route = std::move(actions);
        best = w;
      }
    }
    const double score = target ? -static_cast<double>(best) : kMinusInfinity;
    IterationLog log{target, score, rec.known().count(), candidates.size(), std::nullopt};
    if (target) {
      ProductState end = cur;
      for (Action a : route) {
        end.cell = *map.step(end.cell, a);
        end.dfa = dfa.next(end.dfa, map.letter(end.cell));
      }
      log.chosen_end = end.dfa;
    }
    rec.log_iteration(log);
    if (!target) {
      return rec.finish(Verdict::Unsatisfiable, "every reachable frontier was discarded");
    }
    for (Action a : route) {
      rec.move(a, Phase::Explore, target, score);
      if (accepting_reachable(rec.graph(), rec.current())) break;
      if (!is_frontier(map, rec.known(), *target)) break;
    }
  }
  rec.execute_satisfying_path();
  return rec.finish(Verdict::Satisfied, "");
}

}  // namespace tlfe
