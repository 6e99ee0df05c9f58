#include "tlfe/planner.hpp"

#include <cmath>

namespace tlfe {

void PlannerConfig::validate() const {
  if (!(alpha1 > 0) || !(alpha2 > 0) || !(alpha3 > 0)) {
    throw InputError("alpha1, alpha2 and alpha3 must be positive");
  }
  if (h < 1) throw InputError("sensing radius must be at least 1");
  if (step_cap && *step_cap == 0) throw InputError("step cap must be positive");
}

std::size_t PlannerConfig::effective_step_cap(const GridMap& map, const TotalDfa& dfa) const {
  return step_cap.value_or(10 * map.cell_count() * dfa.state_count());
}

double omega(const TotalDfa& dfa, const CommitReport& commits, const PrunedDistances& d, StateId s_start,
             StateId s_end, std::size_t map_size, const PlannerConfig& cfg) {
  if (dfa.is_trash(s_end)) return kMinusInfinity;
  if (commits.is_commit(s_end)) return -(cfg.alpha1 * static_cast<double>(map_size)) / cfg.alpha2;
  return delta_phi(d, s_start, s_end, static_cast<int>(dfa.state_count()));
}

ScoredFrontier frontier_value(const ProductGraph& g, const ShortestPaths& paths, Cell x, const KnownSet& known,
                              const PlanningContext& ctx) {
  if (!ctx.map.contains(x) || !is_frontier(ctx.map, known, x)) {
    throw InputError("cell is not a frontier");
  }
  ScoredFrontier out;
  out.cell = x;
  out.info_gain = info_gain(ctx.map, x, ctx.cfg.h, known);
  const double gain = ctx.cfg.alpha1 * static_cast<double>(out.info_gain);
  const StateId start = paths.source().dfa;

  for (StateId s = 0; s < ctx.dfa.state_count(); ++s) {
    const ProductState end{x, s};
    if (ctx.dfa.is_trash(s) || !g.contains(end)) continue;
    auto w = paths.weight_to(end);
    if (!w) continue;
    const double progress = omega(ctx.dfa, ctx.commits, ctx.distances, start, s, ctx.map.cell_count(), ctx.cfg);
    const double denom = *w > 0 ? std::pow(static_cast<double>(*w), ctx.cfg.alpha3) : 1.0;
    const double value = (gain + ctx.cfg.alpha2 * progress) / denom;
    const bool better = !out.best_end || value > out.value || (value == out.value && *w < out.weight);
    if (better) {
      out.value = value;
      out.best_end = end;
      out.weight = *w;
    }
  }
  if (out.best_end) out.best_path = paths.path_to(*out.best_end);
  return out;
}

ScoredFrontier frontier_value(const ProductGraph& g, ProductState cur, Cell x, const KnownSet& known,
                              const PlanningContext& ctx) {
  return frontier_value(g, min_weight_paths(g, cur), x, known, ctx);
}

EpisodeResult run_episode(const GridMap& map, const TotalDfa& dfa, const CommitReport& commits,
                          const PlannerConfig& cfg) {
  cfg.validate();
  const PrunedDistances distances = pruned_distances(dfa);
  const PlanningContext ctx{dfa, commits, distances, map, cfg};
  EpisodeRecorder rec(map, dfa, cfg.h, cfg.effective_step_cap(map, dfa), cfg.record_product);

  while (!accepting_reachable(rec.graph(), rec.current())) {
    const auto candidates = frontiers(map, rec.known());
    if (candidates.empty()) {
      rec.log_iteration({std::nullopt, kMinusInfinity, rec.known().count(), 0, std::nullopt});
      return rec.finish(Verdict::Unsatisfiable, "no frontiers left");
    }

    const ShortestPaths paths = min_weight_paths(rec.graph(), rec.current());
    std::optional<ScoredFrontier> best;
    for (Cell x : candidates) {
      ScoredFrontier scored = frontier_value(rec.graph(), paths, x, rec.known(), ctx);
      if (!scored.best_end) continue;
      // Candidates arrive in row-major order, so strict comparisons keep the
      // first cell among equals.
      if (!best || scored.value > best->value || (scored.value == best->value && scored.weight < best->weight)) {
        best = std::move(scored);
      }
    }
    const double v_max = best ? best->value : kMinusInfinity;
    IterationLog log{std::nullopt, v_max, rec.known().count(), candidates.size(), std::nullopt};
    if (best) {
      log.chosen = best->cell;
      log.chosen_end = best->best_end->dfa;
    }
    rec.log_iteration(log);
    if (!best || v_max == kMinusInfinity) {
      return rec.finish(Verdict::Unsatisfiable, "every frontier requires violating the task");
    }

    if (best->best_path.actions.empty()) throw Error("selected frontier is the current cell");
    for (Action a : best->best_path.actions) {
      rec.move(a, Phase::Explore, best->cell, v_max);
      if (accepting_reachable(rec.graph(), rec.current())) break;
      if (!is_frontier(map, rec.known(), best->cell)) break;
    }
  }
  rec.execute_satisfying_path();
  return rec.finish(Verdict::Satisfied, "");
}

}  // namespace tlfe
