#ifndef TLFE_PLANNER_HPP
#define TLFE_PLANNER_HPP

#include <cstddef>
#include <optional>

#include "tlfe/commit.hpp"
#include "tlfe/dfa.hpp"
#include "tlfe/episode.hpp"
#include "tlfe/grid.hpp"
#include "tlfe/product.hpp"

namespace tlfe {

struct PlannerConfig {
  double alpha1 = 1.0;  // information gain weight
  double alpha2 = 20.0; // task progress weight
  double alpha3 = 1.0;  // path weight exponent
  int h = 3;            // sensing radius in hops
  /// Defaults to 10 * |X| * |S| when unset.
  std::optional<std::size_t> step_cap;
  /// Record product node/edge counts in every trace entry.
  bool record_product = false;

  void validate() const;
  std::size_t effective_step_cap(const GridMap& map, const TotalDfa& dfa) const;
};

/// Everything frontier scoring needs besides the product graph.
struct PlanningContext {
  const TotalDfa& dfa;
  const CommitReport& commits;
  const PrunedDistances& distances;
  const GridMap& map;
  const PlannerConfig& cfg;
};

/// Task progress of a trajectory that starts in `s_start` and ends in `s_end`:
/// -inf for trash, -(alpha1 |X|) / alpha2 for commit states, otherwise the
/// pruned-distance progress with the cap |S|.
double omega(const TotalDfa& dfa, const CommitReport& commits, const PrunedDistances& d, StateId s_start,
             StateId s_end, std::size_t map_size, const PlannerConfig& cfg);

struct ScoredFrontier {
  Cell cell;
  double value = kMinusInfinity;
  std::optional<ProductState> best_end;
  ShortestPaths::Path best_path;
  long weight = 0;
  std::size_t info_gain = 0;
};

/// Frontier value (alpha1 I(x) + alpha2 Omega) / W^alpha3, maximized over
/// the product nodes above `x` reachable from the search source, each taken
/// at its minimum path weight. Ties prefer the lighter path, then the lower
/// automaton state. Throws InputError when `x` is not a frontier.
ScoredFrontier frontier_value(const ProductGraph& g, const ShortestPaths& paths, Cell x, const KnownSet& known,
                              const PlanningContext& ctx);
ScoredFrontier frontier_value(const ProductGraph& g, ProductState cur, Cell x, const KnownSet& known,
                              const PlanningContext& ctx);

/// Temporal-logic-aware frontier exploration. Explores until an accepting
/// product node becomes reachable, then executes a minimum-weight path to
/// it. Returns Unsatisfiable when no frontier is left or every frontier can
/// only be reached through a violation.
EpisodeResult run_episode(const GridMap& map, const TotalDfa& dfa, const CommitReport& commits,
                          const PlannerConfig& cfg);

}  // namespace tlfe

#endif  // TLFE_PLANNER_HPP
