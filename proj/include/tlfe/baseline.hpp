#ifndef TLFE_BASELINE_HPP
#define TLFE_BASELINE_HPP

#include "tlfe/episode.hpp"
#include "tlfe/planner.hpp"

namespace tlfe {

/// Physical-space frontier exploration used as the comparison method.
///
/// Each round: if an accepting product node is reachable, execute the
/// minimum-weight satisfying path. Otherwise compute shortest paths over the
/// known cells (respecting the one-way rule, ignoring the task), simulate
/// the automaton along the path to every frontier, discard frontiers whose
/// path reaches trash and move to the nearest remaining one (row-major on
/// ties), sensing after each step. No commit awareness and no information
/// gain term. The trace reports minus the chosen path weight as `v_max`.
EpisodeResult run_baseline(const GridMap& map, const TotalDfa& dfa, const PlannerConfig& cfg);

}  // namespace tlfe

#endif  // TLFE_BASELINE_HPP
