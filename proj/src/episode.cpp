#include "tlfe/episode.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>

namespace tlfe {

bool replay_accepts(const TotalDfa& dfa, std::span<const Letter> word) {
  return dfa.is_accepting(dfa.run(dfa.initial(), word));
}

bool replay_safe(const TotalDfa& dfa, std::span<const Letter> word) {
  for (StateId s : dfa.trace(dfa.initial(), word)) {
    if (dfa.is_trash(s)) return false;
  }
  return true;
}

namespace {

nlohmann::json cell_json(Cell c) { return nlohmann::json::array({c.col, c.row}); }

}  // namespace

std::string trace_to_jsonl(const EpisodeResult& result) {
  std::ostringstream out;
  for (const auto& r : result.trace) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["cell"] = cell_json(r.cell);
    j["dfa"] = r.dfa;
    j["known"] = r.known;
    j["phase"] = r.phase == Phase::Explore ? "explore" : "satisfy";
    j["frontier"] = r.frontier ? cell_json(*r.frontier) : nlohmann::json(nullptr);
    if (std::isinf(r.v_max)) {
      j["v_max"] = "-inf";
    } else {
      j["v_max"] = r.v_max;
    }
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string product_sizes_to_jsonl(const EpisodeResult& result) {
  std::ostringstream out;
  for (const auto& r : result.trace) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    j["nodes"] = r.product_nodes;
    j["edges"] = r.product_edges;
    out << j.dump() << "\n";
  }
  return out.str();
}

EpisodeRecorder::EpisodeRecorder(const GridMap& map, const TotalDfa& dfa, int h, std::size_t step_cap,
                                 bool record_product)
    : map_(map),
      dfa_(dfa),
      h_(h),
      step_cap_(step_cap),
      record_product_(record_product),
      known_(map),
      graph_(map, dfa),
      current_(initial_product_state(map, dfa)) {
  result_.revealed.push_back(sense_in_place(map_, current_.cell, h_, known_));
  graph_.expand(known_, current_);
  result_.trajectory.push_back(current_.cell);
  result_.word.push_back(map_.letter(current_.cell));
  record(Phase::Explore, std::nullopt, kMinusInfinity);
}

void EpisodeRecorder::record(Phase phase, std::optional<Cell> frontier, double v_max) {
  StepRecord r;
  r.t = result_.actions.size();
  r.cell = current_.cell;
  r.dfa = current_.dfa;
  r.known = known_.count();
  r.phase = phase;
  r.frontier = frontier;
  r.v_max = v_max;
  if (record_product_) {
    r.product_nodes = graph_.node_count();
    r.product_edges = graph_.edge_count();
  }
  result_.trace.push_back(r);
}

void EpisodeRecorder::move(Action a, Phase phase, std::optional<Cell> frontier, double v_max) {
  if (result_.actions.size() >= step_cap_) {
    throw CapacityError("episode exceeded the step cap of " + std::to_string(step_cap_));
  }
  auto to = map_.step(current_.cell, a);
  if (!to) throw Error("planned action has no transition");
  current_ = {*to, dfa_.next(current_.dfa, map_.letter(*to))};
  result_.actions.push_back(a);
  result_.trajectory.push_back(*to);
  result_.word.push_back(map_.letter(*to));
  result_.revealed.push_back(sense_in_place(map_, current_.cell, h_, known_));
  graph_.expand(known_, current_);
  record(phase, frontier, v_max);
}

void EpisodeRecorder::execute_satisfying_path() {
  ShortestPaths paths = min_weight_paths(graph_, current_);
  std::optional<ProductState> goal;
  long best = 0;
  // reached() is in node-index order: row-major cell, then automaton state.
  for (ProductState p : paths.reached()) {
    if (!dfa_.is_accepting(p.dfa)) continue;
    long w = *paths.weight_to(p);
    if (!goal || w < best) {
      goal = p;
      best = w;
    }
  }
  if (!goal) throw Error("no accepting product state is reachable");
  const auto path = paths.path_to(*goal);
  for (Action a : path.actions) move(a, Phase::Satisfy, std::nullopt, kMinusInfinity);
}

EpisodeResult EpisodeRecorder::finish(Verdict verdict, std::string reason) {
  result_.verdict = verdict;
  result_.reason = std::move(reason);
  result_.steps = result_.actions.size();
  result_.final_known = known_;
  return std::move(result_);
}

}  // namespace tlfe
