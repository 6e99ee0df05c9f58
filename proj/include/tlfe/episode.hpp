#ifndef TLFE_EPISODE_HPP
#define TLFE_EPISODE_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tlfe/dfa.hpp"
#include "tlfe/grid.hpp"
#include "tlfe/product.hpp"

namespace tlfe {

enum class Verdict { Satisfied, Unsatisfiable };
enum class Phase { Explore, Satisfy };

inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

/// One executed time step (t = 0 is the start, before any action).
struct StepRecord {
  std::size_t t = 0;
  Cell cell;
  StateId dfa = 0;
  std::size_t known = 0;
  Phase phase = Phase::Explore;
  std::optional<Cell> frontier;
  double v_max = kMinusInfinity;
  std::size_t product_nodes = 0;
  std::size_t product_edges = 0;
};

/// One frontier-selection round.
struct IterationLog {
  std::optional<Cell> chosen;
  double v_max = kMinusInfinity;
  std::size_t known = 0;
  std::size_t frontier_count = 0;
  /// Automaton state at the end of the chosen path.
  std::optional<StateId> chosen_end;
};

struct EpisodeResult {
  Verdict verdict = Verdict::Unsatisfiable;
  std::string reason;
  std::vector<Cell> trajectory;  // start cell first
  std::vector<Action> actions;
  std::vector<Letter> word;  // label of every trajectory cell, start included
  std::size_t steps = 0;
  std::vector<IterationLog> diagnostics;
  std::vector<StepRecord> trace;
  std::vector<std::vector<Cell>> revealed;  // cells first sensed at each t
  KnownSet final_known;

  bool satisfied() const { return verdict == Verdict::Satisfied; }
};

/// Replays `word` from the automaton's initial state: true iff it ends in an
/// accepting state.
bool replay_accepts(const TotalDfa& dfa, std::span<const Letter> word);
/// True iff no prefix of `word` drives the automaton into trash.
bool replay_safe(const TotalDfa& dfa, std::span<const Letter> word);

/// {"t":..,"cell":[c,r],"dfa":..,"known":..,"phase":"explore"|"satisfy",
///  "frontier":[c,r]|null,"v_max":number|"-inf"} per line.
std::string trace_to_jsonl(const EpisodeResult& result);
/// {"t":..,"nodes":..,"edges":..} per line.
std::string product_sizes_to_jsonl(const EpisodeResult& result);

/// Shared sense/act bookkeeping for the planners: owns the known set, the
/// incrementally built product and the trajectory being recorded.
class EpisodeRecorder {
 public:
  EpisodeRecorder(const GridMap& map, const TotalDfa& dfa, int h, std::size_t step_cap, bool record_product);

  ProductState current() const { return current_; }
  const KnownSet& known() const { return known_; }
  const ProductGraph& graph() const { return graph_; }
  const GridMap& map() const { return map_; }
  const TotalDfa& dfa() const { return dfa_; }
  std::size_t steps() const { return result_.actions.size(); }

  /// Executes one action: move, sense, expand and record.
  void move(Action a, Phase phase, std::optional<Cell> frontier, double v_max);
  void log_iteration(IterationLog log) { result_.diagnostics.push_back(log); }

  /// Follows a minimum-weight path to the nearest accepting product node.
  /// Requires that one is reachable.
  void execute_satisfying_path();

  EpisodeResult finish(Verdict verdict, std::string reason);

 private:
  void record(Phase phase, std::optional<Cell> frontier, double v_max);

  const GridMap& map_;
  const TotalDfa& dfa_;
  int h_;
  std::size_t step_cap_;
  bool record_product_;
  KnownSet known_;
  ProductGraph graph_;
  ProductState current_;
  EpisodeResult result_;
};

}  // namespace tlfe

#endif  // TLFE_EPISODE_HPP
