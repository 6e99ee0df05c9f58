#ifndef TLFE_DFA_HPP
#define TLFE_DFA_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlfe/formula.hpp"
#include "tlfe/observation.hpp"

namespace tlfe {

using StateId = std::uint32_t;

/// Deterministic automaton over 2^O with a total transition table, a set of
/// accepting states and a single absorbing trash state from which no
/// accepting state is reachable.
class TotalDfa {
 public:
  /// Validates every structural invariant; throws InputError otherwise.
  /// `table[s * letter_count + l]` is the successor of state `s` on letter `l`.
  TotalDfa(ObservationSet alphabet, std::size_t state_count, StateId initial, StateId trash,
           std::vector<bool> accepting, std::vector<StateId> table);

  const ObservationSet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return accepting_.size(); }
  std::size_t letter_count() const { return alphabet_.letter_count(); }
  StateId initial() const { return initial_; }
  StateId trash() const { return trash_; }

  bool is_accepting(StateId s) const { return accepting_.at(s); }
  bool is_trash(StateId s) const { return s == trash_; }
  std::vector<StateId> accepting_states() const;

  StateId next(StateId s, Letter l) const { return table_[s * letter_count() + l.bits]; }

  /// Runs `word` from `from` and returns the final state.
  StateId run(StateId from, std::span<const Letter> word) const;
  /// Runs `word` from `from` and returns every visited state, `from` included.
  std::vector<StateId> trace(StateId from, std::span<const Letter> word) const;
  bool accepts(std::span<const Letter> word) const { return is_accepting(run(initial_, word)); }

  /// States reachable from the initial state, trash excluded.
  std::size_t live_state_count() const;

 private:
  ObservationSet alphabet_;
  StateId initial_;
  StateId trash_;
  std::vector<bool> accepting_;
  std::vector<StateId> table_;
};

/// Builds a TotalDfa from an arbitrary complete automaton: drops states not
/// reachable from `initial`, merges every state that cannot reach an
/// accepting state into one absorbing trash state (adding it when needed) and
/// renumbers states breadth-first from the initial state with trash last.
TotalDfa normalize_dfa(const ObservationSet& alphabet, std::size_t state_count, StateId initial,
                       const std::vector<bool>& accepting, const std::vector<StateId>& table);

/// Hopcroft partition refinement. The result is normalized.
TotalDfa minimize(const TotalDfa& dfa);

struct CompileOptions {
  std::size_t max_states = 4096;
};

/// Compiles a formula into the minimal total DFA recognising its good
/// prefixes. States of the unminimized automaton are progressed obligations,
/// kept as irredundant disjunctive normal forms over temporal subformulas.
TotalDfa compile_dfa(const Formula& phi, const ObservationSet& alphabet, const CompileOptions& options = {});

/// Hop distance from each state to the nearest accepting state, using only
/// transitions whose letter holds at most one observation.
class PrunedDistances {
 public:
  explicit PrunedDistances(std::vector<std::optional<unsigned>> distance)
      : distance_(std::move(distance)) {}

  std::optional<unsigned> operator[](StateId s) const { return distance_.at(s); }
  std::size_t size() const { return distance_.size(); }

 private:
  std::vector<std::optional<unsigned>> distance_;
};

PrunedDistances pruned_distances(const TotalDfa& dfa);

/// d(from) - d(to), with unreachable distances replaced by `cap`.
int delta_phi(const PrunedDistances& d, StateId from, StateId to, int cap);

/// JSON layout:
///   {"alphabet": [...], "states": [...], "initial": n, "accepting": [...],
///    "trash": n, "transitions": [{"from": n, "letter": [...], "to": n}, ...]}
/// Transitions are sorted by source state, then by the sorted observation
/// list of the letter.
std::string dfa_to_json(const TotalDfa& dfa);
TotalDfa dfa_from_json(const std::string& text);

}  // namespace tlfe

#endif  // TLFE_DFA_HPP
