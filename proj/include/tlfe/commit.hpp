#ifndef TLFE_COMMIT_HPP
#define TLFE_COMMIT_HPP

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "tlfe/dfa.hpp"

namespace tlfe {

using StatePair = std::pair<StateId, StateId>;

/// Product of a DFA with itself, materialized from the initial pairs
/// (s0, s) for every non-trash, non-accepting s. Targets are the pairs in
/// F_a x (S \ F_a).
struct SelfProduct {
  std::vector<StatePair> pairs;
  std::vector<std::size_t> initials;  // indices into `pairs`
  std::vector<bool> is_target;        // per pair
  std::vector<std::size_t> next;      // next[pair * letter_count + letter]
  std::size_t letter_count = 0;

  std::size_t successor(std::size_t pair, Letter l) const { return next[pair * letter_count + l.bits]; }
  std::optional<std::size_t> index_of(StatePair p) const;
};

SelfProduct self_product(const TotalDfa& dfa);

struct CommitReport {
  std::vector<StateId> commit_states;                  // sorted
  std::map<StateId, std::vector<Letter>> witnesses;  // shortest witness per commit state

  bool is_commit(StateId s) const {
    return std::binary_search(commit_states.begin(), commit_states.end(), s);
  }
};

/// A state s is a commit state when some word is accepted from s0 but not
/// from s. Decided by one backward search from the target set of the self
/// product.
CommitReport commit_states(const TotalDfa& dfa);

/// True iff `word` is accepted by the automaton and rejected when the run
/// starts from `s` instead.
bool verify_witness(const TotalDfa& dfa, StateId s, std::span<const Letter> word);

/// {"commit_states": [...], "witnesses": {"<state>": [[obs...], ...]}}
std::string commit_report_to_json(const TotalDfa& dfa, const CommitReport& report);

}  // namespace tlfe

#endif  // TLFE_COMMIT_HPP
