#include "tlfe/commit.hpp"

#include <algorithm>
#include <deque>
#include <json.hpp>

namespace tlfe {

std::optional<std::size_t> SelfProduct::index_of(StatePair p) const {
  auto it = std::find(pairs.begin(), pairs.end(), p);
  if (it == pairs.end()) return std::nullopt;
  return static_cast<std::size_t>(it - pairs.begin());
}

SelfProduct self_product(const TotalDfa& dfa) {
  const std::size_t n = dfa.state_count();
  SelfProduct out;
  out.letter_count = dfa.letter_count();

  constexpr std::size_t kNone = ~std::size_t{0};
  std::vector<std::size_t> index(n * n, kNone);
  auto intern = [&](StatePair p) {
    auto& slot = index[p.first * n + p.second];
    if (slot == kNone) {
      slot = out.pairs.size();
      out.pairs.push_back(p);
      out.is_target.push_back(dfa.is_accepting(p.first) && !dfa.is_accepting(p.second));
    }
    return slot;
  };

  for (StateId s = 0; s < n; ++s) {
    if (dfa.is_trash(s) || dfa.is_accepting(s)) continue;
    out.initials.push_back(intern({dfa.initial(), s}));
  }
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    for (std::uint32_t l = 0; l < out.letter_count; ++l) {
      auto [a, b] = out.pairs[i];
      std::size_t succ = intern({dfa.next(a, Letter{l}), dfa.next(b, Letter{l})});
      out.next.push_back(succ);
    }
  }
  return out;
}

CommitReport commit_states(const TotalDfa& dfa) {
  const SelfProduct product = self_product(dfa);
  const std::size_t m = product.pairs.size();
  const std::size_t letters = product.letter_count;

  std::vector<std::vector<std::size_t>> reverse(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < letters; ++l) reverse[product.next[i * letters + l]].push_back(i);
  }

  // Hop distance from each pair to the target set.
  std::vector<std::optional<std::size_t>> dist(m);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < m; ++i) {
    if (product.is_target[i]) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t p : reverse[i]) {
      if (!dist[p]) {
        dist[p] = *dist[i] + 1;
        queue.push_back(p);
      }
    }
  }

  CommitReport report;
  for (std::size_t init : product.initials) {
    if (!dist[init]) continue;
    const StateId s = product.pairs[init].second;
    std::vector<Letter> word;
    std::size_t at = init;
    while (*dist[at] > 0) {
      for (std::uint32_t l = 0; l < letters; ++l) {
        std::size_t succ = product.next[at * letters + l];
        if (dist[succ] && *dist[succ] + 1 == *dist[at]) {
          word.push_back(Letter{l});
          at = succ;
          break;
        }
      }
    }
    report.commit_states.push_back(s);
    report.witnesses.emplace(s, std::move(word));
  }
  std::sort(report.commit_states.begin(), report.commit_states.end());
  return report;
}

bool verify_witness(const TotalDfa& dfa, StateId s, std::span<const Letter> word) {
  return dfa.is_accepting(dfa.run(dfa.initial(), word)) && !dfa.is_accepting(dfa.run(s, word));
}

std::string commit_report_to_json(const TotalDfa& dfa, const CommitReport& report) {
  nlohmann::json j;
  j["commit_states"] = report.commit_states;
  nlohmann::json witnesses = nlohmann::json::object();
  for (const auto& [state, word] : report.witnesses) {
    nlohmann::json w = nlohmann::json::array();
    for (Letter l : word) w.push_back(dfa.alphabet().letter_names(l));
    witnesses[std::to_string(state)] = std::move(w);
  }
  j["witnesses"] = std::move(witnesses);
  return j.dump();
}

}  // namespace tlfe
