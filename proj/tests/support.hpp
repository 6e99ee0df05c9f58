#ifndef TLFE_TESTS_SUPPORT_HPP
#define TLFE_TESTS_SUPPORT_HPP

// Test-only oracles. None of these reuse library algorithms beyond the plain
// data types, so they can serve as an independent second opinion.

#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tlfe/commit.hpp"
#include "tlfe/dfa.hpp"
#include "tlfe/formula.hpp"
#include "tlfe/grid.hpp"
#include "tlfe/product.hpp"

namespace tlfe::testing {

inline std::string fixture(const std::string& name) { return std::string(TLFE_FIXTURE_DIR) + "/" + name; }

inline const char* kPhi0 = "(!b U a) | ((!a U b) & F c)";

// Random formula text over the first `atoms` letters of "abc". `depth` counts
// leaves as one, so the operator nesting depth is at most depth - 1.
inline std::string random_formula_text(std::mt19937_64& rng, int depth, int atoms) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const std::string atom(1, static_cast<char>('a' + pick(atoms)));
  if (depth <= 1) {
    switch (pick(5)) {
      case 0: return "true";
      case 1: return "!" + atom;
      default: return atom;
    }
  }
  const std::string lhs = random_formula_text(rng, depth - 1 - pick(2), atoms);
  switch (pick(6)) {
    case 0: return "(" + lhs + " & " + random_formula_text(rng, depth - 1, atoms) + ")";
    case 1: return "(" + lhs + " | " + random_formula_text(rng, depth - 1, atoms) + ")";
    case 2:
    case 3: return "(" + lhs + " U " + random_formula_text(rng, depth - 1, atoms) + ")";
    case 4: return "F " + lhs;
    default: return random_formula_text(rng, 1, atoms);
  }
}

inline std::vector<Letter> random_word(std::mt19937_64& rng, std::size_t max_len, std::size_t letter_count) {
  std::vector<Letter> w(rng() % (max_len + 1));
  for (auto& l : w) l.bits = static_cast<std::uint32_t>(rng() % letter_count);
  return w;
}

// Strong finite-trace semantics: the word decides the formula without looking
// past its end. For negation-normal, Next-free formulas this coincides with
// progression reaching `true`.
inline bool holds_strongly(const Formula& f, const std::vector<Letter>& w, std::size_t i) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Obs: return i < w.size() && w[i].contains(f.atom());
    case FormulaKind::NegObs: return i < w.size() && !w[i].contains(f.atom());
    case FormulaKind::And:
      for (const auto& g : f.operands())
        if (!holds_strongly(g, w, i)) return false;
      return true;
    case FormulaKind::Or:
      for (const auto& g : f.operands())
        if (holds_strongly(g, w, i)) return true;
      return false;
    // Position w.size() stands for "no letter left": only constants hold there.
    case FormulaKind::Until:
      for (std::size_t j = i; j <= w.size(); ++j) {
        if (holds_strongly(f.rhs(), w, j)) return true;
        if (!holds_strongly(f.lhs(), w, j)) return false;
      }
      return false;
    case FormulaKind::Eventually:
      for (std::size_t j = i; j <= w.size(); ++j)
        if (holds_strongly(f.sub(), w, j)) return true;
      return false;
  }
  return false;
}

// Random complete automaton normalized into a TotalDfa.
inline TotalDfa random_dfa(std::mt19937_64& rng, std::size_t max_states, std::size_t max_obs) {
  const std::size_t n = 1 + rng() % max_states;
  const std::size_t n_obs = 1 + rng() % max_obs;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_obs; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  ObservationSet alphabet(names);
  std::vector<bool> accepting(n);
  bool any = false;
  for (std::size_t s = 0; s < n; ++s) {
    accepting[s] = rng() % 3 == 0;
    any = any || accepting[s];
  }
  if (!any) accepting[rng() % n] = true;
  std::vector<StateId> table(n * alphabet.letter_count());
  for (auto& t : table) t = static_cast<StateId>(rng() % n);
  return normalize_dfa(alphabet, n, static_cast<StateId>(rng() % n), accepting, table);
}

// Commit states by closing the transformation monoid of the automaton: every
// distinct map S -> S induced by some word is visited once, so the search is
// exhaustive. Also reports the length of the longest word needed.
struct EnumeratedCommits {
  std::set<StateId> commits;
  std::size_t longest_word = 0;
};

inline EnumeratedCommits enumerate_commits(const TotalDfa& dfa, std::size_t max_len) {
  using Transform = std::vector<StateId>;
  const std::size_t n = dfa.state_count();
  Transform id(n);
  for (StateId s = 0; s < n; ++s) id[s] = s;
  std::map<Transform, std::size_t> seen{{id, 0}};
  std::queue<Transform> open;
  open.push(id);
  EnumeratedCommits out;
  while (!open.empty()) {
    Transform f = open.front();
    open.pop();
    const std::size_t len = seen[f];
    out.longest_word = std::max(out.longest_word, len);
    if (dfa.is_accepting(f[dfa.initial()])) {
      for (StateId s = 0; s < n; ++s) {
        if (!dfa.is_accepting(s) && !dfa.is_trash(s) && !dfa.is_accepting(f[s])) out.commits.insert(s);
      }
    }
    if (len == max_len) continue;
    for (std::uint32_t l = 0; l < dfa.letter_count(); ++l) {
      Transform g(n);
      for (StateId s = 0; s < n; ++s) g[s] = dfa.next(f[s], Letter{l});
      if (seen.emplace(g, len + 1).second) open.push(g);
    }
  }
  return out;
}

// Breadth-first reachability over the automaton, trash included.
inline std::set<StateId> reachable_states(const TotalDfa& dfa) {
  std::set<StateId> seen{dfa.initial()};
  std::queue<StateId> open;
  open.push(dfa.initial());
  while (!open.empty()) {
    StateId s = open.front();
    open.pop();
    for (std::uint32_t l = 0; l < dfa.letter_count(); ++l) {
      StateId t = dfa.next(s, Letter{l});
      if (seen.insert(t).second) open.push(t);
    }
  }
  return seen;
}

// Language equivalence of two states, decided over pairs.
inline bool states_equivalent(const TotalDfa& dfa, StateId a, StateId b) {
  std::set<std::pair<StateId, StateId>> seen{{a, b}};
  std::queue<std::pair<StateId, StateId>> open;
  open.push({a, b});
  while (!open.empty()) {
    auto [x, y] = open.front();
    open.pop();
    if (dfa.is_accepting(x) != dfa.is_accepting(y)) return false;
    for (std::uint32_t l = 0; l < dfa.letter_count(); ++l) {
      std::pair<StateId, StateId> next{dfa.next(x, Letter{l}), dfa.next(y, Letter{l})};
      if (seen.insert(next).second) open.push(next);
    }
  }
  return true;
}

inline GridMap map_without(const GridMap& map, const std::string& obs) {
  std::vector<int> labels(map.cell_count());
  const auto drop = map.alphabet().index_of(obs);
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const int l = map.label(map.cell(i));
    labels[i] = drop && l == static_cast<int>(*drop) ? GridMap::kUnlabeled : l;
  }
  std::vector<std::pair<char, std::string>> legend;
  for (std::size_t o = 0; o < map.alphabet().size(); ++o) legend.emplace_back(map.glyph(o), map.alphabet().name(o));
  return GridMap(map.width(), map.height(), map.start(), map.alphabet(), labels, map.one_way(), legend);
}

inline KnownSet everything_known(const GridMap& map) {
  KnownSet k(map);
  for (std::size_t i = 0; i < map.cell_count(); ++i) k.reveal(i, map.label(map.cell(i)));
  return k;
}

// Cells reachable in the full-knowledge product from the initial product
// state without touching trash or commit states. Computed by walking the map
// and automaton directly rather than through ProductGraph.
inline std::set<std::size_t> safely_reachable_cells(const GridMap& map, const TotalDfa& dfa,
                                                    const CommitReport& commits) {
  std::set<std::size_t> cells;
  const Cell start = map.start();
  const StateId s0 = dfa.next(dfa.initial(), map.letter(start));
  if (dfa.is_trash(s0) || commits.is_commit(s0)) return cells;
  std::set<std::pair<std::size_t, StateId>> seen{{map.index(start), s0}};
  std::queue<std::pair<Cell, StateId>> open;
  open.push({start, s0});
  while (!open.empty()) {
    auto [c, s] = open.front();
    open.pop();
    cells.insert(map.index(c));
    for (Action a : kMoves) {
      auto to = map.step(c, a);
      if (!to) continue;
      StateId t = dfa.next(s, map.letter(*to));
      if (dfa.is_trash(t) || commits.is_commit(t)) continue;
      if (seen.insert({map.index(*to), t}).second) open.push({*to, t});
    }
  }
  return cells;
}

// 4-connected component of labeled cells containing `c`. Persons and exits
// placed inside a lower-level block belong to the block's region.
inline std::set<std::size_t> labeled_region(const GridMap& map, Cell c) {
  std::set<std::size_t> seen;
  if (map.label(c) == GridMap::kUnlabeled) return seen;
  std::queue<Cell> open;
  seen.insert(map.index(c));
  open.push(c);
  while (!open.empty()) {
    Cell x = open.front();
    open.pop();
    for (Cell n : map.neighbours(x)) {
      if (map.label(n) != GridMap::kUnlabeled && seen.insert(map.index(n)).second) open.push(n);
    }
  }
  return seen;
}

// True iff, along the trajectory, every step onto an `one_way` cell happens
// only after an `exit` cell of the same labeled region has been sensed.
inline bool descends_only_with_known_exit(const GridMap& map, std::span<const Cell> trajectory,
                                          std::span<const std::vector<Cell>> revealed, int one_way, int exit) {
  KnownSet k(map);
  for (std::size_t t = 0; t < trajectory.size(); ++t) {
    const Cell c = trajectory[t];
    if (map.label(c) == one_way) {
      bool exit_known = false;
      for (std::size_t i : labeled_region(map, c)) exit_known = exit_known || (k.is_known(i) && map.label(map.cell(i)) == exit);
      if (!exit_known) return false;
    }
    for (Cell x : revealed[t]) k.reveal(map.index(x), map.label(x));
  }
  return true;
}

}  // namespace tlfe::testing

#endif  // TLFE_TESTS_SUPPORT_HPP
