#include "tlfe/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <json.hpp>

namespace tlfe {

TotalDfa::TotalDfa(ObservationSet alphabet, std::size_t state_count, StateId initial, StateId trash,
                   std::vector<bool> accepting, std::vector<StateId> table)
    : alphabet_(std::move(alphabet)),
      initial_(initial),
      trash_(trash),
      accepting_(std::move(accepting)),
      table_(std::move(table)) {
  const std::size_t letters = alphabet_.letter_count();
  if (state_count == 0) throw InputError("automaton has no states");
  if (accepting_.size() != state_count) throw InputError("accepting vector does not match state count");
  if (table_.size() != state_count * letters) throw InputError("transition table is not total");
  if (initial_ >= state_count || trash_ >= state_count) throw InputError("state id out of range");
  for (StateId t : table_) {
    if (t >= state_count) throw InputError("transition target out of range");
  }
  if (accepting_[trash_]) throw InputError("trash state cannot be accepting");
  for (std::size_t l = 0; l < letters; ++l) {
    if (table_[trash_ * letters + l] != trash_) throw InputError("trash state must be absorbing");
  }
  std::vector<bool> seen(state_count, false);
  std::deque<StateId> queue{initial_};
  seen[initial_] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < letters; ++l) {
      StateId t = table_[s * letters + l];
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  for (std::size_t s = 0; s < state_count; ++s) {
    if (!seen[s] && s != trash_) {
      throw InputError("state " + std::to_string(s) + " is not reachable from the initial state");
    }
  }
}

std::vector<StateId> TotalDfa::accepting_states() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < state_count(); ++s) {
    if (accepting_[s]) out.push_back(s);
  }
  return out;
}

StateId TotalDfa::run(StateId from, std::span<const Letter> word) const {
  StateId s = from;
  for (Letter l : word) s = next(s, l);
  return s;
}

std::vector<StateId> TotalDfa::trace(StateId from, std::span<const Letter> word) const {
  std::vector<StateId> out{from};
  for (Letter l : word) out.push_back(next(out.back(), l));
  return out;
}

std::size_t TotalDfa::live_state_count() const {
  std::vector<bool> seen(state_count(), false);
  std::deque<StateId> queue{initial_};
  seen[initial_] = true;
  std::size_t count = 0;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    if (s != trash_) ++count;
    for (std::uint32_t l = 0; l < letter_count(); ++l) {
      StateId t = next(s, Letter{l});
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return count;
}

TotalDfa normalize_dfa(const ObservationSet& alphabet, std::size_t state_count, StateId initial,
                       const std::vector<bool>& accepting, const std::vector<StateId>& table) {
  const std::size_t letters = alphabet.letter_count();

  std::vector<bool> reachable(state_count, false);
  std::deque<StateId> queue{initial};
  reachable[initial] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < letters; ++l) {
      StateId t = table[s * letters + l];
      if (!reachable[t]) {
        reachable[t] = true;
        queue.push_back(t);
      }
    }
  }

  std::vector<std::vector<StateId>> reverse(state_count);
  for (StateId s = 0; s < state_count; ++s) {
    if (!reachable[s]) continue;
    for (std::size_t l = 0; l < letters; ++l) reverse[table[s * letters + l]].push_back(s);
  }
  std::vector<bool> live(state_count, false);
  for (StateId s = 0; s < state_count; ++s) {
    if (reachable[s] && accepting[s]) {
      live[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId p : reverse[s]) {
      if (!live[p]) {
        live[p] = true;
        queue.push_back(p);
      }
    }
  }

  constexpr StateId kUnassigned = ~StateId{0};
  std::vector<StateId> renumber(state_count, kUnassigned);
  std::vector<StateId> order;
  if (live[initial]) {
    renumber[initial] = 0;
    order.push_back(initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t l = 0; l < letters; ++l) {
        StateId t = table[order[i] * letters + l];
        if (live[t] && renumber[t] == kUnassigned) {
          renumber[t] = static_cast<StateId>(order.size());
          order.push_back(t);
        }
      }
    }
  }
  const auto trash = static_cast<StateId>(order.size());
  const std::size_t count = order.size() + 1;
  std::vector<bool> acc(count, false);
  std::vector<StateId> out(count * letters, trash);
  for (StateId i = 0; i < order.size(); ++i) {
    acc[i] = accepting[order[i]];
    for (std::size_t l = 0; l < letters; ++l) {
      StateId t = table[order[i] * letters + l];
      out[i * letters + l] = live[t] ? renumber[t] : trash;
    }
  }
  StateId init = live[initial] ? 0 : trash;
  return TotalDfa(alphabet, count, init, trash, std::move(acc), std::move(out));
}

TotalDfa minimize(const TotalDfa& dfa) {
  const std::size_t n = dfa.state_count();
  const std::size_t letters = dfa.letter_count();

  std::vector<std::vector<std::vector<StateId>>> inverse(letters, std::vector<std::vector<StateId>>(n));
  for (StateId s = 0; s < n; ++s) {
    for (std::uint32_t l = 0; l < letters; ++l) inverse[l][dfa.next(s, Letter{l})].push_back(s);
  }

  std::vector<std::size_t> block_of(n);
  std::vector<std::vector<StateId>> blocks;
  {
    std::vector<StateId> acc, rej;
    for (StateId s = 0; s < n; ++s) (dfa.is_accepting(s) ? acc : rej).push_back(s);
    for (auto* b : {&acc, &rej}) {
      if (b->empty()) continue;
      for (StateId s : *b) block_of[s] = blocks.size();
      blocks.push_back(std::move(*b));
    }
  }

  std::vector<std::vector<bool>> pending;  // pending[block][letter]
  std::deque<std::pair<std::size_t, std::uint32_t>> work;
  auto enqueue = [&](std::size_t b, std::uint32_t l) {
    if (pending.size() <= b) pending.resize(b + 1, std::vector<bool>(letters, false));
    if (!pending[b][l]) {
      pending[b][l] = true;
      work.emplace_back(b, l);
    }
  };
  pending.resize(blocks.size(), std::vector<bool>(letters, false));
  if (blocks.size() == 2) {
    std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
    for (std::uint32_t l = 0; l < letters; ++l) enqueue(smaller, l);
  }

  std::vector<bool> marked(n, false);
  while (!work.empty()) {
    auto [splitter, letter] = work.front();
    work.pop_front();
    pending[splitter][letter] = false;

    std::vector<StateId> preimage;
    for (StateId t : blocks[splitter]) {
      for (StateId s : inverse[letter][t]) {
        if (!marked[s]) {
          marked[s] = true;
          preimage.push_back(s);
        }
      }
    }
    std::vector<std::size_t> touched;
    for (StateId s : preimage) touched.push_back(block_of[s]);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    for (std::size_t b : touched) {
      std::vector<StateId> inside, outside;
      for (StateId s : blocks[b]) (marked[s] ? inside : outside).push_back(s);
      if (outside.empty()) continue;
      const std::size_t fresh = blocks.size();
      for (StateId s : inside) block_of[s] = fresh;
      blocks[b] = std::move(outside);
      blocks.push_back(std::move(inside));
      pending.resize(blocks.size(), std::vector<bool>(letters, false));
      for (std::uint32_t l = 0; l < letters; ++l) {
        if (pending[b][l]) {
          enqueue(fresh, l);
        } else {
          enqueue(blocks[b].size() <= blocks[fresh].size() ? b : fresh, l);
        }
      }
    }
    for (StateId s : preimage) marked[s] = false;
  }

  const std::size_t m = blocks.size();
  std::vector<bool> accepting(m, false);
  std::vector<StateId> table(m * letters);
  for (std::size_t b = 0; b < m; ++b) {
    StateId rep = blocks[b].front();
    accepting[b] = dfa.is_accepting(rep);
    for (std::uint32_t l = 0; l < letters; ++l) {
      table[b * letters + l] = static_cast<StateId>(block_of[dfa.next(rep, Letter{l})]);
    }
  }
  return normalize_dfa(dfa.alphabet(), m, static_cast<StateId>(block_of[dfa.initial()]), accepting, table);
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

using Clause = std::vector<std::uint32_t>;
using Dnf = std::vector<Clause>;  // irredundant DNF of a monotone function

const Dnf kDnfTrue{Clause{}};
const Dnf kDnfFalse{};

void make_irredundant(Dnf& d) {
  std::sort(d.begin(), d.end(), [](const Clause& a, const Clause& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  d.erase(std::unique(d.begin(), d.end()), d.end());
  Dnf kept;
  for (auto& c : d) {
    bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const Clause& k) {
      return std::includes(c.begin(), c.end(), k.begin(), k.end());
    });
    if (!subsumed) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  d = std::move(kept);
}

Dnf dnf_or(const Dnf& a, const Dnf& b) {
  Dnf out = a;
  out.insert(out.end(), b.begin(), b.end());
  make_irredundant(out);
  return out;
}

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Clause c;
      std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(c));
      out.push_back(std::move(c));
    }
  }
  make_irredundant(out);
  return out;
}

class Compiler {
 public:
  Compiler(const Formula& phi, std::size_t letters) : letters_(letters) { root_ = intern(phi); }

  Dnf initial() const { return static_dnf(root_); }

  Dnf step(const Dnf& state, std::uint32_t letter) {
    Dnf out;
    for (const auto& clause : state) {
      Dnf acc = kDnfTrue;
      for (auto id : clause) {
        acc = dnf_and(acc, progress_node(id, letter));
        if (acc.empty()) break;
      }
      out.insert(out.end(), acc.begin(), acc.end());
    }
    make_irredundant(out);
    return out;
  }

 private:
  std::uint32_t intern(const Formula& f) {
    auto it = ids_.find(f.str());
    if (it != ids_.end()) return it->second;
    std::vector<std::uint32_t> children;
    for (const auto& op : f.operands()) children.push_back(intern(op));
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(f);
    children_.push_back(std::move(children));
    ids_.emplace(f.str(), id);
    memo_.resize(nodes_.size() * letters_);
    return id;
  }

  // Propositional structure of a node with temporal and atomic leaves.
  Dnf static_dnf(std::uint32_t id) const {
    const auto& f = nodes_[id];
    switch (f.kind()) {
      case FormulaKind::True: return kDnfTrue;
      case FormulaKind::False: return kDnfFalse;
      case FormulaKind::And: {
        Dnf acc = kDnfTrue;
        for (auto c : children_[id]) acc = dnf_and(acc, static_dnf(c));
        return acc;
      }
      case FormulaKind::Or: {
        Dnf acc = kDnfFalse;
        for (auto c : children_[id]) acc = dnf_or(acc, static_dnf(c));
        return acc;
      }
      default: return Dnf{Clause{id}};
    }
  }

  const Dnf& progress_node(std::uint32_t id, std::uint32_t letter) {
    auto& slot = memo_[id * letters_ + letter];
    if (slot) return *slot;
    const auto& f = nodes_[id];
    const Letter l{letter};
    Dnf out;
    switch (f.kind()) {
      case FormulaKind::True: out = kDnfTrue; break;
      case FormulaKind::False: out = kDnfFalse; break;
      case FormulaKind::Obs: out = l.contains(f.atom()) ? kDnfTrue : kDnfFalse; break;
      case FormulaKind::NegObs: out = l.contains(f.atom()) ? kDnfFalse : kDnfTrue; break;
      case FormulaKind::And: {
        out = kDnfTrue;
        for (auto c : children_[id]) out = dnf_and(out, progress_node(c, letter));
        break;
      }
      case FormulaKind::Or: {
        out = kDnfFalse;
        for (auto c : children_[id]) out = dnf_or(out, progress_node(c, letter));
        break;
      }
      case FormulaKind::Until: {
        const auto& kids = children_[id];
        Dnf hold = dnf_and(progress_node(kids[0], letter), Dnf{Clause{id}});
        out = dnf_or(progress_node(kids[1], letter), hold);
        break;
      }
      case FormulaKind::Eventually:
        out = dnf_or(progress_node(children_[id][0], letter), Dnf{Clause{id}});
        break;
    }
    // memo_ may have been resized by recursion only through intern(), which
    // never runs here, so the slot reference is still valid.
    slot = std::move(out);
    return *slot;
  }

  std::size_t letters_;
  std::uint32_t root_ = 0;
  std::vector<Formula> nodes_;
  std::vector<std::vector<std::uint32_t>> children_;
  std::map<std::string, std::uint32_t> ids_;
  std::vector<std::optional<Dnf>> memo_;
};

}  // namespace

TotalDfa compile_dfa(const Formula& phi, const ObservationSet& alphabet, const CompileOptions& options) {
  for (auto a : atoms_of(phi)) {
    if (a >= alphabet.size()) throw InputError("formula mentions an observation outside the alphabet");
  }
  const std::size_t letters = alphabet.letter_count();
  Compiler compiler(canonical(phi), letters);

  std::map<Dnf, StateId> ids;
  std::vector<Dnf> states;
  std::vector<StateId> table;
  auto lookup = [&](Dnf d) {
    auto it = ids.find(d);
    if (it != ids.end()) return it->second;
    if (states.size() >= options.max_states) {
      throw CapacityError("automaton exceeds " + std::to_string(options.max_states) + " states");
    }
    auto id = static_cast<StateId>(states.size());
    ids.emplace(d, id);
    states.push_back(std::move(d));
    return id;
  };
  lookup(compiler.initial());
  for (std::size_t s = 0; s < states.size(); ++s) {
    for (std::uint32_t l = 0; l < letters; ++l) {
      Dnf succ = compiler.step(states[s], l);
      table.push_back(lookup(std::move(succ)));
    }
  }
  std::vector<bool> accepting(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) accepting[s] = states[s] == kDnfTrue;
  return minimize(normalize_dfa(alphabet, states.size(), 0, accepting, table));
}

// ---------------------------------------------------------------------------

PrunedDistances pruned_distances(const TotalDfa& dfa) {
  const std::size_t n = dfa.state_count();
  std::vector<std::vector<StateId>> reverse(n);
  for (StateId s = 0; s < n; ++s) {
    for (std::uint32_t l = 0; l < dfa.letter_count(); ++l) {
      if (Letter{l}.size() > 1) continue;
      reverse[dfa.next(s, Letter{l})].push_back(s);
    }
  }
  std::vector<std::optional<unsigned>> dist(n);
  std::deque<StateId> queue;
  for (StateId s = 0; s < n; ++s) {
    if (dfa.is_accepting(s)) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (StateId p : reverse[s]) {
      if (!dist[p]) {
        dist[p] = *dist[s] + 1;
        queue.push_back(p);
      }
    }
  }
  return PrunedDistances(std::move(dist));
}

int delta_phi(const PrunedDistances& d, StateId from, StateId to, int cap) {
  auto value = [&](StateId s) { return d[s] ? static_cast<int>(*d[s]) : cap; };
  return value(from) - value(to);
}

// ---------------------------------------------------------------------------
// JSON

std::string dfa_to_json(const TotalDfa& dfa) {
  using nlohmann::json;
  const auto& alphabet = dfa.alphabet();
  json j;
  j["alphabet"] = alphabet.names();
  std::vector<StateId> states(dfa.state_count());
  for (StateId s = 0; s < states.size(); ++s) states[s] = s;
  j["states"] = states;
  j["initial"] = dfa.initial();
  j["accepting"] = dfa.accepting_states();
  j["trash"] = dfa.trash();

  std::vector<std::vector<std::string>> letters;
  for (std::uint32_t l = 0; l < dfa.letter_count(); ++l) letters.push_back(alphabet.letter_names(Letter{l}));
  std::vector<std::uint32_t> order(letters.size());
  for (std::uint32_t l = 0; l < order.size(); ++l) order[l] = l;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return letters[a] < letters[b]; });

  json transitions = json::array();
  for (StateId s = 0; s < dfa.state_count(); ++s) {
    for (auto l : order) {
      transitions.push_back({{"from", s}, {"letter", letters[l]}, {"to", dfa.next(s, Letter{l})}});
    }
  }
  j["transitions"] = std::move(transitions);
  return j.dump();
}

TotalDfa dfa_from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
    ObservationSet alphabet(j.at("alphabet").get<std::vector<std::string>>());
    auto states = j.at("states").get<std::vector<StateId>>();
    const std::size_t n = states.size();
    std::vector<StateId> sorted = states;
    std::sort(sorted.begin(), sorted.end());
    for (StateId i = 0; i < n; ++i) {
      if (sorted[i] != i) throw InputError("states must be exactly 0..n-1");
    }
    std::vector<bool> accepting(n, false);
    for (auto s : j.at("accepting").get<std::vector<StateId>>()) {
      if (s >= n) throw InputError("accepting state out of range");
      accepting[s] = true;
    }
    const std::size_t letters = alphabet.letter_count();
    constexpr StateId kMissing = ~StateId{0};
    std::vector<StateId> table(n * letters, kMissing);
    for (const auto& t : j.at("transitions")) {
      auto from = t.at("from").get<StateId>();
      auto to = t.at("to").get<StateId>();
      if (from >= n || to >= n) throw InputError("transition state out of range");
      Letter l = alphabet.letter(t.at("letter").get<std::vector<std::string>>());
      auto& slot = table[from * letters + l.bits];
      if (slot != kMissing && slot != to) throw InputError("automaton is not deterministic");
      slot = to;
    }
    if (std::find(table.begin(), table.end(), kMissing) != table.end()) {
      throw InputError("transition function is not total");
    }
    return TotalDfa(std::move(alphabet), n, j.at("initial").get<StateId>(), j.at("trash").get<StateId>(),
                    std::move(accepting), std::move(table));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed DFA JSON: ") + e.what());
  }
}

}  // namespace tlfe
