#include "tlfe/product.hpp"

#include <deque>
#include <queue>

namespace tlfe {

ProductState initial_product_state(const GridMap& map, const TotalDfa& dfa) {
  return {map.start(), dfa.next(dfa.initial(), map.letter(map.start()))};
}

ProductGraph::ProductGraph(const GridMap& map, const TotalDfa& dfa)
    : map_(&map),
      dfa_(&dfa),
      known_(map.cell_count(), false),
      present_(map.cell_count() * dfa.state_count(), false) {
  if (!(map.alphabet() == dfa.alphabet())) {
    throw InputError("map and automaton use different observation sets");
  }
}

std::optional<ProductState> ProductGraph::successor(ProductState p, Action a) const {
  auto to = map_->step(p.cell, a);
  if (!to || !known_[map_->index(*to)]) return std::nullopt;
  return ProductState{*to, dfa_->next(p.dfa, map_->letter(*to))};
}

void ProductGraph::expand(const KnownSet& known, ProductState from) {
  for (std::size_t i = 0; i < known_.size(); ++i) known_[i] = known.is_known(i);

  std::deque<ProductState> queue;
  if (known_[map_->index(from.cell)] && !present_[index(from)]) {
    present_[index(from)] = true;
    ++node_count_;
  }
  for (std::size_t i = 0; i < present_.size(); ++i) {
    if (present_[i]) queue.push_back(state(i));
  }
  while (!queue.empty()) {
    ProductState p = queue.front();
    queue.pop_front();
    for (Action a : kMoves) {
      auto q = successor(p, a);
      if (q && !present_[index(*q)]) {
        present_[index(*q)] = true;
        ++node_count_;
        queue.push_back(*q);
      }
    }
  }
}

std::size_t ProductGraph::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < present_.size(); ++i) {
    if (present_[i]) count += edges_from(state(i)).size();
  }
  return count;
}

std::vector<ProductGraph::Edge> ProductGraph::edges_from(ProductState p) const {
  std::vector<Edge> out;
  if (!contains(p)) return out;
  for (Action a : kActions) {
    auto q = successor(p, a);
    if (q && contains(*q)) out.push_back({a, *q, map_->weight(p.cell, a)});
  }
  return out;
}

bool accepting_reachable(const ProductGraph& g, ProductState from) {
  if (!g.map().contains(from.cell) || from.dfa >= g.dfa().state_count() || !g.contains(from)) {
    throw InputError("product state is not part of the graph");
  }
  if (g.is_trash(from)) return false;
  std::vector<bool> seen(g.index_space(), false);
  std::deque<ProductState> queue{from};
  seen[g.index(from)] = true;
  while (!queue.empty()) {
    ProductState p = queue.front();
    queue.pop_front();
    if (g.is_accepting(p)) return true;
    for (const auto& e : g.edges_from(p)) {
      if (g.is_trash(e.to) || seen[g.index(e.to)]) continue;
      seen[g.index(e.to)] = true;
      queue.push_back(e.to);
    }
  }
  return false;
}

ShortestPaths::ShortestPaths(const ProductGraph& g, ProductState source, const WeightFn& weight)
    : graph_(&g),
      source_(source),
      weight_(g.index_space(), -1),
      parent_(g.index_space(), 0),
      via_(g.index_space(), Action::Stay) {
  if (!g.contains(source)) throw InputError("product state is not part of the graph");
  if (g.is_trash(source)) return;

  using Entry = std::pair<long, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  weight_[g.index(source)] = 0;
  open.emplace(0, g.index(source));
  while (!open.empty()) {
    auto [w, idx] = open.top();
    open.pop();
    if (w != weight_[idx]) continue;
    const ProductState p = g.state(idx);
    for (const auto& e : g.edges_from(p)) {
      if (e.action == Action::Stay || g.is_trash(e.to)) continue;
      const int step = weight(p.cell, e.action);
      if (step <= 0) throw InputError("transition weights must be positive");
      const std::size_t to = g.index(e.to);
      if (weight_[to] < 0 || w + step < weight_[to]) {
        weight_[to] = w + step;
        parent_[to] = idx;
        via_[to] = e.action;
        open.emplace(weight_[to], to);
      }
    }
  }
}

std::optional<long> ShortestPaths::weight_to(ProductState p) const {
  long w = weight_[graph_->index(p)];
  if (w < 0) return std::nullopt;
  return w;
}

ShortestPaths::Path ShortestPaths::path_to(ProductState p) const {
  auto w = weight_to(p);
  if (!w) throw InputError("target product state is unreachable");
  Path path;
  path.weight = *w;
  std::size_t at = graph_->index(p);
  const std::size_t src = graph_->index(source_);
  while (at != src) {
    path.states.push_back(graph_->state(at));
    path.actions.push_back(via_[at]);
    at = parent_[at];
  }
  path.states.push_back(source_);
  std::reverse(path.states.begin(), path.states.end());
  std::reverse(path.actions.begin(), path.actions.end());
  return path;
}

std::vector<ProductState> ShortestPaths::reached() const {
  std::vector<ProductState> out;
  for (std::size_t i = 0; i < weight_.size(); ++i) {
    if (weight_[i] >= 0) out.push_back(graph_->state(i));
  }
  return out;
}

ShortestPaths min_weight_paths(const ProductGraph& g, ProductState from) {
  const GridMap& map = g.map();
  return ShortestPaths(g, from, [&map](Cell c, Action a) { return map.weight(c, a); });
}

ShortestPaths min_weight_paths(const ProductGraph& g, ProductState from, const WeightFn& weight) {
  return ShortestPaths(g, from, weight);
}

}  // namespace tlfe
