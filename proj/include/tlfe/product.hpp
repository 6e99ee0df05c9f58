#ifndef TLFE_PRODUCT_HPP
#define TLFE_PRODUCT_HPP

#include <functional>
#include <optional>
#include <vector>

#include "tlfe/dfa.hpp"
#include "tlfe/grid.hpp"

namespace tlfe {

struct ProductState {
  Cell cell;
  StateId dfa = 0;

  bool operator==(const ProductState&) const = default;
};

/// Product state the robot occupies before moving: the start cell paired
/// with the automaton state reached after reading the start cell's label.
ProductState initial_product_state(const GridMap& map, const TotalDfa& dfa);

/// Transition-system x automaton product over the known cells, grown as
/// sensing reveals more of the map. Nodes are stored as a bitmap over
/// cells x automaton states; edges are implied by the map, the known set
/// captured at the last expansion and the automaton.
///
/// The graph and the map/automaton it refers to must outlive each other in
/// the obvious way: the graph keeps references.
class ProductGraph {
 public:
  struct Edge {
    Action action;
    ProductState to;
    int weight;
  };

  ProductGraph(const GridMap& map, const TotalDfa& dfa);

  /// Materializes every node over `known` reachable from `from` or from a
  /// node already in the graph. Idempotent for an unchanged known set.
  void expand(const KnownSet& known, ProductState from);

  bool contains(ProductState p) const { return present_[index(p)]; }
  bool is_accepting(ProductState p) const { return dfa_->is_accepting(p.dfa); }
  bool is_trash(ProductState p) const { return dfa_->is_trash(p.dfa); }

  std::size_t node_count() const { return node_count_; }
  std::size_t edge_count() const;

  /// Outgoing edges to materialized nodes, Stay included, in action order.
  std::vector<Edge> edges_from(ProductState p) const;

  std::size_t index(ProductState p) const { return map_->index(p.cell) * dfa_->state_count() + p.dfa; }
  ProductState state(std::size_t index) const {
    return {map_->cell(index / dfa_->state_count()), static_cast<StateId>(index % dfa_->state_count())};
  }
  std::size_t index_space() const { return present_.size(); }

  const GridMap& map() const { return *map_; }
  const TotalDfa& dfa() const { return *dfa_; }

 private:
  std::optional<ProductState> successor(ProductState p, Action a) const;

  const GridMap* map_;
  const TotalDfa* dfa_;
  std::vector<bool> known_;
  std::vector<bool> present_;
  std::size_t node_count_ = 0;
};

/// True iff an accepting node is reachable from `from` without visiting a
/// trash node. Throws InputError if `from` is not in the graph.
bool accepting_reachable(const ProductGraph& g, ProductState from);

using WeightFn = std::function<int(Cell, Action)>;

/// Single-source minimum-weight paths over non-trash nodes, Stay excluded.
class ShortestPaths {
 public:
  struct Path {
    std::vector<ProductState> states;  // source first
    std::vector<Action> actions;
    long weight = 0;
  };

  ShortestPaths(const ProductGraph& g, ProductState source, const WeightFn& weight);

  ProductState source() const { return source_; }
  std::optional<long> weight_to(ProductState p) const;
  /// Throws if `p` is unreachable.
  Path path_to(ProductState p) const;

  /// Every reached node, in node-index order.
  std::vector<ProductState> reached() const;

 private:
  const ProductGraph* graph_;
  ProductState source_;
  std::vector<long> weight_;
  std::vector<std::size_t> parent_;
  std::vector<Action> via_;
};

ShortestPaths min_weight_paths(const ProductGraph& g, ProductState from);
ShortestPaths min_weight_paths(const ProductGraph& g, ProductState from, const WeightFn& weight);

}  // namespace tlfe

#endif  // TLFE_PRODUCT_HPP
