#include <doctest.h>

#include "support.hpp"
#include "tlfe/bench.hpp"
#include "tlfe/error.hpp"

using namespace tlfe;

namespace {

const ObservationSet kLps{"l", "p", "s"};

TotalDfa rescue_dfa() { return compile_dfa(parse_formula(kRescueFormula, kLps), kLps); }

GridMap map_from_rows(const std::vector<std::string>& rows, Cell start = {0, 0}) {
  std::string text = "map " + std::to_string(rows.front().size()) + " " + std::to_string(rows.size()) +
                     "\nstart " + std::to_string(start.col) + " " + std::to_string(start.row) +
                     "\nlegend L=l P=p S=s\n";
  for (const auto& r : rows) text += r + "\n";
  return load_map(text);
}

// Every path a shortest-path query returns replays consistently.
void check_path(const ProductGraph& g, const ShortestPaths::Path& path) {
  const auto& dfa = g.dfa();
  const auto& map = g.map();
  REQUIRE(path.states.size() == path.actions.size() + 1);
  for (std::size_t i = 0; i < path.actions.size(); ++i) {
    const ProductState from = path.states[i];
    const ProductState to = path.states[i + 1];
    CHECK(path.actions[i] != Action::Stay);
    CHECK(map.step(from.cell, path.actions[i]) == to.cell);
    CHECK(dfa.next(from.dfa, map.letter(to.cell)) == to.dfa);
    CHECK_FALSE(dfa.is_trash(to.dfa));
  }
  CHECK(path.weight == static_cast<long>(path.actions.size()));
}

}  // namespace

TEST_SUITE("product") {

TEST_CASE("initial product state consumes the start label") {
  TotalDfa dfa = rescue_dfa();
  GridMap plain = map_from_rows({"..", ".."});
  CHECK(initial_product_state(plain, dfa).dfa == dfa.initial());
  GridMap on_p = map_from_rows({"P.", ".."});
  CHECK(initial_product_state(on_p, dfa).dfa == dfa.next(dfa.initial(), kLps.letter({"p"})));
}

TEST_CASE("an empty known set gives an empty graph") {
  TotalDfa dfa = rescue_dfa();
  GridMap m = map_from_rows({"...", "..."});
  ProductGraph g(m, dfa);
  g.expand(KnownSet(m), initial_product_state(m, dfa));
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("single cell map") {
  ObservationSet p{"p"};
  TotalDfa dfa = compile_dfa(parse_formula("F p", p), p);
  GridMap m = load_map("map 1 1\nstart 0 0\nlegend P=p\n.\n");
  ProductGraph g(m, dfa);
  const ProductState s0 = initial_product_state(m, dfa);
  g.expand(sense(m, m.start(), 3, KnownSet(m)), s0);
  CHECK(g.node_count() == 1);
  CHECK(g.contains(s0));
  CHECK_FALSE(g.is_accepting(s0));
  auto edges = g.edges_from(s0);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].action == Action::Stay);
  CHECK(edges[0].to == s0);
  CHECK_FALSE(accepting_reachable(g, s0));
}

TEST_CASE("alphabet mismatch is rejected") {
  ObservationSet ab{"a", "b"};
  TotalDfa dfa = compile_dfa(parse_formula("F a", ab), ab);
  GridMap m = map_from_rows({".."});
  CHECK_THROWS_AS(ProductGraph(m, dfa), InputError);
}

TEST_CASE("edges follow the map and the automaton") {
  TotalDfa dfa = rescue_dfa();
  GridMap m = random_map(20, 5, 9);
  ProductGraph g(m, dfa);
  KnownSet k = tlfe::testing::everything_known(m);
  g.expand(k, initial_product_state(m, dfa));
  CHECK(g.node_count() <= m.cell_count() * dfa.state_count());
  std::size_t counted = 0;
  for (std::size_t i = 0; i < g.index_space(); ++i) {
    ProductState p = g.state(i);
    if (!g.contains(p)) continue;
    CHECK(g.index(p) == i);
    for (const auto& e : g.edges_from(p)) {
      ++counted;
      CHECK(m.step(p.cell, e.action) == e.to.cell);
      CHECK(dfa.next(p.dfa, m.letter(e.to.cell)) == e.to.dfa);
      CHECK(e.weight == 1);
      CHECK(g.contains(e.to));
    }
  }
  CHECK(counted == g.edge_count());
}

TEST_CASE("accepting reachability") {
  TotalDfa dfa = rescue_dfa();
  SUBCASE("from an accepting node") {
    GridMap m = map_from_rows({"PS.", "..."});
    ProductGraph g(m, dfa);
    ProductState s = initial_product_state(m, dfa);
    g.expand(tlfe::testing::everything_known(m), s);
    CHECK(accepting_reachable(g, s));
    ProductState accept{{1, 0}, dfa.next(s.dfa, kLps.letter({"s"}))};
    REQUIRE(g.contains(accept));
    CHECK(g.is_accepting(accept));
    CHECK(accepting_reachable(g, accept));
  }
  SUBCASE("unlabeled region") {
    GridMap m = map_from_rows({"....", "....", "...."});
    ProductGraph g(m, dfa);
    ProductState s = initial_product_state(m, dfa);
    g.expand(tlfe::testing::everything_known(m), s);
    CHECK_FALSE(accepting_reachable(g, s));
  }
  SUBCASE("only edges into trash") {
    // The only way on is an exit before any person.
    GridMap m = map_from_rows({".S", "SP"});
    ProductGraph g(m, dfa);
    ProductState s = initial_product_state(m, dfa);
    g.expand(tlfe::testing::everything_known(m), s);
    CHECK(g.contains({{1, 0}, dfa.trash()}));
    CHECK_FALSE(accepting_reachable(g, s));
  }
  SUBCASE("unknown source") {
    GridMap m = map_from_rows({".."});
    ProductGraph g(m, dfa);
    CHECK_THROWS_AS(accepting_reachable(g, initial_product_state(m, dfa)), InputError);
  }
}

TEST_CASE("minimum weight paths") {
  TotalDfa dfa = rescue_dfa();
  GridMap m = map_from_rows({"......"});
  ProductGraph g(m, dfa);
  ProductState s = initial_product_state(m, dfa);
  g.expand(tlfe::testing::everything_known(m), s);
  ShortestPaths sp = min_weight_paths(g, s);
  CHECK(sp.weight_to(s) == 0);
  ProductState far{{5, 0}, s.dfa};
  CHECK(sp.weight_to(far) == 5);
  auto path = sp.path_to(far);
  CHECK(path.actions == std::vector<Action>(5, Action::Right));
  check_path(g, path);

  ShortestPaths heavy = min_weight_paths(g, s, [](Cell, Action) { return 3; });
  CHECK(heavy.weight_to(far) == 15);

  CHECK_THROWS(sp.path_to({{5, 0}, dfa.trash()}));
  CHECK_FALSE(sp.weight_to({{5, 0}, dfa.trash()}).has_value());
}

TEST_CASE("shortest paths change automaton state across labels") {
  TotalDfa dfa = rescue_dfa();
  GridMap m = map_from_rows({"..P..S"});
  ProductGraph g(m, dfa);
  ProductState s = initial_product_state(m, dfa);
  g.expand(tlfe::testing::everything_known(m), s);
  ShortestPaths sp = min_weight_paths(g, s);
  const StateId after_p = dfa.next(s.dfa, kLps.letter({"p"}));
  const StateId done = dfa.next(after_p, kLps.letter({"s"}));
  CHECK(dfa.is_accepting(done));
  CHECK(sp.weight_to({{5, 0}, done}) == 5);
  CHECK_FALSE(sp.weight_to({{4, 0}, s.dfa}).has_value());
  check_path(g, sp.path_to({{5, 0}, done}));
}

TEST_CASE("paths never contain trash and replay consistently") {
  TotalDfa dfa = rescue_dfa();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GridMap m = random_map(20, 5, seed);
    ProductGraph g(m, dfa);
    ProductState s = initial_product_state(m, dfa);
    g.expand(tlfe::testing::everything_known(m), s);
    ShortestPaths sp = min_weight_paths(g, s);
    auto reached = sp.reached();
    CHECK(std::is_sorted(reached.begin(), reached.end(),
                         [&](ProductState a, ProductState b) { return g.index(a) < g.index(b); }));
    for (ProductState p : reached) {
      CHECK_FALSE(dfa.is_trash(p.dfa));
      auto path = sp.path_to(p);
      check_path(g, path);
      CHECK(path.weight == *sp.weight_to(p));
      CHECK(path.weight >= manhattan(s.cell, p.cell));
    }
  }
}

TEST_CASE("the graph only grows and reachability is monotone") {
  TotalDfa dfa = rescue_dfa();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GridMap m = random_map(20, 5, seed);
    ProductGraph g(m, dfa);
    ProductState s = initial_product_state(m, dfa);
    KnownSet k(m);
    std::mt19937_64 rng(seed);
    std::vector<bool> present(g.index_space());
    bool reachable = false;
    Cell walker = m.start();
    for (int i = 0; i < 60; ++i) {
      sense_in_place(m, walker, 3, k);
      g.expand(k, s);
      const std::size_t nodes = g.node_count();
      g.expand(k, s);
      CHECK(g.node_count() == nodes);  // idempotent
      for (std::size_t j = 0; j < present.size(); ++j) {
        if (present[j]) CHECK(g.contains(g.state(j)));
        present[j] = g.contains(g.state(j));
        if (present[j]) CHECK(k.is_known(m.index(g.state(j).cell)));
      }
      const bool now = accepting_reachable(g, s);
      CHECK((!reachable || now));
      reachable = now;
      // Random walk over known cells to widen the known set.
      for (int t = 0; t < 4; ++t) {
        auto to = m.step(walker, kMoves[rng() % 4]);
        if (to && !m.is_one_way(*to)) walker = *to;
      }
    }
  }
}

}  // TEST_SUITE
