#include <doctest.h>
#include <json.hpp>

#include "support.hpp"

using namespace tlfe;
using tlfe::testing::kPhi0;

namespace {

const ObservationSet kAbc{"a", "b", "c"};

TotalDfa phi0_dfa() { return compile_dfa(parse_formula(kPhi0, kAbc), kAbc); }

// Forward search in the self product from one pair; true iff a target is hit.
bool reaches_target(const SelfProduct& p, std::size_t from) {
  std::vector<bool> seen(p.pairs.size());
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    std::size_t at = stack.back();
    stack.pop_back();
    if (p.is_target[at]) return true;
    for (std::uint32_t l = 0; l < p.letter_count; ++l) {
      std::size_t to = p.successor(at, Letter{l});
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  return false;
}

}  // namespace

TEST_SUITE("commit") {

TEST_CASE("self product of a trivially accepting automaton has no initial pairs") {
  TotalDfa d = compile_dfa(Formula::truth(), kAbc);
  SelfProduct p = self_product(d);
  CHECK(p.initials.empty());
}

TEST_CASE("self product structure for the commit example") {
  TotalDfa d = phi0_dfa();
  SelfProduct p = self_product(d);
  CHECK(p.pairs.size() <= d.state_count() * d.state_count());
  CHECK(p.next.size() == p.pairs.size() * d.letter_count());
  const StateId s0 = d.initial();
  const StateId committed = d.next(s0, kAbc.letter({"b"}));
  const StateId waiting = d.next(s0, kAbc.letter({"c"}));
  CHECK(committed != waiting);
  CHECK(p.initials.size() == 3);  // (s0, s) for the three non-accepting live states

  auto pair_of = [&](StateId s) { return *p.index_of({s0, s}); };
  CHECK(reaches_target(p, pair_of(committed)));
  CHECK_FALSE(reaches_target(p, pair_of(waiting)));
  CHECK_FALSE(reaches_target(p, pair_of(s0)));

  // Componentwise transitions.
  for (std::size_t i = 0; i < p.pairs.size(); ++i) {
    auto [a, b] = p.pairs[i];
    CHECK(p.is_target[i] == (d.is_accepting(a) && !d.is_accepting(b)));
    for (std::uint32_t l = 0; l < p.letter_count; ++l) {
      auto [x, y] = p.pairs[p.successor(i, Letter{l})];
      CHECK(x == d.next(a, Letter{l}));
      CHECK(y == d.next(b, Letter{l}));
    }
  }
}

TEST_CASE("commit states of the commit example") {
  TotalDfa d = phi0_dfa();
  CommitReport r = commit_states(d);
  const StateId committed = d.next(d.initial(), kAbc.letter({"b"}));
  REQUIRE(r.commit_states == std::vector<StateId>{committed});
  CHECK(r.witnesses.at(committed) == std::vector<Letter>{kAbc.letter({"a"})});
  CHECK(verify_witness(d, committed, r.witnesses.at(committed)));
  CHECK_FALSE(r.is_commit(d.next(d.initial(), kAbc.letter({"c"}))));

  auto j = nlohmann::json::parse(commit_report_to_json(d, r));
  CHECK(j["commit_states"] == nlohmann::json::array({committed}));
  CHECK(j["witnesses"][std::to_string(committed)] == nlohmann::json::parse(R"([["a"]])"));
}

TEST_CASE("an eventuality has no commit states") {
  ObservationSet a{"a"};
  TotalDfa d = compile_dfa(parse_formula("F a", a), a);
  CHECK(commit_states(d).commit_states.empty());
  CHECK(tlfe::testing::enumerate_commits(d, 4).commits.empty());
}

TEST_CASE("witness verification") {
  TotalDfa d = phi0_dfa();
  const StateId committed = d.next(d.initial(), kAbc.letter({"b"}));
  std::vector<Letter> a{kAbc.letter({"a"})};
  std::vector<Letter> bc{kAbc.letter({"b"}), kAbc.letter({"c"})};
  CHECK(verify_witness(d, committed, a));
  CHECK_FALSE(verify_witness(d, committed, bc));
  CHECK_FALSE(verify_witness(d, d.initial(), a));
  CHECK_FALSE(verify_witness(d, d.initial(), bc));
}

TEST_CASE("commit states agree with exhaustive enumeration on random automata") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 300; ++i) {
    TotalDfa d = tlfe::testing::random_dfa(rng, 5, 2);
    CommitReport r = commit_states(d);
    auto found = tlfe::testing::enumerate_commits(d, 64);
    INFO(dfa_to_json(d));
    CHECK(std::set<StateId>(r.commit_states.begin(), r.commit_states.end()) == found.commits);
    CHECK(std::is_sorted(r.commit_states.begin(), r.commit_states.end()));
    CHECK(r.witnesses.size() == r.commit_states.size());
    for (StateId s : r.commit_states) {
      CHECK_FALSE(d.is_accepting(s));
      CHECK_FALSE(d.is_trash(s));
      CHECK(verify_witness(d, s, r.witnesses.at(s)));
    }
  }
}

TEST_CASE("a dead state is a commit state when the task is satisfiable") {
  ObservationSet a{"a"};
  // 0 -a-> 1 (accepting), 0 -{}-> 2, and 2 can only fall into trash 3.
  TotalDfa d(a, 4, 0, 3, {false, true, false, false}, {2, 1, 1, 1, 3, 3, 3, 3});
  CommitReport r = commit_states(d);
  CHECK(r.is_commit(2));
  CHECK_FALSE(r.is_commit(0));
  CHECK(verify_witness(d, 2, r.witnesses.at(2)));
}

TEST_CASE("witnesses are shortest") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    TotalDfa d = tlfe::testing::random_dfa(rng, 4, 1);
    CommitReport r = commit_states(d);
    for (StateId s : r.commit_states) {
      const std::size_t len = r.witnesses.at(s).size();
      // No shorter word over a two-letter alphabet works.
      for (std::size_t n = 0; n < len; ++n) {
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
          std::vector<Letter> w(n);
          for (std::size_t k = 0; k < n; ++k) w[k] = Letter{(bits >> k) & 1u};
          CHECK_FALSE(verify_witness(d, s, w));
        }
      }
    }
  }
}

}  // TEST_SUITE
