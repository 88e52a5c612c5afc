#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omega_trees/error.hpp"
#include "omega_trees/kborder.hpp"
#include "omega_trees/linorders.hpp"
#include "support/generators.hpp"

using namespace omt;

namespace {

LinOrder ord(std::vector<Nat> ascending) { return LinOrder::from_sequence(std::move(ascending)); }
PartialMap map_of(std::vector<std::pair<Nat, Nat>> pairs) { return PartialMap::from_pairs(pairs); }

}  // namespace

TEST_CASE("construction validates the order axioms") {
  LinOrder o = LinOrder::from_pairs({7, 5}, {{5, 7}});
  CHECK(o.elements() == std::vector<Nat>{5, 7});
  CHECK(o.leq(5, 7));
  CHECK_FALSE(o.less(7, 5));

  auto code_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidInput;
  };
  // not total
  CHECK(code_of([] { LinOrder::from_pairs({1, 2}, {}); }) == ErrorCode::InvalidOrder);
  // not antisymmetric
  CHECK(code_of([] { LinOrder::from_pairs({1, 2}, {{1, 2}, {2, 1}}); }) ==
        ErrorCode::InvalidOrder);
  // not transitive: 1<2, 2<3, 3<1
  CHECK(code_of([] { LinOrder::from_pairs({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}}); }) ==
        ErrorCode::InvalidOrder);
  CHECK(code_of([] { LinOrder::from_pairs({1}, {{1, 4}}); }) == ErrorCode::InvalidOrder);
  CHECK(code_of([] { PartialMap::from_pairs({{1, 2}, {1, 3}}); }) == ErrorCode::InvalidInput);
}

TEST_CASE("suc and initial_segment_rank") {
  CHECK(suc(ord({5, 7}), 5) == std::optional<Nat>(7));
  CHECK_FALSE(suc(ord({5, 7}), 7).has_value());
  CHECK(suc(ord({2, 4, 6}), 4) == std::optional<Nat>(6));
  CHECK(initial_segment_rank(ord({2, 4, 6}), 6) == 2);
  CHECK(initial_segment_rank(ord({9, 3}), 9) == 0);
  CHECK(initial_segment_rank(ord({1, 3, 5, 7}), 5) == 2);
  CHECK_THROWS_AS(suc(ord({1}), 2), Error);
  try {
    initial_segment_rank(ord({1}), 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInField);
  }
}

TEST_CASE("admissible_check examples and diagnostics") {
  LinOrder lin = ord({0, 1, 2});
  LinOrder wo = ord({5, 7});
  CHECK(admissible_check(map_of({{0, 5}, {1, 7}}), lin, wo));
  auto bad = admissible_check(map_of({{0, 7}}), lin, wo);
  CHECK_FALSE(bad);
  CHECK(bad.failed_condition == 4);
  CHECK(admissible_check(PartialMap{}, lin, wo));

  CHECK(admissible_check(map_of({{0, 9}}), lin, wo).failed_condition == 1);
  CHECK(admissible_check(map_of({{1, 5}}), lin, wo).failed_condition == 2);
  CHECK(admissible_check(map_of({{0, 7}, {1, 5}}), lin, wo).failed_condition == 3);
  // Mapping 2 would need a successor of 7.
  CHECK(admissible_check(map_of({{0, 5}, {1, 7}, {2, 7}}), lin, wo).failed_condition == 3);
}

TEST_CASE("strongly_admissible_check examples") {
  LinOrder lin = ord({0, 1, 2});
  LinOrder wo = ord({5, 7});
  CHECK(strongly_admissible_check(map_of({{0, 5}, {1, 7}}), lin, wo));
  CHECK(strongly_admissible_check(map_of({{3, 3}, {4, 4}}), ord({3, 4}), ord({3, 4})));
  // The empty map extends by least -> least.
  CHECK_FALSE(strongly_admissible_check(PartialMap{}, lin, wo));
  CHECK(admissible_check(map_of({{0, 5}}), lin, wo));
  CHECK_FALSE(strongly_admissible_check(map_of({{0, 5}}), lin, wo));
}

TEST_CASE("solver examples") {
  CHECK(solve_strongly_admissible(ord({0, 1, 2}), ord({5, 7})) == map_of({{0, 5}, {1, 7}}));
  CHECK(solve_strongly_admissible(ord({4, 2, 9}), ord({4, 2, 9})) ==
        map_of({{4, 4}, {2, 2}, {9, 9}}));
  CHECK(solve_strongly_admissible(ord({8}), ord({3, 1, 2})) == map_of({{8, 3}}));
  CHECK(solve_strongly_admissible(ord({1, 2}), ord({})).empty());
  CHECK(brute_force_strongly_admissible(ord({1, 2}), ord({})) == std::vector<PartialMap>{{}});
  CHECK_THROWS_AS(solve_strongly_admissible(ord({}), ord({1})), Error);
}

TEST_CASE("brute force examples") {
  auto one = brute_force_strongly_admissible(ord({4}), ord({9}));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == map_of({{4, 9}}));
  auto two = brute_force_strongly_admissible(ord({0, 1, 2}), ord({5, 7}));
  REQUIRE(two.size() == 1);
  CHECK(two[0] == map_of({{0, 5}, {1, 7}}));
  try {
    brute_force_strongly_admissible(ord({0, 1, 2, 3, 4, 5}), ord({0}));
    FAIL("expected FieldTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldTooLarge);
  }
}

TEST_CASE("uniqueness: brute force agrees with the solver on all small order pairs") {
  // lin orders on subsets of {0,1,2}; well-orders on subsets of {1,2,3} so the
  // fields overlap partially.
  auto lins = testing::all_orders_up_to(3);
  auto wos = testing::all_orders_up_to(3, 1);
  std::size_t pairs = 0;
  for (const LinOrder& lin : lins) {
    for (const LinOrder& wo : wos) {
      auto found = brute_force_strongly_admissible(lin, wo);
      PartialMap solved = solve_strongly_admissible(lin, wo);
      REQUIRE(found.size() == 1);
      CHECK(found[0] == solved);
      CHECK(admissible_check(solved, lin, wo));
      CHECK(strongly_admissible_check(solved, lin, wo));
      ++pairs;
    }
  }
  CHECK(pairs == 15 * 15);
}

TEST_CASE("solver output on larger orders stays strongly admissible") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Nat> a(testing::uniform(rng, 1, 8)), b(testing::uniform(rng, 1, 8));
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = 3 * i;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = 2 * i + 1;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    LinOrder lin = ord(a), wo = ord(b);
    PartialMap f = solve_strongly_admissible(lin, wo);
    CHECK(strongly_admissible_check(f, lin, wo));
    CHECK(f.size() == std::min(a.size(), b.size()));
  }
}

TEST_CASE("initial_similarity_check examples") {
  CHECK(initial_similarity_check(map_of({{1, 1}, {2, 2}}), ord({1, 2}), ord({1, 2})));
  CHECK(initial_similarity_check(map_of({{0, 5}, {1, 7}}), ord({0, 1}), ord({5, 7, 9})));
  CHECK_FALSE(initial_similarity_check(map_of({{0, 5}, {1, 9}}), ord({0, 1}), ord({5, 7, 9})));
  CHECK_FALSE(initial_similarity_check(map_of({{0, 7}, {1, 5}}), ord({0, 1}), ord({5, 7, 9})));
  CHECK_FALSE(initial_similarity_check(map_of({{0, 5}}), ord({0, 1}), ord({5, 7, 9})));
}

TEST_CASE("kb_order_of output passes LinOrder validation") {
  testing::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Tree t = testing::random_finite_tree(rng, testing::uniform(rng, 1, 30), 3, 4);
    LinOrder kb = kb_order_of(t);
    LinOrder rebuilt = LinOrder::from_pairs(kb.elements(), kb.pairs());
    CHECK(rebuilt == kb);
  }
}

TEST_CASE("chain trees of finite orders have bounded height and empty body") {
  // 2 < 0 < 1 as a strict order on {0,1,2}
  LinOrder o = ord({2, 0, 1});
  Tree t = chain_tree([o](Nat a, Nat b) { return o.contains(a) && o.contains(b) && o.less(a, b); },
                      3);
  auto nodes = all_nodes(t);
  std::size_t longest = 0;
  for (const FinSeq& u : nodes) longest = std::max(longest, u.size());
  CHECK(longest == o.size());
  CHECK(t.contains({1, 0, 2}));
  CHECK_FALSE(t.contains({2, 0}));
}
