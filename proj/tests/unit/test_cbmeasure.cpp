#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "omega_trees/cbmeasure.hpp"
#include "omega_trees/error.hpp"
#include "omega_trees/trees.hpp"
#include "support/generators.hpp"

using namespace omt;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

Automaton full_binary() { return Automaton::with_states(1, 0, {{0, 0, 0}, {0, 1, 0}}); }

// q0: 0->q0, 1->q1; q1: 0->q1. Two single cycles.
Automaton countable_pair() { return Automaton::with_states(2, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}}); }

// root: 0->B, 1->C; B binary; C: 0->C.
Automaton branch_into() {
  return Automaton({"root", "B", "C"}, State{0},
                   {{0, 0, 1}, {0, 1, 2}, {1, 0, 1}, {1, 1, 1}, {2, 0, 2}});
}

// q: 0->r; r binary.
Automaton prefix_zero() { return Automaton::with_states(2, 0, {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}}); }

// a: 0->a, 1->b; b: 0->a. Strings without two consecutive 1s.
Automaton no_eleven() { return Automaton::with_states(2, 0, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}}); }

std::vector<bool> reachable_from(const Automaton& a, State q) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack{q};
  seen[q] = true;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (const auto& [label, t] : a.out(s))
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
  }
  return seen;
}

std::vector<State> members(const std::vector<bool>& flags) {
  std::vector<State> out;
  for (State q = 0; q < flags.size(); ++q)
    if (flags[q]) out.push_back(q);
  return out;
}

std::vector<State> sorted(std::vector<State> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Live iff a path of length |Q| starts at q (it must repeat a state).
std::vector<State> live_oracle(const Automaton& a) {
  std::vector<bool> flags(a.num_states());
  for (State q = 0; q < a.num_states(); ++q)
    flags[q] = testing::count_paths(a, q, a.num_states()) > 0;
  return members(flags);
}

// Closed walks r -> r of length exactly len.
Nat closed_walks(const Automaton& a, State r, std::size_t len) {
  std::vector<Nat> ways(a.num_states(), 0);
  ways[r] = 1;
  for (std::size_t step = 0; step < len; ++step) {
    std::vector<Nat> next(a.num_states(), 0);
    for (State s = 0; s < a.num_states(); ++s)
      for (const auto& [label, t] : a.out(s)) next[t] += ways[s];
    ways = std::move(next);
  }
  return ways[r];
}

// Uncountable iff some reachable r has two distinct closed walks of one
// length (at most 2|Q|).
std::vector<State> uncountable_oracle(const Automaton& a) {
  const std::size_t n = a.num_states();
  std::vector<bool> rich(n, false);
  for (State r = 0; r < n; ++r)
    for (std::size_t len = 1; len <= 2 * n && !rich[r]; ++len) rich[r] = closed_walks(a, r, len) >= 2;
  std::vector<bool> flags(n, false);
  for (State q = 0; q < n; ++q) {
    auto reach = reachable_from(a, q);
    for (State r = 0; r < n; ++r) flags[q] = flags[q] || (reach[r] && rich[r]);
  }
  return members(flags);
}

std::vector<State> positive_oracle(const Automaton& a) {
  const std::size_t n = a.num_states();
  std::vector<bool> complete_closed(n, false);
  for (State r = 0; r < n; ++r) {
    auto reach = reachable_from(a, r);
    bool all = true;
    for (State s = 0; s < n; ++s)
      if (reach[s] && !(a.step(s, 0) && a.step(s, 1))) all = false;
    complete_closed[r] = all;
  }
  std::vector<bool> flags(n, false);
  for (State q = 0; q < n; ++q) {
    auto reach = reachable_from(a, q);
    for (State r = 0; r < n; ++r) flags[q] = flags[q] || (reach[r] && complete_closed[r]);
  }
  return members(flags);
}

Automaton from_state(const Automaton& a, State q) {
  return Automaton(a.names(), q, a.edges());
}

Rational power_of_half(std::size_t d) { return Rational(1, Nat{1} << d); }

}  // namespace

TEST_CASE("live_states examples") {
  CHECK(live_states(full_binary()) == std::vector<State>{0});
  CHECK(live_states(Automaton::with_states(1, 0, {})).empty());
  CHECK(live_states(Automaton::with_states(2, 0, {{0, 0, 1}, {1, 0, 1}})) ==
        std::vector<State>{0, 1});
}

TEST_CASE("uncountable_states examples") {
  CHECK(uncountable_states(full_binary()) == std::vector<State>{0});
  CHECK(uncountable_states(countable_pair()).empty());
  for (std::size_t d = 0; d <= 12; ++d) CHECK(testing::count_paths(countable_pair(), 0, d) == d + 1);
  Automaton into = Automaton::with_states(2, 0, {{0, 5, 1}, {1, 0, 1}, {1, 1, 1}});
  CHECK(uncountable_states(into) == std::vector<State>{0, 1});
}

TEST_CASE("perfect_kernel examples") {
  Automaton k = perfect_kernel(full_binary());
  CHECK(k.num_states() == 1);
  CHECK(k.edges().size() == 2);
  CHECK(perfect_kernel(countable_pair()).num_states() == 0);
  Automaton bk = perfect_kernel(branch_into());
  CHECK(bk.names() == std::vector<std::string>{"root", "B"});
  CHECK(bk.edges().size() == 3);
  Tree kt = regular_tree(bk);
  CHECK(kt.contains({0, 1, 1}));
  CHECK_FALSE(kt.contains({1}));
}

TEST_CASE("scat_member examples") {
  auto full = scat_member(full_binary(), {0});
  CHECK(full.node_scattered);
  CHECK(full.cone == ConeClass::BranchKernelCone);
  CHECK(scat_member(countable_pair(), {1}).cone == ConeClass::BranchScatteredCone);
  CHECK(scat_member(Automaton::with_states(2, 0, {{0, 0, 1}}), {0}).cone == ConeClass::NoBranches);
  CHECK(scat_member(branch_into(), {1, 0}).cone == ConeClass::BranchScatteredCone);
  CHECK(code_of([] { scat_member(countable_pair(), {1, 1}); }) == ErrorCode::NotAMember);
}

TEST_CASE("measure_body examples") {
  MeasureReport full = measure_body(full_binary(), 10);
  REQUIRE(full.upper_bounds.size() == 11);
  for (const Rational& v : full.upper_bounds) CHECK(v == Rational(1, 1));
  CHECK(full.positive);

  MeasureReport half = measure_body(prefix_zero(), 10);
  CHECK(half.upper_bounds[0] == Rational(1, 1));
  for (std::size_t d = 1; d <= 10; ++d) CHECK(half.upper_bounds[d] == Rational(1, 2));
  CHECK(half.positive);

  MeasureReport fib = measure_body(no_eleven(), 20);
  CHECK(fib.upper_bounds[20] == Rational(17711, 1048576));
  CHECK_FALSE(fib.positive);

  CHECK(code_of([] { measure_body(Automaton::with_states(1, 0, {{0, 2, 0}}), 3); }) ==
        ErrorCode::NonBinaryAlphabet);
}

TEST_CASE("no-11 measure bounds agree with enumeration of all strings") {
  // Fibonacci: F(d+2) strings of length d avoid 11.
  MeasureReport r = measure_body(no_eleven(), 30);
  Nat count = 1, next = 2;
  for (std::size_t d = 0; d <= 30; ++d) {
    CHECK(r.upper_bounds[d] == Rational(count, Nat{1} << d));
    std::tie(count, next) = std::pair{next, count + next};
  }
  Nat brute = 0;
  for (Nat bits = 0; bits < (Nat{1} << 16); ++bits)
    if ((bits & (bits >> 1)) == 0) ++brute;
  CHECK(r.upper_bounds[16] == Rational(brute, Nat{1} << 16));
}

TEST_CASE("positive_measure and splitting_witness examples") {
  CHECK(positive_measure(full_binary(), {}));
  CHECK_FALSE(positive_measure(no_eleven(), {}));
  CHECK(positive_measure(prefix_zero(), {}));
  CHECK(splitting_witness(full_binary(), {}) == std::pair<FinSeq, FinSeq>{{0}, {1}});
  CHECK(splitting_witness(prefix_zero(), {}) == std::pair<FinSeq, FinSeq>{{0, 0}, {0, 1}});
  CHECK(code_of([] { splitting_witness(no_eleven(), {}); }) == ErrorCode::NoPositiveMeasure);
  CHECK(code_of([] { positive_measure(no_eleven(), {1, 1}); }) == ErrorCode::NotAMember);
}

TEST_CASE("binary_embedding examples") {
  std::map<FinSeq, FinSeq> full{{{}, {}}, {{0}, {0}}, {{1}, {1}}};
  CHECK(binary_embedding(full_binary(), 1) == full);
  std::map<FinSeq, FinSeq> shifted{{{}, {}}, {{0}, {0, 0}}, {{1}, {0, 1}}};
  CHECK(binary_embedding(prefix_zero(), 1) == shifted);
  CHECK(code_of([] { binary_embedding(no_eleven(), 2); }) == ErrorCode::NoPositiveMeasure);
}

TEST_CASE("state classes agree with independent oracles on random automata") {
  testing::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = testing::uniform(rng, 1, 6);
    Nat alphabet = testing::uniform(rng, 1, 3);
    Automaton a = testing::random_automaton(rng, n, alphabet, 0.5);
    CHECK(sorted(live_states(a)) == live_oracle(a));
    CHECK(sorted(uncountable_states(a)) == uncountable_oracle(a));
    auto cls = classify_states(a);
    for (State q = 0; q < n; ++q) {
      if (cls[q].uncountable) CHECK(cls[q].live);
      if (cls[q].positive) CHECK(cls[q].live);
    }
  }
}

TEST_CASE("positivity agrees with the oracle and with the measure bounds") {
  testing::Rng rng(202);
  const std::size_t depth = 60;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = testing::uniform(rng, 1, 4);
    Automaton a = testing::random_automaton(rng, n, 2, 0.8);
    CHECK(sorted(positive_states(a)) == positive_oracle(a));
    for (State q = 0; q < n; ++q) {
      Automaton from_q = from_state(a, q);
      MeasureReport r = measure_body(from_q, depth);
      for (std::size_t d = 1; d <= depth; ++d) CHECK(r.upper_bounds[d] <= r.upper_bounds[d - 1]);
      for (std::size_t d = 0; d <= 12; ++d)
        CHECK(r.upper_bounds[d] == Rational(testing::count_paths(a, q, d), Nat{1} << d));
      bool positive = positive_measure(from_q, {});
      CHECK(r.positive == positive);
      if (positive) {
        // A complete closed state lies within n-1 steps.
        CHECK(r.upper_bounds[depth] >= power_of_half(n - 1));
      } else {
        // Every n steps the path dies with probability at least 2^-n.
        Rational survive(1, 1);
        Rational step((Nat{1} << n) - 1, Nat{1} << n);
        for (std::size_t k = 0; k < depth / n; ++k) {
          survive = Rational(survive.num() * step.num(), survive.den() * step.den());
          if (survive.den() > (Nat{1} << 40)) break;  // bound is only getting weaker to track
        }
        if (survive.den() <= (Nat{1} << 40)) CHECK(r.upper_bounds[depth] <= survive);
      }
    }
  }
}

TEST_CASE("splitting witnesses recurse to depth 4") {
  testing::Rng rng(303);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Automaton a = testing::random_automaton(rng, testing::uniform(rng, 1, 4), 2, 0.8);
    if (!positive_measure(a, {})) continue;
    ++checked;
    std::function<void(const FinSeq&, int)> recurse = [&](const FinSeq& u, int level) {
      if (level == 4) return;
      auto [v, w] = splitting_witness(a, u);
      CHECK(is_proper_prefix(u, v));
      CHECK(is_proper_prefix(u, w));
      CHECK(incompatible(v, w));
      CHECK(positive_measure(a, v));
      CHECK(positive_measure(a, w));
      recurse(v, level + 1);
      recurse(w, level + 1);
    };
    recurse({}, 0);
    auto phi = binary_embedding(a, 3);
    CHECK(phi.size() == 15);
    for (const auto& [s, img] : phi) {
      for (const auto& [t, img2] : phi) {
        if (is_proper_prefix(s, t)) CHECK(is_proper_prefix(img, img2));
        if (incompatible(s, t)) CHECK(incompatible(img, img2));
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("kernel nodes split inside the kernel within 3|Q| levels") {
  testing::Rng rng(404);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = testing::uniform(rng, 1, 5);
    Automaton a = testing::random_automaton(rng, n, 2, 0.7);
    Automaton k = perfect_kernel(a);
    if (!k.initial()) continue;
    ++checked;
    Tree kt = regular_tree(k);
    for (const FinSeq& u : nodes_to_depth(kt, 4)) {
      // Two incompatible extensions exist iff some extension has two children.
      bool split = false;
      std::vector<FinSeq> frontier{u};
      for (std::size_t level = 0; level <= 3 * n && !split && !frontier.empty(); ++level) {
        std::vector<FinSeq> next;
        for (const FinSeq& v : frontier) {
          auto kids = kt.children(v);
          if (kids.size() >= 2) split = true;
          for (Nat k : kids) next.push_back(extend(v, k));
        }
        frontier = std::move(next);
      }
      CHECK(split);
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("dot output marks the state classes") {
  std::string dot = automaton_to_dot(branch_into());
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("red") != std::string::npos);
  CHECK(dot.find("orange") != std::string::npos);
  CHECK(dot.find("peripheries=2") != std::string::npos);
}
