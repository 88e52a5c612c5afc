#include "omega_trees/cbmeasure.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "omega_trees/error.hpp"

namespace omt {

namespace {

using Flags = std::vector<bool>;

struct Components {
  std::vector<std::size_t> of;     // component index per state
  std::vector<std::size_t> size;   // states per component
  std::vector<std::size_t> edges;  // edges inside each component
};

Components strongly_connected(const Automaton& a) {
  const std::size_t n = a.num_states();
  Components c{std::vector<std::size_t>(n, n), {}, {}};
  std::vector<std::size_t> index(n, n), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::size_t counter = 0;
  std::function<void(State)> visit = [&](State q) {
    index[q] = low[q] = counter++;
    stack.push_back(q);
    on_stack[q] = true;
    for (const auto& [label, r] : a.out(q)) {
      if (index[r] == n) {
        visit(r);
        low[q] = std::min(low[q], low[r]);
      } else if (on_stack[r]) {
        low[q] = std::min(low[q], index[r]);
      }
    }
    if (low[q] == index[q]) {
      const std::size_t id = c.size.size();
      c.size.push_back(0);
      c.edges.push_back(0);
      State r;
      do {
        r = stack.back();
        stack.pop_back();
        on_stack[r] = false;
        c.of[r] = id;
        ++c.size[id];
      } while (r != q);
    }
  };
  for (State q = 0; q < n; ++q)
    if (index[q] == n) visit(q);
  for (const Edge& e : a.edges())
    if (c.of[e.from] == c.of[e.to]) ++c.edges[c.of[e.from]];
  return c;
}

// States that can reach (in zero or more steps) a state with flag set.
Flags can_reach(const Automaton& a, const Flags& target) {
  const std::size_t n = a.num_states();
  std::vector<std::vector<State>> preds(n);
  for (const Edge& e : a.edges()) preds[e.to].push_back(e.from);
  Flags reach = target;
  std::deque<State> queue;
  for (State q = 0; q < n; ++q)
    if (target[q]) queue.push_back(q);
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (State p : preds[q]) {
      if (!reach[p]) {
        reach[p] = true;
        queue.push_back(p);
      }
    }
  }
  return reach;
}

std::vector<State> to_list(const Flags& flags) {
  std::vector<State> out;
  for (State q = 0; q < flags.size(); ++q)
    if (flags[q]) out.push_back(q);
  return out;
}

Flags live_flags(const Automaton& a) {
  Components c = strongly_connected(a);
  Flags cyclic(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) cyclic[q] = c.edges[c.of[q]] > 0;
  return can_reach(a, cyclic);
}

Flags uncountable_flags(const Automaton& a) {
  Components c = strongly_connected(a);
  // A strongly connected component is a single simple cycle exactly when it
  // has as many internal edges as states.
  Flags branching(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) branching[q] = c.edges[c.of[q]] > c.size[c.of[q]];
  return can_reach(a, branching);
}

void require_binary(const Automaton& a) {
  for (Nat label : a.alphabet()) {
    if (label > 1) {
      throw Error(ErrorCode::NonBinaryAlphabet,
                  "label " + std::to_string(label) + " is outside the binary alphabet");
    }
  }
}

Flags positive_flags(const Automaton& a) {
  require_binary(a);
  Flags incomplete(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) incomplete[q] = a.out(q).size() < 2;
  Flags spoiled = can_reach(a, incomplete);
  Flags complete_closed(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) complete_closed[q] = !spoiled[q];
  return can_reach(a, complete_closed);
}

State state_of(const Automaton& a, const FinSeq& u) {
  auto q = a.run(u);
  if (!q) throw Error(ErrorCode::NotAMember, to_string(u) + " is not a node of the tree");
  return *q;
}

}  // namespace

std::vector<State> live_states(const Automaton& a) { return to_list(live_flags(a)); }
std::vector<State> uncountable_states(const Automaton& a) { return to_list(uncountable_flags(a)); }
std::vector<State> positive_states(const Automaton& a) { return to_list(positive_flags(a)); }

std::vector<StateClass> classify_states(const Automaton& a) {
  Flags live = live_flags(a);
  Flags unc = uncountable_flags(a);
  const std::vector<Nat> alphabet = a.alphabet();
  bool binary = std::all_of(alphabet.begin(), alphabet.end(), [](Nat k) { return k <= 1; });
  Flags pos = binary ? positive_flags(a) : Flags(a.num_states(), false);
  std::vector<StateClass> out(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) out[q] = {live[q], unc[q], pos[q]};
  return out;
}

Automaton perfect_kernel(const Automaton& a) { return a.restrict_to(uncountable_flags(a)); }

ScatClassification scat_member(const Automaton& a, const FinSeq& u) {
  State q = state_of(a, u);
  ScatClassification out;
  if (uncountable_flags(a)[q]) {
    out.cone = ConeClass::BranchKernelCone;
  } else if (live_flags(a)[q]) {
    out.cone = ConeClass::BranchScatteredCone;
  }
  return out;
}

MeasureReport measure_body(const Automaton& a, std::size_t max_depth) {
  require_binary(a);
  if (!a.initial()) throw Error(ErrorCode::EmptyTree, "automaton has no initial state");
  if (max_depth > kMaxMeasureDepth) {
    throw Error(ErrorCode::InvalidInput,
                "measure depth is limited to " + std::to_string(kMaxMeasureDepth));
  }
  // count[q] = number of length-d paths from q; m_d(q) = count[q] / 2^d.
  std::vector<Nat> count(a.num_states(), 1);
  MeasureReport report;
  report.upper_bounds.emplace_back(1, 1);
  for (std::size_t d = 1; d <= max_depth; ++d) {
    std::vector<Nat> next(a.num_states(), 0);
    for (State q = 0; q < a.num_states(); ++q)
      for (const auto& [label, r] : a.out(q)) next[q] += count[r];
    count = std::move(next);
    report.upper_bounds.emplace_back(count[*a.initial()], Nat{1} << d);
  }
  report.iterations = max_depth;
  report.positive = positive_flags(a)[*a.initial()];
  return report;
}

bool positive_measure(const Automaton& a, const FinSeq& u) {
  Flags pos = positive_flags(a);
  return pos[state_of(a, u)];
}

std::pair<FinSeq, FinSeq> splitting_witness(const Automaton& a, const FinSeq& u) {
  Flags pos = positive_flags(a);
  State start = state_of(a, u);
  if (!pos[start]) {
    throw Error(ErrorCode::NoPositiveMeasure,
                "the body above " + to_string(u) + " has measure zero");
  }
  // Breadth-first over positive extensions; a node in a complete closed
  // component always splits, and one is reached within |Q| levels.
  std::deque<std::pair<FinSeq, State>> queue{{u, start}};
  while (!queue.empty()) {
    auto [v, q] = queue.front();
    queue.pop_front();
    auto left = a.step(q, 0);
    auto right = a.step(q, 1);
    if (left && right && pos[*left] && pos[*right]) return {extend(v, 0), extend(v, 1)};
    for (const auto& [label, r] : a.out(q)) {
      if (pos[r]) queue.emplace_back(extend(v, label), r);
    }
  }
  throw Error(ErrorCode::NoPositiveMeasure, "no splitting node found above " + to_string(u));
}

std::map<FinSeq, FinSeq> binary_embedding(const Automaton& a, std::size_t depth) {
  std::map<FinSeq, FinSeq> phi;
  if (!positive_measure(a, {})) {
    throw Error(ErrorCode::NoPositiveMeasure, "the body has measure zero");
  }
  phi[{}] = {};
  std::vector<FinSeq> level{FinSeq{}};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<FinSeq> next;
    for (const FinSeq& s : level) {
      auto [l, r] = splitting_witness(a, phi.at(s));
      phi[extend(s, 0)] = l;
      phi[extend(s, 1)] = r;
      next.push_back(extend(s, 0));
      next.push_back(extend(s, 1));
    }
    level = std::move(next);
  }
  return phi;
}

std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::BranchKernelCone: return "BranchKernelCone";
    case ConeClass::BranchScatteredCone: return "BranchScatteredCone";
    case ConeClass::NoBranches: return "NoBranches";
  }
  return "Unknown";
}

std::string automaton_to_dot(const Automaton& a) {
  std::vector<StateClass> classes = classify_states(a);
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n";
  if (a.initial()) out << "  start [shape=point];\n  start -> q" << *a.initial() << ";\n";
  for (State q = 0; q < a.num_states(); ++q) {
    const StateClass& c = classes[q];
    const char* color = c.uncountable ? "red" : c.live ? "orange" : "gray";
    out << "  q" << q << " [label=\"" << a.name(q) << "\", color=" << color
        << (c.positive ? ", peripheries=2" : "") << "];\n";
  }
  for (const Edge& e : a.edges()) {
    out << "  q" << e.from << " -> q" << e.to << " [label=\"" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace omt
