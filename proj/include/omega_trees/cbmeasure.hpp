#pragma once

/// @file cbmeasure.hpp
/// @brief Cantor-Bendixson analysis and coin-toss measure of the body of a
/// regular tree.
///
/// For an automaton-presented tree the questions below are graph questions:
///   live         some infinite path starts at the state;
///   uncountable  the state reaches a strongly connected component that is
///                not a single simple cycle (two distinct cycles meet there);
///   positive     the state reaches a state all of whose descendants have
///                both binary transitions (a complete closed component).
/// A branch lies in the perfect kernel of the body iff every state along it is
/// uncountable, so the kernel is the automaton restricted to those states.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "omega_trees/automaton.hpp"
#include "omega_trees/rational.hpp"
#include "omega_trees/seqcode.hpp"

namespace omt {

struct StateClass {
  bool live = false;
  bool uncountable = false;
  bool positive = false;
};

std::vector<State> live_states(const Automaton& a);
std::vector<State> uncountable_states(const Automaton& a);
/// Requires a binary alphabet.
std::vector<State> positive_states(const Automaton& a);

/// Per-state flags; `positive` is only computed for binary automata.
std::vector<StateClass> classify_states(const Automaton& a);

/// Restriction to the uncountable states.
Automaton perfect_kernel(const Automaton& a);

enum class ConeClass {
  BranchKernelCone,     // branches through the node reach the perfect kernel
  BranchScatteredCone,  // branches exist and all of them are scattered
  NoBranches,           // the node is not on any infinite branch
};

struct ScatClassification {
  /// Every node is an isolated point of the space, hence scattered.
  bool node_scattered = true;
  ConeClass cone = ConeClass::NoBranches;
};

ScatClassification scat_member(const Automaton& a, const FinSeq& u);

struct MeasureReport {
  /// upper_bounds[d] = (number of depth-d nodes) / 2^d for d = 0..max_depth.
  std::vector<Rational> upper_bounds;
  bool positive = false;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kMaxMeasureDepth = 62;

MeasureReport measure_body(const Automaton& a, std::size_t max_depth);
bool positive_measure(const Automaton& a, const FinSeq& u);

/// Least (breadth-first, then lexicographic) pair of incompatible proper
/// extensions of u with positive measure. Throws NoPositiveMeasure.
std::pair<FinSeq, FinSeq> splitting_witness(const Automaton& a, const FinSeq& u);

/// Embedding of the binary strings of length <= depth built by iterating
/// splitting_witness from the root.
std::map<FinSeq, FinSeq> binary_embedding(const Automaton& a, std::size_t depth);

std::string to_string(ConeClass c);

/// Graphviz rendering; kernel states red, countable live states orange, dead
/// states gray, positive states drawn with a double border.
std::string automaton_to_dot(const Automaton& a);

}  // namespace omt
