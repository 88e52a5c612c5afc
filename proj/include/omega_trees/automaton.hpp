#pragma once

/// @file automaton.hpp
/// @brief Deterministic labeled automata presenting regular trees.
///
/// Every state is accepting: the tree of an automaton is the set of label
/// strings of paths that start at the initial state.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega_trees/seqcode.hpp"

namespace omt {

using State = std::uint32_t;

struct Edge {
  State from = 0;
  Nat label = 0;
  State to = 0;
};

class Automaton {
 public:
  Automaton() = default;

  /// `names[i]` labels state i (used for JSON and DOT output). Rejects
  /// nondeterministic edges, dangling states and labels outside `alphabet`
  /// when an alphabet is declared.
  Automaton(std::vector<std::string> names, std::optional<State> initial, std::vector<Edge> edges,
            std::optional<std::vector<Nat>> alphabet = std::nullopt);

  /// Anonymous states 0..n-1.
  static Automaton with_states(std::size_t n, std::optional<State> initial,
                               std::vector<Edge> edges);

  std::size_t num_states() const { return names_.size(); }
  std::optional<State> initial() const { return initial_; }
  const std::string& name(State q) const { return names_.at(q); }
  const std::vector<std::string>& names() const { return names_; }

  /// Outgoing (label, target) pairs of q in increasing label order.
  const std::vector<std::pair<Nat, State>>& out(State q) const { return out_.at(q); }
  std::optional<State> step(State q, Nat label) const;
  std::vector<Edge> edges() const;

  /// Declared alphabet, or the set of labels used on edges.
  std::vector<Nat> alphabet() const;
  bool alphabet_declared() const { return declared_alphabet_.has_value(); }

  std::optional<State> run(const FinSeq& u) const;
  std::optional<State> run_from(State q, const FinSeq& u) const;

  /// Sub-automaton on the states with keep[q] set; the initial state survives
  /// only if it is kept. State names are preserved.
  Automaton restrict_to(const std::vector<bool>& keep) const;

 private:
  std::vector<std::string> names_;
  std::optional<State> initial_;
  std::vector<std::vector<std::pair<Nat, State>>> out_;
  std::optional<std::vector<Nat>> declared_alphabet_;
};

}  // namespace omt
