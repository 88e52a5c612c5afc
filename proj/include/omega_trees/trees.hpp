#pragma once

/// @file trees.hpp
/// @brief Trees on the naturals: finite node sets, automaton-presented
/// (regular) trees, oracle-presented (lazy) trees and the derived combinators
/// built from them.
///
/// A Tree is an immutable value; copies share the underlying representation.
/// Every tree contains the empty sequence. Children of a node u are the k
/// with u^(k) in the tree; each representation bounds them by
/// `label_bound(u)` so that children can be enumerated.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "omega_trees/automaton.hpp"
#include "omega_trees/seqcode.hpp"

namespace omt {

enum class TreeKind { Finite, Regular, Lazy, Derived };

class Tree;

namespace detail {

class TreeImpl {
 public:
  virtual ~TreeImpl() = default;
  virtual TreeKind kind() const = 0;
  virtual bool contains(const FinSeq& u) const = 0;
  /// Only meaningful for members u: every child label k satisfies k < bound.
  virtual Nat label_bound(const FinSeq& u) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

}  // namespace detail

class Tree {
 public:
  explicit Tree(std::shared_ptr<const detail::TreeImpl> impl);

  bool contains(const FinSeq& u) const { return impl_->contains(u); }
  Nat label_bound(const FinSeq& u) const { return impl_->label_bound(u); }
  /// Children labels of a member u, in increasing order.
  std::vector<Nat> children(const FinSeq& u) const;
  TreeKind kind() const { return impl_->kind(); }
  nlohmann::json to_json() const { return impl_->to_json(); }

  /// Automaton of a Regular tree; nullptr for other kinds.
  const Automaton* automaton() const;
  /// Node set of a Finite tree; nullptr for other kinds.
  const std::vector<FinSeq>* finite_nodes() const;

 private:
  std::shared_ptr<const detail::TreeImpl> impl_;
};

/// Membership test. Equivalent to T.contains(u).
bool member(const Tree& tree, const FinSeq& u);

// ---------------------------------------------------------------------------
// Base representations

/// Rejects node sets without the empty sequence or not closed under prefixes.
Tree finite_tree(const std::vector<FinSeq>& nodes);
Tree regular_tree(Automaton automaton);

using Membership = std::function<bool(const FinSeq&)>;
using LabelBound = std::function<Nat(const FinSeq&)>;

/// Oracle-presented tree. Prefix closure and the label bound are checked along
/// the query path of every positive answer. `description` is the JSON used to
/// serialize the tree (null when it cannot be serialized).
Tree lazy_tree(Membership member, LabelBound bound, nlohmann::json description = nullptr);

/// All sequences with entries < arity.
Tree full_tree(Nat arity);
/// The single-branch tree {(v, v, ..., v)}.
Tree constant_chain_tree(Nat value);

// ---------------------------------------------------------------------------
// Combinators

Tree subtree_at(const Tree& tree, const FinSeq& u);
/// Shifted tree plus zero-padding: {v^0^n : v in T+1}.
Tree shift_closure(const Tree& tree);
Tree sum(const Tree& left, const Tree& right);
Tree product(const Tree& left, const Tree& right);

inline constexpr Nat kDefaultAttMaxCode = 256;
/// Tree of attempted embeddings of the complete binary tree. Children are
/// enumerated among codes <= max_code; membership itself is unbounded.
Tree att(const Tree& tree, Nat max_code = kDefaultAttMaxCode);

/// Splits a product-tree node into its two padded components. Returns nullopt
/// when a -1 is followed by a natural on one side.
std::optional<std::pair<FinSeq, FinSeq>> unzip_product_node(const FinSeq& w);

/// Position n of the length-then-lexicographic enumeration of binary strings.
FinSeq binary_string(Nat n);
/// Inverse of binary_string for 0/1 sequences.
Nat binary_index(const FinSeq& s);

/// The partial map s_n -> decode(w(n)) carried by an attempted embedding w.
std::map<FinSeq, FinSeq> att_induced_map(const FinSeq& w);

// ---------------------------------------------------------------------------
// Constructors from decidable predicates

using NatPredicate = std::function<bool(Nat)>;
using StrictOrder = std::function<bool(Nat, Nat)>;  // less(a, b): a strictly below b

/// {u : every entry of u satisfies pred}; entries are searched below `cap`.
Tree elementwise_tree(NatPredicate pred, Nat cap, nlohmann::json description = nullptr);

/// Strictly descending tuples u(lh-1) < ... < u(0). Root children are searched
/// below `cap`; deeper children are the elements below the last entry, taken
/// from [0, cap).
Tree chain_tree(StrictOrder less, Nat cap, nlohmann::json description = nullptr);

/// u = () or R(u(0), <u(1..t)>) for every t < lh(u). Labels below `bound`.
Tree sg_tree(std::function<bool(Nat, Nat)> relation, Nat bound,
             nlohmann::json description = nullptr);

/// No proper prefix of u (lengths 0..lh(u)-1) has a code satisfying pred.
Tree bar_tree(NatPredicate pred, Nat bound, nlohmann::json description = nullptr);

/// (n)^(u0, v0, ..., um-1, vm-1) is a member iff for all t < m,
/// R(n, <u0..ut-1>, <v0..vt-1>); a trailing unpaired u-entry is admitted
/// whenever the even-length prefix is.
Tree interleave_unfold(std::function<bool(Nat, Nat, Nat)> relation, Nat bound,
                       nlohmann::json description = nullptr);

/// The toy relation: R(n, s) iff (n even and decode(s) is all zeros) or
/// (n odd and lh(decode(s)) <= 2).
bool sg_toy_relation(Nat n, Nat s);

// ---------------------------------------------------------------------------
// Exploration

/// Nodes of depth <= max_depth in breadth-first, length-then-lex order.
std::vector<FinSeq> nodes_to_depth(const Tree& tree, std::size_t max_depth);

inline constexpr std::size_t kFiniteNodeLimit = 100000;
/// All nodes of a finite tree. Throws NonFiniteTree when the tree is not a
/// Finite tree and exploration exceeds `limit` nodes (or a Regular tree
/// reaches a cycle).
std::vector<FinSeq> all_nodes(const Tree& tree, std::size_t limit = kFiniteNodeLimit);

struct SectionProfile {
  Nat first = 0;
  /// counts[d] = number of members of depth d + 1 that start with `first`.
  std::vector<Nat> counts;
};

/// For each first coordinate n, counts nodes (n)^v per depth up to max_depth.
std::vector<SectionProfile> section_profile(const Tree& tree, const std::vector<Nat>& firsts,
                                            std::size_t max_depth);

// ---------------------------------------------------------------------------
// JSON

Tree tree_from_json(const nlohmann::json& j);
Automaton automaton_from_json(const nlohmann::json& j);
nlohmann::json automaton_to_json(const Automaton& a);
/// Builds a builtin lazy family from {"builtin": name, ...parameters}.
Tree builtin_tree(const nlohmann::json& j);

}  // namespace omt
