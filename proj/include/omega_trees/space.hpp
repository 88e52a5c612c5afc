#pragma once

/// @file space.hpp
/// @brief Points of the space T u [T] with its exact ultrametric, the
/// presentation by sequence codes, the embedding into Baire space and the
/// isomorphisms for sums and products of trees.
///
/// A node u is identified with the infinite sequence u^(-1, -1, ...). The
/// distance of two points is 1/(n + 1) for the first position n where they
/// differ, and 0 for equal points.

#include <optional>
#include <utility>
#include <variant>

#include <json.hpp>

#include "omega_trees/rational.hpp"
#include "omega_trees/seqcode.hpp"
#include "omega_trees/trees.hpp"

namespace omt {

class Point {
 public:
  static Point node(FinSeq u);
  /// `description` is the {"builtin": ..., "params": ...} JSON of the branch,
  /// or null when the branch cannot be serialized.
  static Point branch(BranchOracle alpha, nlohmann::json description = nullptr);

  bool is_node() const { return std::holds_alternative<FinSeq>(value_); }
  bool is_branch() const { return !is_node(); }
  const FinSeq& as_node() const;
  const BranchOracle& as_branch() const;
  const nlohmann::json& description() const { return description_; }

  /// Value at position i; -1 past the end of a node.
  ExtVal at(Nat i) const;

 private:
  Point() = default;
  std::variant<FinSeq, BranchOracle> value_;
  nlohmann::json description_;
};

struct DistResult {
  enum class Kind { Exact, AtMost };
  Kind kind = Kind::Exact;
  Rational value;

  bool exact() const { return kind == Kind::Exact; }
  bool operator==(const DistResult&) const = default;
};

/// Checks x against T: a node must be a member, a branch must stay in T on
/// its first `depth` positions. Throws InvalidPoint.
void validate_point(const Tree& tree, const Point& x, Nat depth = 0);

/// Distance in the space of T. Exact whenever one side is a node; for two
/// branches agreeing on positions 0..budget-1 the answer is AtMost(1/(budget+1)).
DistResult dist(const Tree& tree, const Point& x, const Point& y, Nat budget);

/// The s-th point of the recursive presentation: decode(s) when s codes a
/// member of T, the root otherwise.
Point presentation(const Tree& tree, Nat s);

/// Isometric embedding into Baire space: every value shifted up by one and
/// nodes padded with zeros. Branch images validate membership lazily.
Point rho(const Tree& tree, const Point& x);

/// Inverse of rho. A zero within the first `budget` positions makes the
/// result a node; otherwise the result is a branch whose oracle raises
/// InvalidPoint if a zero shows up later.
Point rho_inv(const Tree& tree, const Point& y, Nat budget);

/// Baire-space distance of two branch points (AtMost after `budget` agreeing
/// positions).
DistResult baire_dist(const Point& x, const Point& y, Nat budget);

/// (x, y) -> pointwise pair_ext of the padded sequences.
Point prod_iso(const Tree& left, const Tree& right, const Point& x, const Point& y);

/// Inverse of prod_iso. A component that turns to -1 within `budget`
/// positions is returned as a node; otherwise as a branch oracle that
/// re-derives its values from z on demand.
std::pair<Point, Point> prod_iso_inv(const Tree& left, const Tree& right, const Point& z,
                                     Nat budget);

/// Injection of the summand `side` (0 or 1) into the space of sum(left, right).
/// Left root goes to the root of the sum. On the right summand the nodes of
/// the leftmost path l0 = (), l1, l2, ... move one step down (li goes where
/// l(i+1) would go), which frees a slot for the right root. Throws
/// NoIsomorphism when that path ends in a leaf.
Point sum_iso(const Tree& left, const Tree& right, int side, const Point& x);

/// Inverse of sum_iso: the summand and the preimage.
std::pair<int, Point> sum_iso_inv(const Tree& left, const Tree& right, const Point& z);

// JSON: {"node": [...]} or {"branch": {"builtin": ..., "params": {...}}}.
Point point_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const Point& x, Nat preview = 0);
nlohmann::json dist_to_json(const DistResult& d);
BranchOracle branch_from_json(const nlohmann::json& description);

}  // namespace omt
