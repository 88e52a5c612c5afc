#pragma once

/// @file linorders.hpp
/// @brief Finite linear orders on sets of naturals and the admissible-function
/// machinery between a linear order and a well-order.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omega_trees/seqcode.hpp"

namespace omt {

/// A finite linear order. The field is stored least element first.
class LinOrder {
 public:
  LinOrder() = default;

  /// Builds an order from its field and the pairs (a, b) with a <= b.
  /// Reflexivity, antisymmetry, transitivity and totality are all checked;
  /// the reflexive pairs may be omitted from `leq_pairs`.
  static LinOrder from_pairs(const std::vector<Nat>& field,
                             const std::vector<std::pair<Nat, Nat>>& leq_pairs);

  /// Builds an order from a comparator `leq` on `field`; validated as above.
  static LinOrder from_comparator(const std::vector<Nat>& field,
                                  const std::function<bool(Nat, Nat)>& leq);

  /// The order listing `ascending` least first.
  static LinOrder from_sequence(std::vector<Nat> ascending);

  bool contains(Nat n) const { return rank_.count(n) != 0; }
  bool leq(Nat a, Nat b) const { return rank_of(a) <= rank_of(b); }
  bool less(Nat a, Nat b) const { return rank_of(a) < rank_of(b); }

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<Nat>& elements() const { return elements_; }
  std::optional<Nat> least() const;

  /// Position of n counted from the least element.
  std::size_t rank_of(Nat n) const;

  /// Every pair (a, b) with a <= b, including the reflexive ones.
  std::vector<std::pair<Nat, Nat>> pairs() const;

  bool operator==(const LinOrder& other) const { return elements_ == other.elements_; }

 private:
  explicit LinOrder(std::vector<Nat> ascending);

  std::vector<Nat> elements_;
  std::map<Nat, std::size_t> rank_;
};

/// A finite partial function on the naturals.
class PartialMap {
 public:
  PartialMap() = default;
  explicit PartialMap(std::map<Nat, Nat> graph) : graph_(std::move(graph)) {}

  /// Rejects graphs that give one argument two images.
  static PartialMap from_pairs(const std::vector<std::pair<Nat, Nat>>& pairs);

  bool defined_at(Nat n) const { return graph_.count(n) != 0; }
  Nat at(Nat n) const;
  std::optional<Nat> get(Nat n) const;
  std::size_t size() const { return graph_.size(); }
  bool empty() const { return graph_.empty(); }
  const std::map<Nat, Nat>& graph() const { return graph_; }

  /// Copy of this map with the extra pair (n, m).
  PartialMap with(Nat n, Nat m) const;

  auto operator<=>(const PartialMap&) const = default;

 private:
  std::map<Nat, Nat> graph_;
};

std::optional<Nat> suc(const LinOrder& order, Nat n);
std::size_t initial_segment_rank(const LinOrder& order, Nat n);

/// Outcome of an admissibility check. `failed_condition` is 0 when the map is
/// admissible and otherwise names the first violated condition:
/// 1 graph outside the fields, 2 domain not downward closed, 3 order not
/// reflected, 4 successor-supremum equation fails.
struct AdmissibilityReport {
  bool admissible = true;
  int failed_condition = 0;
  std::string detail;

  explicit operator bool() const { return admissible; }
};

AdmissibilityReport admissible_check(const PartialMap& f, const LinOrder& lin,
                                     const LinOrder& wo);
bool strongly_admissible_check(const PartialMap& f, const LinOrder& lin, const LinOrder& wo);

/// The unique strongly admissible map for finite orders: the first
/// min(|lin|, |wo|) elements of lin sent in order to those of wo. Throws
/// InvalidOrder when lin is empty.
PartialMap solve_strongly_admissible(const LinOrder& lin, const LinOrder& wo);

inline constexpr std::size_t kBruteForceFieldLimit = 5;

/// Every strongly admissible map, by exhaustive enumeration of partial maps.
std::vector<PartialMap> brute_force_strongly_admissible(const LinOrder& lin,
                                                        const LinOrder& wo);

/// f is an isomorphism of o1 onto an initial segment of o2.
bool initial_similarity_check(const PartialMap& f, const LinOrder& o1, const LinOrder& o2);

}  // namespace omt
