#include "omega_trees/linorders.hpp"

#include <algorithm>
#include <set>

#include "omega_trees/error.hpp"

namespace omt {

namespace {

std::vector<Nat> distinct_field(const std::vector<Nat>& field) {
  std::set<Nat> seen;
  for (Nat n : field) {
    if (!seen.insert(n).second) {
      throw Error(ErrorCode::InvalidOrder, "field lists " + std::to_string(n) + " twice");
    }
  }
  return field;
}

}  // namespace

LinOrder::LinOrder(std::vector<Nat> ascending) : elements_(std::move(ascending)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (!rank_.emplace(elements_[i], i).second) {
      throw Error(ErrorCode::InvalidOrder,
                  "element " + std::to_string(elements_[i]) + " listed twice");
    }
  }
}

LinOrder LinOrder::from_sequence(std::vector<Nat> ascending) {
  return LinOrder(std::move(ascending));
}

LinOrder LinOrder::from_comparator(const std::vector<Nat>& field,
                                   const std::function<bool(Nat, Nat)>& leq) {
  std::vector<Nat> f = distinct_field(field);
  const std::size_t n = f.size();
  std::vector<std::vector<char>> m(n, std::vector<char>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = leq(f[i], f[j]) ? 1 : 0;

  auto fail = [&](const std::string& what) { throw Error(ErrorCode::InvalidOrder, what); };
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i][i]) fail("not reflexive at " + std::to_string(f[i]));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m[i][j] && m[j][i]) {
        fail("not antisymmetric: " + std::to_string(f[i]) + ", " + std::to_string(f[j]));
      }
      if (!m[i][j] && !m[j][i]) {
        fail("not total: " + std::to_string(f[i]) + ", " + std::to_string(f[j]));
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (m[i][j] && m[j][k] && !m[i][k]) {
          fail("not transitive: " + std::to_string(f[i]) + ", " + std::to_string(f[j]) +
               ", " + std::to_string(f[k]));
        }
      }
    }
  }
  // In a linear order the rank of x is the number of elements strictly below it.
  std::vector<Nat> ascending(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t below = 0;
    for (std::size_t j = 0; j < n; ++j) below += (j != i && m[j][i]) ? 1 : 0;
    ascending[below] = f[i];
  }
  return LinOrder(std::move(ascending));
}

LinOrder LinOrder::from_pairs(const std::vector<Nat>& field,
                              const std::vector<std::pair<Nat, Nat>>& leq_pairs) {
  std::set<Nat> in_field(field.begin(), field.end());
  std::set<std::pair<Nat, Nat>> rel;
  for (const auto& [a, b] : leq_pairs) {
    if (!in_field.count(a) || !in_field.count(b)) {
      throw Error(ErrorCode::InvalidOrder, "pair (" + std::to_string(a) + ", " +
                                               std::to_string(b) + ") leaves the field");
    }
    rel.emplace(a, b);
  }
  return from_comparator(field, [&](Nat a, Nat b) { return a == b || rel.count({a, b}) != 0; });
}

std::optional<Nat> LinOrder::least() const {
  if (elements_.empty()) return std::nullopt;
  return elements_.front();
}

std::size_t LinOrder::rank_of(Nat n) const {
  auto it = rank_.find(n);
  if (it == rank_.end()) {
    throw Error(ErrorCode::NotInField, std::to_string(n) + " is not in the field");
  }
  return it->second;
}

std::vector<std::pair<Nat, Nat>> LinOrder::pairs() const {
  std::vector<std::pair<Nat, Nat>> out;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = i; j < elements_.size(); ++j) out.emplace_back(elements_[i], elements_[j]);
  return out;
}

PartialMap PartialMap::from_pairs(const std::vector<std::pair<Nat, Nat>>& pairs) {
  std::map<Nat, Nat> graph;
  for (const auto& [n, m] : pairs) {
    auto [it, fresh] = graph.emplace(n, m);
    if (!fresh && it->second != m) {
      throw Error(ErrorCode::InvalidInput,
                  "map is not functional at " + std::to_string(n));
    }
  }
  return PartialMap(std::move(graph));
}

Nat PartialMap::at(Nat n) const {
  auto it = graph_.find(n);
  if (it == graph_.end()) {
    throw Error(ErrorCode::InvalidInput, "map undefined at " + std::to_string(n));
  }
  return it->second;
}

std::optional<Nat> PartialMap::get(Nat n) const {
  auto it = graph_.find(n);
  if (it == graph_.end()) return std::nullopt;
  return it->second;
}

PartialMap PartialMap::with(Nat n, Nat m) const {
  PartialMap out = *this;
  out.graph_[n] = m;
  return out;
}

std::optional<Nat> suc(const LinOrder& order, Nat n) {
  std::size_t r = order.rank_of(n);
  if (r + 1 >= order.size()) return std::nullopt;
  return order.elements()[r + 1];
}

std::size_t initial_segment_rank(const LinOrder& order, Nat n) { return order.rank_of(n); }

AdmissibilityReport admissible_check(const PartialMap& f, const LinOrder& lin,
                                     const LinOrder& wo) {
  auto reject = [](int condition, std::string detail) {
    return AdmissibilityReport{false, condition, std::move(detail)};
  };
  for (const auto& [n, m] : f.graph()) {
    if (!lin.contains(n) || !wo.contains(m)) {
      return reject(1, "pair (" + std::to_string(n) + ", " + std::to_string(m) +
                           ") is outside the fields");
    }
  }
  for (const auto& [n, m] : f.graph()) {
    for (Nat below : lin.elements()) {
      if (lin.leq(below, n) && !f.defined_at(below)) {
        return reject(2, std::to_string(below) + " lies below " + std::to_string(n) +
                             " but is not in the domain");
      }
    }
  }
  for (const auto& [n, fn] : f.graph()) {
    for (const auto& [k, fk] : f.graph()) {
      if (lin.leq(k, n) != wo.leq(fk, fn)) {
        return reject(3, "order between " + std::to_string(k) + " and " + std::to_string(n) +
                             " is not reflected by their images");
      }
    }
  }
  for (const auto& [n, fn] : f.graph()) {
    // sup of the empty set is the least element of wo.
    Nat sup = *wo.least();
    for (const auto& [k, fk] : f.graph()) {
      if (!lin.less(k, n)) continue;
      auto next = suc(wo, fk);
      if (!next) {
        return reject(4, "image " + std::to_string(fk) + " of " + std::to_string(k) +
                             " has no successor, so the supremum at " + std::to_string(n) +
                             " is undefined");
      }
      if (wo.less(sup, *next)) sup = *next;
    }
    if (sup != fn) {
      return reject(4, "f(" + std::to_string(n) + ") = " + std::to_string(fn) +
                           " but the supremum of successors is " + std::to_string(sup));
    }
  }
  return {};
}

bool strongly_admissible_check(const PartialMap& f, const LinOrder& lin, const LinOrder& wo) {
  if (!admissible_check(f, lin, wo)) return false;
  // A single-pair extension outside the fields fails condition 1, so only
  // pairs inside the fields need to be tried.
  for (Nat n : lin.elements()) {
    if (f.defined_at(n)) continue;
    for (Nat m : wo.elements()) {
      if (admissible_check(f.with(n, m), lin, wo)) return false;
    }
  }
  return true;
}

PartialMap solve_strongly_admissible(const LinOrder& lin, const LinOrder& wo) {
  if (lin.empty()) throw Error(ErrorCode::InvalidOrder, "the linear order needs a least element");
  std::map<Nat, Nat> graph;
  const std::size_t k = std::min(lin.size(), wo.size());
  for (std::size_t i = 0; i < k; ++i) graph.emplace(lin.elements()[i], wo.elements()[i]);
  return PartialMap(std::move(graph));
}

std::vector<PartialMap> brute_force_strongly_admissible(const LinOrder& lin,
                                                        const LinOrder& wo) {
  if (lin.size() > kBruteForceFieldLimit || wo.size() > kBruteForceFieldLimit) {
    throw Error(ErrorCode::FieldTooLarge, "brute force supports fields of at most " +
                                              std::to_string(kBruteForceFieldLimit) +
                                              " elements");
  }
  // Each element of lin's field is either unmapped (choice 0) or sent to the
  // (choice-1)-th element of wo.
  const std::size_t choices = wo.size() + 1;
  std::vector<std::size_t> digit(lin.size(), 0);
  std::vector<PartialMap> found;
  while (true) {
    std::map<Nat, Nat> graph;
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (digit[i] > 0) graph.emplace(lin.elements()[i], wo.elements()[digit[i] - 1]);
    }
    PartialMap f(std::move(graph));
    if (strongly_admissible_check(f, lin, wo)) found.push_back(std::move(f));

    std::size_t pos = 0;
    while (pos < digit.size() && ++digit[pos] == choices) digit[pos++] = 0;
    if (pos == digit.size()) break;
  }
  return found;
}

bool initial_similarity_check(const PartialMap& f, const LinOrder& o1, const LinOrder& o2) {
  if (f.size() != o1.size() || o1.size() > o2.size()) return false;
  for (std::size_t i = 0; i < o1.size(); ++i) {
    // Order preservation in both directions plus an initial-segment image
    // amount to sending the i-th element of o1 to the i-th element of o2.
    auto image = f.get(o1.elements()[i]);
    if (!image || *image != o2.elements()[i]) return false;
  }
  return true;
}

}  // namespace omt
