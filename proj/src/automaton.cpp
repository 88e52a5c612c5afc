#include "omega_trees/automaton.hpp"

#include <algorithm>
#include <set>

#include "omega_trees/error.hpp"

namespace omt {

Automaton::Automaton(std::vector<std::string> names, std::optional<State> initial,
                     std::vector<Edge> edges, std::optional<std::vector<Nat>> alphabet)
    : names_(std::move(names)), initial_(initial), out_(names_.size()),
      declared_alphabet_(std::move(alphabet)) {
  if (initial_ && *initial_ >= names_.size()) {
    throw Error(ErrorCode::InvalidInput, "initial state is not a state");
  }
  std::set<Nat> allowed;
  if (declared_alphabet_) {
    std::sort(declared_alphabet_->begin(), declared_alphabet_->end());
    declared_alphabet_->erase(std::unique(declared_alphabet_->begin(), declared_alphabet_->end()),
                              declared_alphabet_->end());
    allowed.insert(declared_alphabet_->begin(), declared_alphabet_->end());
  }
  for (const Edge& e : edges) {
    if (e.from >= names_.size() || e.to >= names_.size()) {
      throw Error(ErrorCode::InvalidInput, "edge refers to an unknown state");
    }
    if (declared_alphabet_ && !allowed.count(e.label)) {
      throw Error(ErrorCode::InvalidInput,
                  "label " + std::to_string(e.label) + " is not in the declared alphabet");
    }
    auto& row = out_[e.from];
    auto it = std::find_if(row.begin(), row.end(), [&](const auto& p) { return p.first == e.label; });
    if (it != row.end()) {
      if (it->second == e.to) continue;
      throw Error(ErrorCode::InvalidInput, "state " + names_[e.from] + " has two edges labeled " +
                                               std::to_string(e.label));
    }
    row.emplace_back(e.label, e.to);
  }
  for (auto& row : out_) std::sort(row.begin(), row.end());
}

Automaton Automaton::with_states(std::size_t n, std::optional<State> initial,
                                 std::vector<Edge> edges) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
  return Automaton(std::move(names), initial, std::move(edges));
}

std::optional<State> Automaton::step(State q, Nat label) const {
  for (const auto& [a, r] : out_.at(q)) {
    if (a == label) return r;
  }
  return std::nullopt;
}

std::vector<Edge> Automaton::edges() const {
  std::vector<Edge> all;
  for (State q = 0; q < out_.size(); ++q)
    for (const auto& [a, r] : out_[q]) all.push_back({q, a, r});
  return all;
}

std::vector<Nat> Automaton::alphabet() const {
  if (declared_alphabet_) return *declared_alphabet_;
  std::set<Nat> used;
  for (const auto& row : out_)
    for (const auto& [a, r] : row) used.insert(a);
  return {used.begin(), used.end()};
}

std::optional<State> Automaton::run_from(State q, const FinSeq& u) const {
  std::optional<State> cur = q;
  for (Nat a : u) {
    cur = step(*cur, a);
    if (!cur) return std::nullopt;
  }
  return cur;
}

std::optional<State> Automaton::run(const FinSeq& u) const {
  if (!initial_) return std::nullopt;
  return run_from(*initial_, u);
}

Automaton Automaton::restrict_to(const std::vector<bool>& keep) const {
  std::vector<State> index(names_.size(), 0);
  std::vector<std::string> names;
  for (State q = 0; q < names_.size(); ++q) {
    if (keep.at(q)) {
      index[q] = static_cast<State>(names.size());
      names.push_back(names_[q]);
    }
  }
  std::vector<Edge> kept;
  for (const Edge& e : edges()) {
    if (keep[e.from] && keep[e.to]) kept.push_back({index[e.from], e.label, index[e.to]});
  }
  std::optional<State> init;
  if (initial_ && keep[*initial_]) init = index[*initial_];
  return Automaton(std::move(names), init, std::move(kept), declared_alphabet_);
}

}  // namespace omt
