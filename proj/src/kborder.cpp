#include "omega_trees/kborder.hpp"

#include <algorithm>
#include <memory>

#include "omega_trees/error.hpp"

namespace omt {

bool kb_leq(const FinSeq& u, const FinSeq& v) {
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] != v[i]) return u[i] < v[i];
  }
  // Comparable: u <=_KB v iff u extends v.
  return u.size() >= v.size();
}

bool kb_less(const FinSeq& u, const FinSeq& v) { return u != v && kb_leq(u, v); }

KbComparison kb_compare(const FinSeq& u, const FinSeq& v) {
  if (u == v) return KbComparison::Equal;
  return kb_leq(u, v) ? KbComparison::LessEq : KbComparison::GreaterEq;
}

LinOrder kb_order_of(const Tree& tree) {
  std::vector<FinSeq> nodes = all_nodes(tree);
  std::sort(nodes.begin(), nodes.end(), kb_less);
  std::vector<Nat> codes;
  codes.reserve(nodes.size());
  for (const FinSeq& u : nodes) codes.push_back(encode(u).value);
  return LinOrder::from_sequence(std::move(codes));
}

bool is_kb_descending(std::span<const FinSeq> nodes) {
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!kb_less(nodes[i], nodes[i - 1])) return false;
  }
  return true;
}

FinSeq branch_from_kb_descending(const SeqStream& stream, std::size_t depth,
                                 std::size_t window) {
  if (depth == 0) return {};
  if (window == 0) throw Error(ErrorCode::InvalidInput, "stability window must be positive");
  FinSeq value(depth, 0);
  std::vector<std::size_t> run(depth, 0);
  std::optional<FinSeq> previous;
  std::size_t consumed = 0;
  while (true) {
    std::optional<FinSeq> next = stream();
    if (!next) {
      throw Error(ErrorCode::StreamExhausted,
                  "stream ended after " + std::to_string(consumed) +
                      " elements before the first " + std::to_string(depth) +
                      " positions stabilized");
    }
    ++consumed;
    if (previous && !kb_less(*next, *previous)) {
      throw Error(ErrorCode::NotDescending, to_string(*next) + " is not strictly KB-below " +
                                                to_string(*previous));
    }
    bool stable = true;
    for (std::size_t i = 0; i < depth; ++i) {
      if (i >= next->size()) {
        run[i] = 0;
      } else if (run[i] > 0 && value[i] == (*next)[i]) {
        ++run[i];
      } else {
        value[i] = (*next)[i];
        run[i] = 1;
      }
      stable = stable && run[i] >= window;
    }
    if (stable) return value;
    previous = std::move(next);
  }
}

SeqStream stream_of(std::vector<FinSeq> items) {
  auto state = std::make_shared<std::pair<std::vector<FinSeq>, std::size_t>>(std::move(items), 0);
  return [state]() -> std::optional<FinSeq> {
    if (state->second >= state->first.size()) return std::nullopt;
    return state->first[state->second++];
  };
}

SeqStream prefix_stream(BranchOracle alpha) {
  auto current = std::make_shared<FinSeq>();
  auto started = std::make_shared<bool>(false);
  return [alpha = std::move(alpha), current, started]() -> std::optional<FinSeq> {
    if (*started) current->push_back(call_oracle(alpha, current->size()));
    *started = true;
    return *current;
  };
}

std::optional<std::pair<FinSeq, FinSeq>> kb_preservation_witness(const CodeMap& f,
                                                                 std::span<const FinSeq> nodes) {
  std::vector<FinSeq> images;
  images.reserve(nodes.size());
  for (const FinSeq& u : nodes) images.push_back(decode(f(encode(u).value)));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (kb_leq(nodes[i], nodes[j]) != kb_leq(images[i], images[j])) {
        return std::make_pair(nodes[i], nodes[j]);
      }
    }
  }
  return std::nullopt;
}

FinSeq kb_induced_map(const CodeMap& f, const Tree& source, const Tree& target,
                      const FinSeq& alpha_prefix, std::size_t depth, std::size_t window,
                      std::span<const FinSeq> also_check) {
  std::vector<FinSeq> visited;
  for (std::size_t n = 0; n <= alpha_prefix.size(); ++n) visited.push_back(truncate(alpha_prefix, n));
  std::vector<FinSeq> checked = visited;
  checked.insert(checked.end(), also_check.begin(), also_check.end());

  std::vector<FinSeq> images;
  for (const FinSeq& u : checked) {
    if (!source.contains(u)) {
      throw Error(ErrorCode::NotAMember, to_string(u) + " is not a node of the source tree");
    }
    FinSeq image = decode(f(encode(u).value));
    if (!target.contains(image)) {
      throw Error(ErrorCode::NotAMember, "image " + to_string(image) + " of " + to_string(u) +
                                             " is not a node of the target tree");
    }
    images.push_back(std::move(image));
  }
  if (auto witness = kb_preservation_witness(f, checked)) {
    throw Error(ErrorCode::NotOrderPreserving,
                "map does not preserve the KB order on the pair " + to_string(witness->first) +
                    ", " + to_string(witness->second));
  }
  images.resize(visited.size());
  return branch_from_kb_descending(stream_of(std::move(images)), depth, window);
}

std::optional<std::vector<Nat>> descending_chain_search(const Comparator& less,
                                                        std::size_t budget) {
  if (budget < 2) return std::nullopt;
  const std::size_t range = budget * budget + 1;
  // longest[i]: longest admissible chain starting at i; next[i]: the least
  // successor achieving it.
  std::vector<std::size_t> longest(range, 1);
  std::vector<std::size_t> next(range, range);
  for (std::size_t i = range; i-- > 0;) {
    for (std::size_t j = i + 1; j < range && longest[i] < budget; ++j) {
      if (longest[j] + 1 > longest[i] && less(j, i)) {
        longest[i] = std::min(longest[j] + 1, budget);
        next[i] = j;
      }
    }
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < range; ++i) {
    if (longest[i] > longest[start]) start = i;
  }
  if (longest[start] < 2) return std::nullopt;
  std::vector<Nat> chain;
  for (std::size_t i = start; i < range && chain.size() < budget; i = next[i]) chain.push_back(i);
  return chain;
}

}  // namespace omt
