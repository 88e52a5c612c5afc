#pragma once

/// @file kborder.hpp
/// @brief The Kleene-Brouwer ordering on finite sequences, limits of
/// KB-descending streams and a budgeted search for descending chains.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "omega_trees/linorders.hpp"
#include "omega_trees/seqcode.hpp"
#include "omega_trees/trees.hpp"

namespace omt {

enum class KbComparison { LessEq, GreaterEq, Equal };

/// u <=_KB v: v is an initial segment of u, or u and v are incompatible and
/// u is lexicographically below v at the first disagreement.
bool kb_leq(const FinSeq& u, const FinSeq& v);
bool kb_less(const FinSeq& u, const FinSeq& v);
KbComparison kb_compare(const FinSeq& u, const FinSeq& v);

/// KB order on the node codes of a finite tree.
LinOrder kb_order_of(const Tree& tree);

/// Each node strictly KB-below its predecessor.
bool is_kb_descending(std::span<const FinSeq> nodes);

/// Pulls successive sequences; nullopt marks the end of the stream.
using SeqStream = std::function<std::optional<FinSeq>()>;

inline constexpr std::size_t kDefaultStabilityWindow = 8;

/// Limit branch of a strictly KB-descending stream, truncated to `depth`.
/// Position i counts as stable once its value survived `window` consecutive
/// elements; elements are consumed until positions 0..depth-1 are all stable.
/// Throws StreamExhausted or NotDescending.
FinSeq branch_from_kb_descending(const SeqStream& stream, std::size_t depth,
                                 std::size_t window = kDefaultStabilityWindow);

/// Stream over a fixed list of sequences.
SeqStream stream_of(std::vector<FinSeq> items);
/// Stream of the prefixes alpha|0, alpha|1, ... of a branch.
SeqStream prefix_stream(BranchOracle alpha);

using CodeMap = std::function<Nat(Nat)>;

/// A pair u, v among `nodes` on which f fails to preserve <=_KB in either
/// direction, or nullopt.
std::optional<std::pair<FinSeq, FinSeq>> kb_preservation_witness(const CodeMap& f,
                                                                 std::span<const FinSeq> nodes);

/// Prefix of the branch map induced by a KB-preserving code map f from
/// `source` to `target`, evaluated along the prefixes of `alpha_prefix`.
/// Order preservation is checked on the visited prefixes together with
/// `also_check`. Throws NotOrderPreserving (witness in the message),
/// NotAMember, StreamExhausted.
FinSeq kb_induced_map(const CodeMap& f, const Tree& source, const Tree& target,
                      const FinSeq& alpha_prefix, std::size_t depth, std::size_t window = 1,
                      std::span<const FinSeq> also_check = {});

/// Strict order oracle: less(a, b) iff a is strictly below b.
using Comparator = std::function<bool(Nat, Nat)>;

/// Longest chain x0 > x1 > ... (in the oracle order) with x0 < x1 < ... as
/// naturals, drawn from [0, budget^2] and capped at `budget` elements.
/// Returns nullopt when no chain of length 2 exists. Never certifies
/// well-foundedness.
std::optional<std::vector<Nat>> descending_chain_search(const Comparator& less,
                                                        std::size_t budget);

}  // namespace omt
