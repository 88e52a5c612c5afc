#pragma once

/// @file seqcode.hpp
/// @brief Finite sequences of naturals, their natural-number codes and the
/// pairing functions used throughout the library.
///
/// The coding is fixed once for the whole project:
///
///   p(a, b)          = (a + b)(a + b + 1)/2 + b          (Cantor pairing)
///   <>               = 1
///   <u0, ..., un-1>  = 2 + p(n - 1, c_n),  c_1 = u0,  c_{k+1} = p(c_k, u_k)
///
/// so every natural >= 1 is the code of exactly one sequence and 0 is not a
/// code. Arithmetic is on 64-bit naturals; a result that does not fit raises
/// ErrorCode::CodeOverflow instead of wrapping.

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace omt {

using Nat = std::uint64_t;

/// A finite sequence of naturals (an element of the set of finite sequences).
using FinSeq = std::vector<Nat>;

/// Natural-number code of a finite sequence. Always >= 1.
struct SeqCode {
  Nat value = 1;
  auto operator<=>(const SeqCode&) const = default;
};

/// Element of the naturals extended by -1, used for padding in products.
using ExtVal = std::int64_t;

/// A point of Baire space given by its values; must be deterministic.
using BranchOracle = std::function<Nat(Nat)>;

inline constexpr Nat kMaxDecodedLength = Nat{1} << 20;

Nat pair(Nat a, Nat b);
std::pair<Nat, Nat> unpair(Nat z);

SeqCode encode(const FinSeq& u);
FinSeq decode(Nat s);
FinSeq decode(SeqCode s);
/// Length of decode(s) without materializing the sequence.
Nat decoded_length(Nat s);

ExtVal pair_ext(ExtVal a, ExtVal b);
std::pair<ExtVal, ExtVal> unpair_ext(ExtVal z);

/// Zips two sequences through pair_ext, padding the shorter with -1.
FinSeq zip_pad(const FinSeq& u, const FinSeq& v);

/// Code of the length-n prefix of alpha.
SeqCode prefix_code(const BranchOracle& alpha, Nat n);
FinSeq prefix(const BranchOracle& alpha, Nat n);

/// The i-th section of alpha evaluated at n: alpha(<i, n>).
Nat diag_section(const BranchOracle& alpha, Nat i, Nat n);

/// Evaluates alpha(i), turning foreign exceptions into OracleError.
Nat call_oracle(const BranchOracle& alpha, Nat i);

// Sequence predicates.
bool is_prefix(const FinSeq& u, const FinSeq& v);  // u is an initial segment of v
bool is_proper_prefix(const FinSeq& u, const FinSeq& v);
bool compatible(const FinSeq& u, const FinSeq& v);
bool incompatible(const FinSeq& u, const FinSeq& v);
FinSeq concat(const FinSeq& u, const FinSeq& v);
FinSeq extend(const FinSeq& u, Nat k);
FinSeq truncate(const FinSeq& u, std::size_t n);

/// Renders a sequence as "(a,b,c)".
std::string to_string(const FinSeq& u);

}  // namespace omt
