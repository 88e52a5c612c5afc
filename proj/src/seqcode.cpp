#include "omega_trees/seqcode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "omega_trees/error.hpp"

namespace omt {

namespace {

using Wide = unsigned __int128;

constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

[[noreturn]] void overflow(const char* what) {
  throw Error(ErrorCode::CodeOverflow, std::string(what) + ": value exceeds 64 bits");
}

// Largest w with w(w+1)/2 <= z.
Nat triangular_root(Nat z) {
  // w is about sqrt(2z); refine the floating estimate exactly.
  auto w = static_cast<Nat>(std::sqrt(2.0L * static_cast<long double>(z)));
  auto tri = [](Nat x) { return static_cast<Wide>(x) * (x + 1) / 2; };
  while (w > 0 && tri(w) > z) --w;
  while (tri(w + 1) <= z) ++w;
  return w;
}

}  // namespace

Nat pair(Nat a, Nat b) {
  Wide s = static_cast<Wide>(a) + b;
  Wide value = s * (s + 1) / 2 + b;
  if (value > kNatMax) overflow("pair");
  return static_cast<Nat>(value);
}

std::pair<Nat, Nat> unpair(Nat z) {
  Nat w = triangular_root(z);
  Nat t = static_cast<Nat>(static_cast<Wide>(w) * (w + 1) / 2);
  Nat b = z - t;
  return {w - b, b};
}

SeqCode encode(const FinSeq& u) {
  if (u.empty()) return SeqCode{1};
  Nat c = u[0];
  for (std::size_t k = 1; k < u.size(); ++k) c = pair(c, u[k]);
  Nat inner = pair(static_cast<Nat>(u.size() - 1), c);
  if (inner > kNatMax - 2) overflow("encode");
  return SeqCode{inner + 2};
}

Nat decoded_length(Nat s) {
  if (s == 0) throw Error(ErrorCode::NotASequenceCode, "0 is not a sequence code");
  if (s == 1) return 0;
  return unpair(s - 2).first + 1;
}

FinSeq decode(Nat s) {
  Nat n = decoded_length(s);
  if (n == 0) return {};
  if (n > kMaxDecodedLength) {
    throw Error(ErrorCode::CodeOverflow,
                "code " + std::to_string(s) + " decodes to a sequence of length " +
                    std::to_string(n) + ", above the supported maximum");
  }
  FinSeq u(n);
  Nat c = unpair(s - 2).second;
  for (Nat k = n - 1; k > 0; --k) {
    auto [rest, last] = unpair(c);
    u[k] = last;
    c = rest;
  }
  u[0] = c;
  return u;
}

FinSeq decode(SeqCode s) { return decode(s.value); }

ExtVal pair_ext(ExtVal a, ExtVal b) {
  if (a < -1 || b < -1) {
    throw Error(ErrorCode::InvalidInput, "pair_ext arguments must be >= -1");
  }
  Nat v = pair(static_cast<Nat>(a + 1), static_cast<Nat>(b + 1));
  if (v > static_cast<Nat>(std::numeric_limits<ExtVal>::max()) + 1) overflow("pair_ext");
  return static_cast<ExtVal>(v) - 1;
}

std::pair<ExtVal, ExtVal> unpair_ext(ExtVal z) {
  if (z < -1) throw Error(ErrorCode::InvalidInput, "unpair_ext argument must be >= -1");
  auto [a, b] = unpair(static_cast<Nat>(z + 1));
  return {static_cast<ExtVal>(a) - 1, static_cast<ExtVal>(b) - 1};
}

FinSeq zip_pad(const FinSeq& u, const FinSeq& v) {
  std::size_t n = std::max(u.size(), v.size());
  FinSeq w(n);
  for (std::size_t i = 0; i < n; ++i) {
    ExtVal a = i < u.size() ? static_cast<ExtVal>(u[i]) : -1;
    ExtVal b = i < v.size() ? static_cast<ExtVal>(v[i]) : -1;
    w[i] = static_cast<Nat>(pair_ext(a, b));
  }
  return w;
}

Nat call_oracle(const BranchOracle& alpha, Nat i) {
  if (!alpha) throw Error(ErrorCode::OracleError, "empty branch oracle");
  try {
    return alpha(i);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::OracleError,
                "oracle failed at index " + std::to_string(i) + ": " + e.what());
  }
}

FinSeq prefix(const BranchOracle& alpha, Nat n) {
  FinSeq u;
  u.reserve(n);
  for (Nat i = 0; i < n; ++i) u.push_back(call_oracle(alpha, i));
  return u;
}

SeqCode prefix_code(const BranchOracle& alpha, Nat n) { return encode(prefix(alpha, n)); }

Nat diag_section(const BranchOracle& alpha, Nat i, Nat n) {
  return call_oracle(alpha, encode({i, n}).value);
}

bool is_prefix(const FinSeq& u, const FinSeq& v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

bool is_proper_prefix(const FinSeq& u, const FinSeq& v) {
  return u.size() < v.size() && is_prefix(u, v);
}

bool compatible(const FinSeq& u, const FinSeq& v) {
  return is_prefix(u, v) || is_prefix(v, u);
}

bool incompatible(const FinSeq& u, const FinSeq& v) { return !compatible(u, v); }

FinSeq concat(const FinSeq& u, const FinSeq& v) {
  FinSeq w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

FinSeq extend(const FinSeq& u, Nat k) {
  FinSeq w = u;
  w.push_back(k);
  return w;
}

FinSeq truncate(const FinSeq& u, std::size_t n) {
  return FinSeq(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(std::min(n, u.size())));
}

std::string to_string(const FinSeq& u) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out << ',';
    out << u[i];
  }
  out << ')';
  return out.str();
}

}  // namespace omt
