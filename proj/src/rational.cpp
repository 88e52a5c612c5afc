#include "omega_trees/rational.hpp"

#include <numeric>

#include "omega_trees/error.hpp"

namespace omt {

Rational::Rational(Nat num, Nat den) {
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
  Nat g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  using Wide = unsigned __int128;
  Wide lhs = static_cast<Wide>(num_) * other.den_;
  Wide rhs = static_cast<Wide>(other.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace omt
