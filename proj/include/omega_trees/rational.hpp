#pragma once

#include <compare>
#include <string>

#include "omega_trees/seqcode.hpp"

namespace omt {

/// Exact non-negative rational num/den, kept in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Nat num, Nat den);

  Nat num() const { return num_; }
  Nat den() const { return den_; }

  std::strong_ordering operator<=>(const Rational& other) const;
  bool operator==(const Rational& other) const = default;

  std::string str() const;

 private:
  Nat num_ = 0;
  Nat den_ = 1;
};

}  // namespace omt
