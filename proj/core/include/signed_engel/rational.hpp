// Copyright 2026 The signed-engel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIGNED_ENGEL_RATIONAL_HPP_
#define SIGNED_ENGEL_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace signed_engel {

using BigInt = mpz_class;

// Exact fraction num/den with den > 0 and gcd(|num|, den) = 1.
//
// Backed by GMP's mpq_t; every arithmetic operation is exact and the value is
// kept in canonical form after each operation.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: integers promote freely.
  explicit Rational(const BigInt& value) : value_(value) {}

  const BigInt& num() const { return value_.get_num(); }
  const BigInt& den() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return den() == 1; }

  Rational abs() const;
  Rational reciprocal() const;
  BigInt floor() const;
  BigInt ceil() const;
  double to_double() const { return value_.get_d(); }

  // Canonical "p/q" text, or "p" when the denominator is 1.
  std::string to_string() const;

  // Decimal rendering truncated toward zero after `digits` fractional digits.
  std::string to_decimal(unsigned digits) const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x);

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

  const mpq_class& raw() const { return value_; }

 private:
  friend Rational make_rational(BigInt num, BigInt den);

  mpq_class value_;
};

// Normalized num/den. Throws Error(kZeroDenominator) when den == 0.
Rational make_rational(BigInt num, BigInt den);
inline Rational make_rational(long num, long den) {
  return make_rational(BigInt(num), BigInt(den));
}

// Parses "p/q" or a plain integer "p". Throws Error(kParseError) or
// Error(kZeroDenominator).
Rational parse_rational(std::string_view text);

// Parses a base-10 integer with optional leading sign.
BigInt parse_bigint(std::string_view text);

// Two's-power and ten's-power helpers used by the decimal and ball code.
BigInt pow10(unsigned exponent);
BigInt pow2(unsigned exponent);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_RATIONAL_HPP_
