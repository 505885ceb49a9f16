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

#include "signed_engel/rational.hpp"

#include <utility>

#include "signed_engel/error.hpp"

namespace signed_engel {

namespace {

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational Rational::abs() const {
  Rational out;
  mpq_abs(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw Error(ErrorCode::kZeroDenominator, "reciprocal of zero");
  Rational out;
  mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

BigInt Rational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return q;
}

std::string Rational::to_string() const { return value_.get_str(10); }

std::string Rational::to_decimal(unsigned digits) const {
  BigInt scaled = num() * pow10(digits);
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), den().get_mpz_t());
  const bool negative = sign() < 0;
  if (negative) q = -q;
  std::string body = q.get_str(10);
  if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
  std::string out = negative ? "-" : "";
  out += body.substr(0, body.size() - digits);
  if (digits > 0) {
    out += '.';
    out += body.substr(body.size() - digits);
  }
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::kZeroDenominator, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& x) {
  Rational out;
  out.value_ = -x.value_;
  return out;
}

Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw Error(ErrorCode::kZeroDenominator, "denominator is zero");
  Rational out;
  out.value_.get_num() = std::move(num);
  out.value_.get_den() = std::move(den);
  out.value_.canonicalize();
  return out;
}

BigInt parse_bigint(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) {
    throw Error(ErrorCode::kParseError, "not an integer: '" + std::string(text) + "'");
  }
  BigInt out;
  out.set_str(std::string(digits), 10);
  if (text.front() == '-') out = -out;
  return out;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  return make_rational(parse_bigint(text.substr(0, slash)),
                       parse_bigint(text.substr(slash + 1)));
}

BigInt pow10(unsigned exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

BigInt pow2(unsigned exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
  return out;
}

}  // namespace signed_engel
