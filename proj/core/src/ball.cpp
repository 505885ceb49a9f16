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

#include "signed_engel/ball.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "signed_engel/error.hpp"

namespace signed_engel {

namespace {

Ball hull(std::array<Rational, 4> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return Ball::from_bounds(*lo, *hi);
}

}  // namespace

Ball::Ball(Rational center, Rational radius)
    : center_(std::move(center)), radius_(std::move(radius)) {
  if (radius_.sign() < 0) {
    throw Error(ErrorCode::kOutOfDomain, "ball radius must be non-negative");
  }
}

Ball Ball::from_bounds(const Rational& lower, const Rational& upper) {
  if (upper < lower) throw Error(ErrorCode::kOutOfDomain, "ball bounds are reversed");
  const Rational half = make_rational(1, 2);
  return Ball((lower + upper) * half, (upper - lower) * half);
}

Ball operator+(const Ball& a, const Ball& b) {
  return Ball(a.center() + b.center(), a.radius() + b.radius());
}

Ball operator-(const Ball& a, const Ball& b) {
  return Ball(a.center() - b.center(), a.radius() + b.radius());
}

Ball operator*(const Ball& a, const Ball& b) {
  const Rational al = a.lower(), au = a.upper(), bl = b.lower(), bu = b.upper();
  return hull({al * bl, al * bu, au * bl, au * bu});
}

Ball operator/(const Ball& a, const Ball& b) {
  if (b.contains_zero()) throw Error(ErrorCode::kOutOfDomain, "divisor ball contains zero");
  const Rational al = a.lower(), au = a.upper(), bl = b.lower(), bu = b.upper();
  return hull({al / bl, al / bu, au / bl, au / bu});
}

Position ball_position(const Ball& b, const Rational& q) {
  if (b.upper() < q) return Position::kBelow;
  if (b.lower() >= q) return Position::kAbove;
  return Position::kStraddles;
}

Ball ball_from_decimal(std::string_view text, std::optional<unsigned> extra_radius_log2) {
  const std::string original(text);
  if (text.find('/') != std::string_view::npos) {
    Rational value = parse_rational(text);
    if (value.sign() <= 0 || value >= Rational(1)) {
      throw Error(ErrorCode::kOutOfDomain, "value outside (0,1): " + original);
    }
    return Ball(std::move(value));
  }

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac =
      dot == std::string_view::npos ? std::string_view() : text.substr(dot + 1);
  auto digits_only = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if ((whole.empty() && frac.empty()) || !digits_only(whole) || !digits_only(frac)) {
    throw Error(ErrorCode::kParseError, "not a decimal: '" + original + "'");
  }

  const auto scale = static_cast<unsigned>(frac.size());
  BigInt mantissa;
  const std::string all = std::string(whole) + std::string(frac);
  mantissa.set_str(all.empty() ? "0" : all, 10);
  if (negative) mantissa = -mantissa;
  Rational center = make_rational(mantissa, pow10(scale));
  if (center.sign() <= 0 || center >= Rational(1)) {
    throw Error(ErrorCode::kOutOfDomain, "value outside (0,1): " + original);
  }

  Rational radius = make_rational(BigInt(1), 2 * pow10(scale));
  if (extra_radius_log2) radius += make_rational(BigInt(1), pow2(*extra_radius_log2));
  return Ball(std::move(center), std::move(radius));
}

}  // namespace signed_engel
