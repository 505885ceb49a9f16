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

#ifndef SIGNED_ENGEL_BALL_HPP_
#define SIGNED_ENGEL_BALL_HPP_

#include <optional>
#include <string_view>

#include "signed_engel/rational.hpp"

namespace signed_engel {

// A certified real: the closed interval [center - radius, center + radius]
// with exact rational endpoints.
class Ball {
 public:
  Ball() = default;
  explicit Ball(Rational center, Rational radius = Rational());

  static Ball from_bounds(const Rational& lower, const Rational& upper);

  const Rational& center() const { return center_; }
  const Rational& radius() const { return radius_; }
  Rational lower() const { return center_ - radius_; }
  Rational upper() const { return center_ + radius_; }
  bool is_exact() const { return radius_.is_zero(); }
  bool contains(const Rational& x) const { return lower() <= x && x <= upper(); }
  bool contains_zero() const { return contains(Rational()); }

  friend bool operator==(const Ball&, const Ball&) = default;

 private:
  Rational center_;
  Rational radius_;
};

// Arithmetic encloses the exact image of every contained point. All four
// operations are computed on exact endpoints, so the enclosure is the hull.
Ball operator+(const Ball& a, const Ball& b);
Ball operator-(const Ball& a, const Ball& b);
Ball operator*(const Ball& a, const Ball& b);
Ball operator/(const Ball& a, const Ball& b);  // throws kOutOfDomain if 0 ∈ b

enum class Position { kBelow, kAbove, kStraddles };

// kBelow iff the whole ball is < q; kAbove iff the whole ball is >= q. The
// split point belongs to the right-hand cell, as in the half-open digit cells.
Position ball_position(const Ball& b, const Rational& q);

// Builds a ball from "0.ddd" (half-ulp radius of the last printed digit) or
// from an exact fraction "p/q" (radius zero). The value must lie in (0, 1).
// A present `extra_radius_log2 = k` adds 2^-k to the decimal radius.
Ball ball_from_decimal(std::string_view text,
                       std::optional<unsigned> extra_radius_log2 = std::nullopt);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_BALL_HPP_
