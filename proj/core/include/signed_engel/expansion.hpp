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

#ifndef SIGNED_ENGEL_EXPANSION_HPP_
#define SIGNED_ENGEL_EXPANSION_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "signed_engel/ball.hpp"
#include "signed_engel/rational.hpp"

namespace signed_engel {

inline constexpr std::size_t kDefaultRationalDigits = 64;
inline constexpr std::size_t kDefaultBallDigits = 256;

enum class StopReason {
  kTerminated,          // T^n x == 0 was reached
  kMaxDigits,           // digit budget exhausted
  kPrecisionExhausted,  // a ball straddled a cell boundary
};

std::string_view to_string(StopReason reason);

// Digits d_1..d_n, per-step signs s_1..s_{n-1} and cumulative signs
// e_1..e_n of x = sum_k e_k / (d_1 ... d_k).
struct SignedEngelExpansion {
  std::vector<BigInt> digits;
  std::vector<int> step_signs;
  std::vector<int> cum_signs;
  bool terminated = false;
  std::size_t certified_prefix_len = 0;
  StopReason stop_reason = StopReason::kMaxDigits;

  std::size_t size() const { return digits.size(); }
  bool empty() const { return digits.empty(); }

  friend bool operator==(const SignedEngelExpansion&, const SignedEngelExpansion&) = default;
};

// An expansion together with the exact T-orbit it was read from:
// orbit[k] == T^k x for k = 0..size(). For balls the orbit is the center's.
struct ExpansionWithOrbit {
  SignedEngelExpansion expansion;
  std::vector<Rational> orbit;
};

struct DigitSign {
  BigInt digit;
  int sign;
};

// The signed Engel map on [0, 1). Throws kOutOfDomain outside.
Rational apply_map(const Rational& x);

// First digit and step sign of x in (0, 1), using half-open cells that are
// closed on the left.
DigitSign digit_and_sign(const Rational& x);

SignedEngelExpansion expand_rational(const Rational& x,
                                     std::size_t max_digits = kDefaultRationalDigits);
ExpansionWithOrbit expand_rational_with_orbit(const Rational& x,
                                              std::size_t max_digits = kDefaultRationalDigits);

// Emits digits only while the whole ball sits inside one digit cell, so every
// emitted digit is correct for every real in the ball.
SignedEngelExpansion expand_certified(const Ball& b,
                                      std::size_t max_digits = kDefaultBallDigits);
ExpansionWithOrbit expand_certified_with_orbit(const Ball& b,
                                               std::size_t max_digits = kDefaultBallDigits);

// Exact partial sum of the first n terms, 1 <= n <= e.size().
Rational reconstruct(const SignedEngelExpansion& e, std::size_t n);
Rational reconstruct(std::span<const BigInt> digits, std::span<const int> cum_signs);

struct DerivedSequences {
  std::vector<BigInt> gaps;           // Δ_1 = d_1, Δ_k = d_k - d_{k-1}
  std::vector<Rational> ratios;       // R_1 = d_1, R_k = d_k / d_{k-1}
  std::vector<Rational> running_max;  // M_k = max_{i<=k} R_i
  std::vector<Rational> y_values;     // empty when no orbit was supplied
  std::vector<BigInt> Y_values;       // odd, brackets the normalized ratio
  std::vector<BigInt> U_values;       // U_k = max_{i<=k} Y_i
};

DerivedSequences derive_sequences(const SignedEngelExpansion& e,
                                  std::span<const Rational> orbit = {});

// Greatest odd integer <= q.
BigInt greatest_odd_at_most(const Rational& q);

// Classical Engel and Pierce digit extractors, used as reference systems.
std::vector<BigInt> engel_digits(const Rational& x,
                                 std::size_t max_digits = kDefaultRationalDigits);
std::vector<BigInt> pierce_digits(const Rational& x,
                                  std::size_t max_digits = kDefaultRationalDigits);
Rational engel_value(std::span<const BigInt> digits);
Rational pierce_value(std::span<const BigInt> digits);

nlohmann::ordered_json to_json(const SignedEngelExpansion& e);
SignedEngelExpansion expansion_from_json(const nlohmann::json& j);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_EXPANSION_HPP_
