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

#ifndef SIGNED_ENGEL_INTERVALS_HPP_
#define SIGNED_ENGEL_INTERVALS_HPP_

#include <cstddef>

#include <nlohmann/json.hpp>

#include "signed_engel/rational.hpp"
#include "signed_engel/symbolic.hpp"

namespace signed_engel {

// The order-n cylinder of a Σ'_n string: the open interval (lower, upper) of
// points whose expansion starts with the given digits and signs.
struct BasicInterval {
  SymbolSequence symbols;
  Rational lower;
  Rational upper;
  Rational length;

  bool contains(const Rational& x) const { return lower < x && x < upper; }
};

// Throws kNotAdmissible for strings outside Σ_n, and kOddFinalDigit when the
// final digit is odd (that cylinder is a single rational point).
BasicInterval basic_interval(const SymbolSequence& s);

// Closed-form length 2 / (σ_1 ... σ_{n-1} (σ_n - 1)(σ_n + 1)).
Rational cylinder_length(const SymbolSequence& s);

// The order-n cylinder containing x. Throws kExpansionTooShort when x
// terminates before n digits and kOddDigitAtN when digit n is odd.
BasicInterval locate(const Rational& x, std::size_t n);

nlohmann::ordered_json to_json(const BasicInterval& interval);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_INTERVALS_HPP_
