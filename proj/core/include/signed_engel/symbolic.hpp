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

#ifndef SIGNED_ENGEL_SYMBOLIC_HPP_
#define SIGNED_ENGEL_SYMBOLIC_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "signed_engel/expansion.hpp"
#include "signed_engel/rational.hpp"

namespace signed_engel {

// A finite symbol string (σ_1, δ_2, σ_2, ..., δ_n, σ_n).
//
// `signs` holds δ_1..δ_n with δ_1 = +1; the δ_i are cumulative signs, the
// same convention as SignedEngelExpansion::cum_signs.
struct SymbolSequence {
  std::vector<BigInt> digits;
  std::vector<int> signs;

  std::size_t size() const { return digits.size(); }

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;
};

enum class SymbolSpace {
  kSigmaN,       // final digit may be odd
  kSigmaNPrime,  // every digit even
};

struct Admissibility {
  bool valid = false;
  std::string reason;  // empty when valid

  explicit operator bool() const { return valid; }
};

// Throws kMalformed for sequences that are not well formed (empty, length
// mismatch, δ_1 != +1, signs other than ±1, non-positive digits).
Admissibility check_admissible(const SymbolSequence& s,
                               SymbolSpace space = SymbolSpace::kSigmaN);

// All Σ'_n strings whose digits are <= bound, in lexicographic order with
// +1 sorting before -1.
std::vector<SymbolSequence> enumerate_sequences(std::size_t n, long bound);

// "2 +1 2 -1 6": digits and signs interleaved, δ_1 omitted.
SymbolSequence parse_symbols(std::string_view text);
std::string format_symbols(const SymbolSequence& s);

SymbolSequence to_symbols(const SignedEngelExpansion& e);

// Step-relative signs s_i = δ_{i+1} δ_i, i = 1..n-1.
std::vector<int> step_signs(const SymbolSequence& s);
// Inverse of step_signs: cumulative signs from step signs.
std::vector<int> cumulative_signs(std::span<const int> steps);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_SYMBOLIC_HPP_
