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

#include "signed_engel/symbolic.hpp"

#include <sstream>
#include <utility>

#include "signed_engel/error.hpp"

namespace signed_engel {

namespace {

void require_well_formed(const SymbolSequence& s) {
  if (s.digits.empty()) throw Error(ErrorCode::kMalformed, "empty symbol sequence");
  if (s.signs.size() != s.digits.size()) {
    throw Error(ErrorCode::kMalformed, "digit and sign counts differ");
  }
  if (s.signs.front() != 1) throw Error(ErrorCode::kMalformed, "first sign must be +1");
  for (int sign : s.signs) {
    if (sign != 1 && sign != -1) throw Error(ErrorCode::kMalformed, "signs must be +1 or -1");
  }
  for (const BigInt& d : s.digits) {
    if (d <= 0) throw Error(ErrorCode::kMalformed, "digits must be positive");
  }
}

bool is_even(const BigInt& v) { return mpz_even_p(v.get_mpz_t()) != 0; }

int parse_sign(std::string_view token) {
  if (token == "+1" || token == "1" || token == "+") return 1;
  if (token == "-1" || token == "-") return -1;
  throw Error(ErrorCode::kMalformed, "expected a sign, got '" + std::string(token) + "'");
}

void extend(std::vector<SymbolSequence>& out, SymbolSequence& prefix, std::size_t n,
            long bound) {
  if (prefix.size() == n) {
    out.push_back(prefix);
    return;
  }
  const long last = prefix.digits.back().get_si();
  const int last_sign = prefix.signs.back();
  for (int sign : {1, -1}) {
    const long start = sign == last_sign ? last : last + 2;
    for (long d = start; d <= bound; d += 2) {
      prefix.digits.emplace_back(d);
      prefix.signs.push_back(sign);
      extend(out, prefix, n, bound);
      prefix.digits.pop_back();
      prefix.signs.pop_back();
    }
  }
}

}  // namespace

Admissibility check_admissible(const SymbolSequence& s, SymbolSpace space) {
  require_well_formed(s);
  const std::size_t n = s.size();
  if (s.digits[0] < 2) return {false, "first digit must be at least 2"};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!is_even(s.digits[i])) {
      return {false, "digit " + std::to_string(i + 1) + " is odd but not last"};
    }
    if (s.digits[i + 1] < s.digits[i]) {
      return {false, "digits decrease at position " + std::to_string(i + 2)};
    }
    if (s.signs[i + 1] == -s.signs[i] && s.digits[i + 1] < s.digits[i] + 2) {
      return {false, "sign flip at position " + std::to_string(i + 2) +
                         " without a gap of at least 2"};
    }
  }
  if (space == SymbolSpace::kSigmaNPrime && !is_even(s.digits.back())) {
    return {false, "final digit is odd"};
  }
  return {true, ""};
}

std::vector<SymbolSequence> enumerate_sequences(std::size_t n, long bound) {
  std::vector<SymbolSequence> out;
  if (n == 0) return out;
  SymbolSequence prefix;
  for (long d = 2; d <= bound; d += 2) {
    prefix.digits.assign(1, BigInt(d));
    prefix.signs.assign(1, 1);
    extend(out, prefix, n, bound);
  }
  return out;
}

SymbolSequence parse_symbols(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> tokens;
  for (std::string token; in >> token;) tokens.push_back(std::move(token));
  if (tokens.empty() || tokens.size() % 2 == 0) {
    throw Error(ErrorCode::kMalformed,
                "expected digits and signs interleaved: '" + std::string(text) + "'");
  }
  SymbolSequence s;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i % 2 == 0) {
      try {
        s.digits.push_back(parse_bigint(tokens[i]));
      } catch (const Error&) {
        throw Error(ErrorCode::kMalformed, "expected a digit, got '" + tokens[i] + "'");
      }
      if (i == 0) s.signs.push_back(1);
    } else {
      s.signs.push_back(parse_sign(tokens[i]));
    }
  }
  require_well_formed(s);
  return s;
}

std::string format_symbols(const SymbolSequence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += s.signs[i] > 0 ? " +1 " : " -1 ";
    out += s.digits[i].get_str(10);
  }
  return out;
}

SymbolSequence to_symbols(const SignedEngelExpansion& e) {
  return SymbolSequence{e.digits, e.cum_signs};
}

std::vector<int> step_signs(const SymbolSequence& s) {
  std::vector<int> out;
  for (std::size_t i = 1; i < s.signs.size(); ++i) out.push_back(s.signs[i] * s.signs[i - 1]);
  return out;
}

std::vector<int> cumulative_signs(std::span<const int> steps) {
  std::vector<int> out{1};
  for (int s : steps) out.push_back(out.back() * s);
  return out;
}

}  // namespace signed_engel
