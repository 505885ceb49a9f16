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

#include "signed_engel/intervals.hpp"

#include <string>
#include <utility>

#include "signed_engel/error.hpp"
#include "signed_engel/expansion.hpp"

namespace signed_engel {

BasicInterval basic_interval(const SymbolSequence& s) {
  const Admissibility verdict = check_admissible(s, SymbolSpace::kSigmaN);
  if (!verdict) throw Error(ErrorCode::kNotAdmissible, verdict.reason);
  const BigInt& last = s.digits.back();
  if (mpz_odd_p(last.get_mpz_t()) != 0) {
    throw Error(ErrorCode::kOddFinalDigit, "cylinder of '" + format_symbols(s) +
                                               "' is a single point");
  }

  Rational prefix_sum;
  BigInt product = 1;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    product *= s.digits[i];
    prefix_sum += make_rational(BigInt(s.signs[i]), product);
  }
  const BigInt sign(s.signs.back());
  const Rational toward_minus = prefix_sum + make_rational(sign, product * (last - 1));
  const Rational toward_plus = prefix_sum + make_rational(sign, product * (last + 1));

  BasicInterval out;
  out.symbols = s;
  if (s.signs.back() < 0) {
    out.lower = toward_minus;
    out.upper = toward_plus;
  } else {
    out.lower = toward_plus;
    out.upper = toward_minus;
  }
  out.length = out.upper - out.lower;
  return out;
}

Rational cylinder_length(const SymbolSequence& s) {
  BigInt product = 1;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) product *= s.digits[i];
  const BigInt& last = s.digits.back();
  return make_rational(BigInt(2), product * (last - 1) * (last + 1));
}

BasicInterval locate(const Rational& x, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kIndexOutOfRange, "locate: order must be >= 1");
  const SignedEngelExpansion e = expand_rational(x, n);
  if (e.size() < n) {
    throw Error(ErrorCode::kExpansionTooShort,
                x.to_string() + " has only " + std::to_string(e.size()) + " digits");
  }
  if (mpz_odd_p(e.digits[n - 1].get_mpz_t()) != 0) {
    throw Error(ErrorCode::kOddDigitAtN,
                "digit " + std::to_string(n) + " of " + x.to_string() + " is odd");
  }
  SymbolSequence prefix;
  prefix.digits.assign(e.digits.begin(), e.digits.begin() + static_cast<long>(n));
  prefix.signs.assign(e.cum_signs.begin(), e.cum_signs.begin() + static_cast<long>(n));
  return basic_interval(prefix);
}

nlohmann::ordered_json to_json(const BasicInterval& interval) {
  nlohmann::ordered_json j;
  j["symbols"] = format_symbols(interval.symbols);
  j["lower"] = interval.lower.to_string();
  j["upper"] = interval.upper.to_string();
  j["length"] = interval.length.to_string();
  return j;
}

}  // namespace signed_engel
