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

#include "signed_engel/expansion.hpp"

#include <limits>
#include <string>
#include <utility>

#include "signed_engel/error.hpp"

namespace signed_engel {

namespace {

void require_open_unit(const Rational& x, const char* what) {
  if (x.sign() <= 0 || x >= Rational(1)) {
    throw Error(ErrorCode::kOutOfDomain, std::string(what) + ": " + x.to_string() +
                                             " is outside (0,1)");
  }
}

// Digit and sign of p/q with 0 < p < q. Writing 1/x = f + rem/p:
//   rem == 0: x = 1/f, digit f, sign + when f is even and - when odd;
//   f odd:    x in (1/(f+1), 1/f), digit f+1, sign +;
//   f even:   x in (1/(f+1), 1/f), digit f, sign -.
DigitSign digit_and_sign_pq(const BigInt& p, const BigInt& q) {
  BigInt f, rem;
  mpz_fdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  const bool f_odd = mpz_odd_p(f.get_mpz_t()) != 0;
  if (rem == 0) return {f, f_odd ? -1 : 1};
  if (f_odd) return {f + 1, 1};
  return {f, -1};
}

void append_digit(SignedEngelExpansion& e, const BigInt& digit, int& pending_sign,
                  int sign) {
  if (e.digits.empty()) {
    e.cum_signs.push_back(1);
  } else {
    e.step_signs.push_back(pending_sign);
    e.cum_signs.push_back(e.cum_signs.back() * pending_sign);
  }
  e.digits.push_back(digit);
  pending_sign = sign;
}

bool fits_int64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

// Whether every point of `b` shares the cell of its center, whose digit and
// sign are `ds`.
bool ball_in_cell(const Ball& b, const DigitSign& ds) {
  if (mpz_odd_p(ds.digit.get_mpz_t()) != 0) return b.is_exact();
  const Rational at_digit = make_rational(BigInt(1), ds.digit);
  if (ds.sign > 0) {
    // [1/(2k), 1/(2k-1))
    const Rational right = make_rational(BigInt(1), ds.digit - 1);
    return ball_position(b, at_digit) == Position::kAbove &&
           ball_position(b, right) == Position::kBelow;
  }
  // (1/(2k+1), 1/(2k)); the left end point is the odd singleton cell.
  const Rational left = make_rational(BigInt(1), ds.digit + 1);
  return ball_position(b, left) == Position::kAbove && b.lower() != left &&
         ball_position(b, at_digit) == Position::kBelow;
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kTerminated:
      return "terminated";
    case StopReason::kMaxDigits:
      return "max_digits";
    case StopReason::kPrecisionExhausted:
      return "precision_exhausted";
  }
  return "unknown";
}

DigitSign digit_and_sign(const Rational& x) {
  require_open_unit(x, "digit_and_sign");
  return digit_and_sign_pq(x.num(), x.den());
}

Rational apply_map(const Rational& x) {
  if (x.is_zero()) return x;
  if (x.sign() < 0 || x >= Rational(1)) {
    throw Error(ErrorCode::kOutOfDomain, "apply_map: " + x.to_string() + " is outside [0,1)");
  }
  const DigitSign ds = digit_and_sign_pq(x.num(), x.den());
  return Rational(ds.sign) * (Rational(ds.digit) * x - Rational(1));
}

ExpansionWithOrbit expand_rational_with_orbit(const Rational& x, std::size_t max_digits) {
  require_open_unit(x, "expand_rational");
  ExpansionWithOrbit out;
  SignedEngelExpansion& e = out.expansion;
  out.orbit.push_back(x);

  // T^n x keeps the denominator of x: T(p/q) = s (d p - q) / q.
  BigInt p = x.num();
  const BigInt& q = x.den();
  int pending = 1;
  while (e.digits.size() < max_digits) {
    const DigitSign ds = digit_and_sign_pq(p, q);
    append_digit(e, ds.digit, pending, ds.sign);
    p = ds.sign * (ds.digit * p - q);
    out.orbit.push_back(make_rational(p, q));
    if (p == 0) {
      e.terminated = true;
      break;
    }
  }
  e.stop_reason = e.terminated ? StopReason::kTerminated : StopReason::kMaxDigits;
  e.certified_prefix_len = e.digits.size();
  return out;
}

SignedEngelExpansion expand_rational(const Rational& x, std::size_t max_digits) {
  require_open_unit(x, "expand_rational");
  SignedEngelExpansion e;
  BigInt p = x.num();
  const BigInt& q = x.den();
  int pending = 1;
  while (e.digits.size() < max_digits) {
    const DigitSign ds = digit_and_sign_pq(p, q);
    append_digit(e, ds.digit, pending, ds.sign);
    p = ds.sign * (ds.digit * p - q);
    if (p == 0) {
      e.terminated = true;
      break;
    }
  }
  e.stop_reason = e.terminated ? StopReason::kTerminated : StopReason::kMaxDigits;
  e.certified_prefix_len = e.digits.size();
  return e;
}

ExpansionWithOrbit expand_certified_with_orbit(const Ball& b, std::size_t max_digits) {
  require_open_unit(b.center(), "expand_certified");
  ExpansionWithOrbit out;
  SignedEngelExpansion& e = out.expansion;
  out.orbit.push_back(b.center());
  e.stop_reason = StopReason::kMaxDigits;

  Ball current = b;
  int pending = 1;
  while (e.digits.size() < max_digits) {
    if (current.lower().sign() <= 0 || current.upper() >= Rational(1)) {
      e.stop_reason = StopReason::kPrecisionExhausted;
      break;
    }
    const DigitSign ds = digit_and_sign_pq(current.center().num(), current.center().den());
    if (!ball_in_cell(current, ds)) {
      e.stop_reason = StopReason::kPrecisionExhausted;
      break;
    }
    append_digit(e, ds.digit, pending, ds.sign);
    // T is affine on the cell, so the image of the ball is exact.
    const Rational d(ds.digit);
    current = Ball(Rational(ds.sign) * (d * current.center() - Rational(1)),
                   d * current.radius());
    out.orbit.push_back(current.center());
    if (current.is_exact() && current.center().is_zero()) {
      e.terminated = true;
      e.stop_reason = StopReason::kTerminated;
      break;
    }
  }
  e.certified_prefix_len = e.digits.size();
  return out;
}

SignedEngelExpansion expand_certified(const Ball& b, std::size_t max_digits) {
  return expand_certified_with_orbit(b, max_digits).expansion;
}

Rational reconstruct(std::span<const BigInt> digits, std::span<const int> cum_signs) {
  if (digits.size() != cum_signs.size()) {
    throw Error(ErrorCode::kMalformed, "digits and signs differ in length");
  }
  Rational sum;
  BigInt product = 1;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    product *= digits[k];
    sum += make_rational(BigInt(cum_signs[k]), product);
  }
  return sum;
}

Rational reconstruct(const SignedEngelExpansion& e, std::size_t n) {
  if (n < 1 || n > e.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "reconstruct: n=" + std::to_string(n) + " with " +
                    std::to_string(e.size()) + " digits");
  }
  return reconstruct(std::span(e.digits).first(n), std::span(e.cum_signs).first(n));
}

BigInt greatest_odd_at_most(const Rational& q) {
  BigInt f = q.floor();
  if (mpz_even_p(f.get_mpz_t()) != 0) f -= 1;
  return f;
}

DerivedSequences derive_sequences(const SignedEngelExpansion& e,
                                  std::span<const Rational> orbit) {
  if (e.empty()) throw Error(ErrorCode::kEmptyExpansion, "derive_sequences");
  const std::size_t n = e.size();
  const bool with_y = orbit.size() >= n;
  DerivedSequences out;
  out.gaps.reserve(n);
  out.ratios.reserve(n);
  out.running_max.reserve(n);
  out.Y_values.reserve(n);
  out.U_values.reserve(n);

  for (std::size_t k = 0; k < n; ++k) {
    const BigInt& d = e.digits[k];
    if (k == 0) {
      out.gaps.push_back(d);
      out.ratios.push_back(Rational(d));
      out.Y_values.push_back(greatest_odd_at_most(Rational(d)));
      if (with_y) out.y_values.push_back(orbit[0]);
    } else {
      const BigInt& prev = e.digits[k - 1];
      const bool same_sign = e.cum_signs[k] == e.cum_signs[k - 1];
      const BigInt shifted = same_sign ? BigInt(prev - 1) : BigInt(prev + 1);
      out.gaps.push_back(d - prev);
      out.ratios.push_back(make_rational(d, prev));
      out.Y_values.push_back(greatest_odd_at_most(make_rational(d, shifted)));
      if (with_y) out.y_values.push_back(Rational(shifted) * orbit[k]);
    }
    if (k == 0 || out.ratios.back() > out.running_max.back()) {
      out.running_max.push_back(out.ratios.back());
    } else {
      out.running_max.push_back(out.running_max.back());
    }
    if (k == 0 || out.Y_values.back() > out.U_values.back()) {
      out.U_values.push_back(out.Y_values.back());
    } else {
      out.U_values.push_back(out.U_values.back());
    }
  }
  return out;
}

std::vector<BigInt> engel_digits(const Rational& x, std::size_t max_digits) {
  require_open_unit(x, "engel_digits");
  std::vector<BigInt> digits;
  BigInt p = x.num();
  const BigInt& q = x.den();
  while (p != 0 && digits.size() < max_digits) {
    BigInt d;
    mpz_cdiv_q(d.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    p = d * p - q;
    digits.push_back(std::move(d));
  }
  return digits;
}

std::vector<BigInt> pierce_digits(const Rational& x, std::size_t max_digits) {
  require_open_unit(x, "pierce_digits");
  std::vector<BigInt> digits;
  BigInt p = x.num();
  const BigInt& q = x.den();
  while (p != 0 && digits.size() < max_digits) {
    BigInt d;
    mpz_fdiv_q(d.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    p = q - d * p;
    digits.push_back(std::move(d));
  }
  return digits;
}

Rational engel_value(std::span<const BigInt> digits) {
  Rational sum;
  BigInt product = 1;
  for (const BigInt& d : digits) {
    product *= d;
    sum += make_rational(BigInt(1), product);
  }
  return sum;
}

Rational pierce_value(std::span<const BigInt> digits) {
  Rational sum;
  BigInt product = 1;
  int sign = 1;
  for (const BigInt& d : digits) {
    product *= d;
    sum += make_rational(BigInt(sign), product);
    sign = -sign;
  }
  return sum;
}

nlohmann::ordered_json to_json(const SignedEngelExpansion& e) {
  nlohmann::ordered_json digits = nlohmann::ordered_json::array();
  for (const BigInt& d : e.digits) {
    // Digits beyond 64 bits are emitted as decimal strings.
    if (fits_int64(d)) {
      digits.push_back(d.get_si());
    } else {
      digits.push_back(d.get_str(10));
    }
  }
  nlohmann::ordered_json j;
  j["digits"] = std::move(digits);
  j["step_signs"] = e.step_signs;
  j["cum_signs"] = e.cum_signs;
  j["terminated"] = e.terminated;
  j["certified_prefix_len"] = e.certified_prefix_len;
  j["stop_reason"] = std::string(to_string(e.stop_reason));
  return j;
}

SignedEngelExpansion expansion_from_json(const nlohmann::json& j) {
  try {
    SignedEngelExpansion e;
    for (const auto& d : j.at("digits")) {
      e.digits.push_back(d.is_string() ? parse_bigint(d.get<std::string>())
                                       : BigInt(d.get<long>()));
    }
    e.step_signs = j.at("step_signs").get<std::vector<int>>();
    e.cum_signs = j.at("cum_signs").get<std::vector<int>>();
    e.terminated = j.at("terminated").get<bool>();
    e.certified_prefix_len = j.at("certified_prefix_len").get<std::size_t>();
    const std::string reason = j.value("stop_reason", std::string("max_digits"));
    if (reason == "terminated") {
      e.stop_reason = StopReason::kTerminated;
    } else if (reason == "precision_exhausted") {
      e.stop_reason = StopReason::kPrecisionExhausted;
    } else {
      e.stop_reason = StopReason::kMaxDigits;
    }
    if (e.cum_signs.size() != e.digits.size() ||
        e.step_signs.size() + (e.digits.empty() ? 0 : 1) != e.digits.size()) {
      throw Error(ErrorCode::kMalformed, "expansion JSON has inconsistent lengths");
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kParseError, ex.what());
  }
}

}  // namespace signed_engel
