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

#include <random>
#include <string>

#include <gtest/gtest.h>

#include "signed_engel/ball.hpp"
#include "signed_engel/error.hpp"
#include "signed_engel/expansion.hpp"
#include "signed_engel/symbolic.hpp"
#include "unit/oracles.hpp"

namespace se = signed_engel;

namespace {

se::Rational q(long p, long d) { return se::make_rational(p, d); }

std::vector<se::BigInt> big(std::initializer_list<long> xs) {
  std::vector<se::BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

TEST(ApplyMap, Examples) {
  EXPECT_EQ(se::apply_map(q(1, 2)), q(0, 1));
  EXPECT_EQ(se::apply_map(q(2, 5)), q(1, 5));
  EXPECT_EQ(se::apply_map(q(3, 5)), q(1, 5));
  EXPECT_EQ(se::apply_map(q(0, 1)), q(0, 1));
  EXPECT_THROW(se::apply_map(q(1, 1)), se::Error);
  EXPECT_THROW(se::apply_map(q(-1, 3)), se::Error);
}

TEST(DigitAndSign, Examples) {
  auto check = [](se::Rational x, long d, int s) {
    const se::DigitSign ds = se::digit_and_sign(x);
    EXPECT_EQ(ds.digit, d) << x.to_string();
    EXPECT_EQ(ds.sign, s) << x.to_string();
  };
  check(q(1, 2), 2, 1);
  check(q(2, 5), 2, -1);
  check(q(1, 3), 3, -1);
  check(q(1, 4), 4, 1);
  EXPECT_THROW(se::digit_and_sign(q(0, 1)), se::Error);
}

TEST(DigitAndSign, MatchesCellSearch) {
  for (long d = 2; d <= 120; ++d) {
    for (long p = 1; p < d; ++p) {
      const se::Rational x = q(p, d);
      const oracle::Cell c = oracle::cell_of(x);
      const se::DigitSign ds = se::digit_and_sign(x);
      ASSERT_EQ(ds.digit, c.digit) << x.to_string();
      ASSERT_EQ(ds.sign, c.sign) << x.to_string();
    }
  }
}

TEST(ExpandRational, Examples) {
  const auto half = se::expand_rational(q(1, 2));
  EXPECT_EQ(half.digits, big({2}));
  EXPECT_EQ(half.cum_signs, std::vector<int>{1});
  EXPECT_TRUE(half.terminated);

  const auto two_fifths = se::expand_rational(q(2, 5));
  EXPECT_EQ(two_fifths.digits, big({2, 5}));
  EXPECT_EQ(two_fifths.cum_signs, (std::vector<int>{1, -1}));
  EXPECT_EQ(two_fifths.step_signs, std::vector<int>{-1});
  EXPECT_TRUE(two_fifths.terminated);

  const auto third = se::expand_rational(q(1, 3));
  EXPECT_EQ(third.digits, big({3}));
  EXPECT_EQ(third.cum_signs, std::vector<int>{1});
  EXPECT_TRUE(third.step_signs.empty());
  EXPECT_TRUE(third.terminated);

  const auto three_eighths = se::expand_rational(q(3, 8));
  EXPECT_EQ(three_eighths.digits, big({2, 4}));
  EXPECT_EQ(three_eighths.cum_signs, (std::vector<int>{1, -1}));
}

TEST(ExpandRational, MaxDigitsStops) {
  ASSERT_GT(oracle::expand(q(355, 497)).digits.size(), 2u);
  const auto e = se::expand_rational(q(355, 497), 2);
  EXPECT_EQ(e.size(), 2u);
  EXPECT_FALSE(e.terminated);
  EXPECT_EQ(e.stop_reason, se::StopReason::kMaxDigits);
}

TEST(ExpandRational, MatchesIteratedCellSearch) {
  for (long d = 2; d <= 80; ++d) {
    for (long p = 1; p < d; ++p) {
      const se::Rational x = q(p, d);
      const oracle::Expansion ref = oracle::expand(x);
      const auto e = se::expand_rational(x);
      ASSERT_EQ(e.digits, ref.digits) << x.to_string();
      ASSERT_EQ(e.cum_signs, ref.cum_signs) << x.to_string();
    }
  }
}

TEST(ExpandRationalProperty, RoundTripAndStructure) {
  for (long d = 2; d <= 200; ++d) {
    for (long p = 1; p < d; ++p) {
      const se::Rational x = q(p, d);
      const auto e = se::expand_rational(x);
      ASSERT_TRUE(e.terminated);
      ASSERT_EQ(oracle::partial_sum(e.digits, e.cum_signs), x);
      ASSERT_EQ(se::reconstruct(e, e.size()), x);
      ASSERT_TRUE(static_cast<bool>(se::check_admissible(se::to_symbols(e))));
      ASSERT_GE(e.digits[0], 2);
      ASSERT_EQ(e.cum_signs[0], 1);
      for (std::size_t k = 0; k + 1 < e.size(); ++k) {
        ASSERT_EQ(e.cum_signs[k + 1], e.cum_signs[k] * e.step_signs[k]);
        ASSERT_GE(e.digits[k + 1], e.digits[k]);
        if (e.cum_signs[k + 1] != e.cum_signs[k]) ASSERT_GE(e.digits[k + 1], e.digits[k] + 2);
        ASSERT_EQ(mpz_even_p(e.digits[k].get_mpz_t()), 1);
      }
    }
  }
}

TEST(ExpandRationalProperty, OrbitSandwich) {
  for (long d = 3; d <= 60; ++d) {
    for (long p = 1; p < d; ++p) {
      const auto w = se::expand_rational_with_orbit(q(p, d));
      const auto& e = w.expansion;
      ASSERT_EQ(w.orbit.size(), e.size() + 1);
      EXPECT_EQ(w.orbit.back(), q(0, 1));
      for (std::size_t k = 0; k < e.size(); ++k) {
        if (mpz_odd_p(e.digits[k].get_mpz_t()) != 0) continue;
        const se::Rational t = w.orbit[k];
        EXPECT_LT(se::Rational(1) / se::Rational(se::BigInt(e.digits[k] + 1)), t);
        EXPECT_LT(t, se::Rational(1) / se::Rational(se::BigInt(e.digits[k] - 1)));
      }
    }
  }
}

TEST(ExpandCertified, ExactBallMatchesRational) {
  EXPECT_EQ(se::expand_certified(se::Ball(q(2, 5))), se::expand_rational(q(2, 5)));
  const auto e = se::expand_certified(se::ball_from_decimal("2/5"));
  EXPECT_EQ(e.digits, big({2, 5}));
  EXPECT_TRUE(e.terminated);
}

TEST(ExpandCertified, WideBallCertifiesNothing) {
  const auto e = se::expand_certified(se::Ball(q(1, 2), q(1, 2)));
  EXPECT_EQ(e.certified_prefix_len, 0u);
  EXPECT_TRUE(e.digits.empty());
  EXPECT_EQ(e.stop_reason, se::StopReason::kPrecisionExhausted);
}

// Longest common (digit, sign) prefix of the two endpoint expansions.
std::size_t common_prefix(const oracle::Expansion& a, const oracle::Expansion& b) {
  std::size_t n = 0;
  while (n < a.digits.size() && n < b.digits.size() && a.digits[n] == b.digits[n] &&
         a.cum_signs[n] == b.cum_signs[n]) {
    ++n;
  }
  return n;
}

TEST(ExpandCertified, SqrtHalfPrefix) {
  const se::Ball b = se::ball_from_decimal("0.70710678");
  const auto e = se::expand_certified(b);
  const oracle::Expansion lo = oracle::expand(b.lower());
  const oracle::Expansion hi = oracle::expand(b.upper());
  // The endpoints agree on (2, 2, 6, 34) and split at the fifth digit.
  EXPECT_EQ(common_prefix(lo, hi), 4u);
  EXPECT_EQ(e.certified_prefix_len, 4u);
  EXPECT_EQ(e.stop_reason, se::StopReason::kPrecisionExhausted);
  ASSERT_LE(e.size(), common_prefix(lo, hi));
  for (std::size_t k = 0; k < e.size(); ++k) {
    EXPECT_EQ(e.digits[k], lo.digits[k]);
    EXPECT_EQ(e.cum_signs[k], lo.cum_signs[k]);
  }
  // Partial sums bracket the ball at the last certified order.
  const se::Rational center = b.center();
  const se::Rational s = se::reconstruct(e, e.size());
  EXPECT_LT((s - center).abs(), se::Rational(1) / se::Rational(se::BigInt(e.digits[0])));
}

TEST(ExpandCertifiedProperty, PrefixOfEveryEndpointExpansion) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 300; ++i) {
    std::string text = "0.";
    const int digits = 6 + static_cast<int>(gen() % 20);
    for (int k = 0; k < digits; ++k) text += static_cast<char>('0' + gen() % 10);
    if (text.find_first_not_of("0.") == std::string::npos) continue;
    const se::Ball b = se::ball_from_decimal(text);
    const auto e = se::expand_certified(b);
    EXPECT_EQ(e.certified_prefix_len, e.size());
    for (const se::Rational& end : {b.lower(), b.upper(), b.center()}) {
      if (end.sign() <= 0) continue;
      const auto ref = se::expand_rational(end, e.size());
      ASSERT_GE(ref.size(), e.size()) << text;
      for (std::size_t k = 0; k < e.size(); ++k) {
        ASSERT_EQ(ref.digits[k], e.digits[k]) << text;
        ASSERT_EQ(ref.cum_signs[k], e.cum_signs[k]) << text;
      }
    }
  }
}

TEST(Reconstruct, Examples) {
  se::SignedEngelExpansion e;
  e.digits = big({2, 5});
  e.cum_signs = {1, -1};
  e.step_signs = {-1};
  EXPECT_EQ(se::reconstruct(e, 1), q(1, 2));
  EXPECT_EQ(se::reconstruct(e, 2), q(2, 5));
  EXPECT_THROW(se::reconstruct(e, 0), se::Error);
  EXPECT_THROW(se::reconstruct(e, 3), se::Error);

  const auto digits = big({2, 4});
  const std::vector<int> signs{1, -1};
  EXPECT_EQ(se::reconstruct(digits, signs), q(3, 8));
}

TEST(DeriveSequences, Examples) {
  const auto w = se::expand_rational_with_orbit(q(2, 5));
  const auto s = se::derive_sequences(w.expansion, w.orbit);
  EXPECT_EQ(s.gaps, big({2, 3}));
  EXPECT_EQ(s.ratios, (std::vector<se::Rational>{q(2, 1), q(5, 2)}));
  EXPECT_EQ(s.running_max, (std::vector<se::Rational>{q(2, 1), q(5, 2)}));
  EXPECT_EQ(s.Y_values, big({1, 1}));
  EXPECT_EQ(s.y_values, (std::vector<se::Rational>{q(2, 5), q(3, 5)}));

  se::SignedEngelExpansion four;
  four.digits = big({4});
  four.cum_signs = {1};
  const auto f = se::derive_sequences(four);
  EXPECT_EQ(f.Y_values, big({3}));
  EXPECT_TRUE(f.y_values.empty());

  EXPECT_THROW(se::derive_sequences(se::SignedEngelExpansion{}), se::Error);
}

TEST(DeriveSequencesProperty, BracketsAndMonotone) {
  for (long d = 3; d <= 150; ++d) {
    for (long p = 1; p < d; ++p) {
      const auto w = se::expand_rational_with_orbit(q(p, d));
      const auto s = se::derive_sequences(w.expansion, w.orbit);
      const auto& e = w.expansion;
      for (std::size_t k = 0; k < e.size(); ++k) {
        const se::BigInt& y = s.Y_values[k];
        ASSERT_EQ(mpz_odd_p(y.get_mpz_t()), 1);
        se::Rational bracketed(e.digits[k]);
        if (k > 0) {
          const bool same = e.cum_signs[k] == e.cum_signs[k - 1];
          bracketed = se::Rational(e.digits[k]) /
                      se::Rational(same ? se::BigInt(e.digits[k - 1] - 1) : se::BigInt(e.digits[k - 1] + 1));
          ASSERT_LE(s.running_max[k - 1], s.running_max[k]);
          ASSERT_LE(s.U_values[k - 1], s.U_values[k]);
        }
        ASSERT_LE(se::Rational(y), bracketed);
        ASSERT_LT(bracketed, se::Rational(se::BigInt(y + 2)));
        // (1/2) U_n <= M_n < 6 U_n
        ASSERT_LE(se::Rational(s.U_values[k]) / se::Rational(2), s.running_max[k]);
        ASSERT_LT(s.running_max[k], se::Rational(6) * se::Rational(s.U_values[k]));
      }
    }
  }
}

TEST(ReferenceSystems, EngelAndPierce) {
  EXPECT_EQ(se::engel_digits(q(1, 2)), big({2}));
  EXPECT_EQ(se::engel_digits(q(3, 8)), big({3, 8}));
  EXPECT_EQ(se::pierce_digits(q(1, 2)), big({2}));
  EXPECT_EQ(se::pierce_digits(q(1, 3)), big({3}));
  for (long d = 2; d <= 200; ++d) {
    for (long p = 1; p < d; ++p) {
      const se::Rational x = q(p, d);
      const auto engel = se::engel_digits(x);
      const auto pierce = se::pierce_digits(x);
      ASSERT_EQ(se::engel_value(engel), x);
      ASSERT_EQ(se::pierce_value(pierce), x);
      // Independent partial sums: Engel all plus, Pierce alternating.
      se::Rational engel_sum, pierce_sum;
      se::BigInt prod = 1;
      for (const auto& digit : engel) {
        prod *= digit;
        engel_sum += se::Rational(1) / se::Rational(prod);
      }
      prod = 1;
      int sign = 1;
      for (std::size_t k = 0; k < pierce.size(); ++k) {
        prod *= pierce[k];
        pierce_sum += se::Rational(sign) / se::Rational(prod);
        sign = -sign;
        if (k > 0) ASSERT_GT(pierce[k], pierce[k - 1]);
      }
      ASSERT_EQ(engel_sum, x);
      ASSERT_EQ(pierce_sum, x);
    }
  }
}

TEST(ExpansionJson, RoundTrip) {
  const auto e = se::expand_rational(q(2, 5));
  const auto j = se::to_json(e);
  EXPECT_EQ(j.dump(),
            R"({"digits":[2,5],"step_signs":[-1],"cum_signs":[1,-1],"terminated":true,)"
            R"("certified_prefix_len":2,"stop_reason":"terminated"})");
  EXPECT_EQ(se::expansion_from_json(nlohmann::json::parse(j.dump())), e);

  se::SignedEngelExpansion huge;
  huge.digits = {se::BigInt(2), se::pow2(80)};
  huge.cum_signs = {1, 1};
  huge.step_signs = {1};
  const auto hj = se::to_json(huge);
  EXPECT_EQ(se::expansion_from_json(nlohmann::json::parse(hj.dump())), huge);
}

}  // namespace
