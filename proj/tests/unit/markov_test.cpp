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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "signed_engel/ball.hpp"
#include "signed_engel/counter_rng.hpp"
#include "signed_engel/error.hpp"
#include "signed_engel/expansion.hpp"
#include "signed_engel/markov.hpp"
#include "unit/oracles.hpp"

namespace se = signed_engel;

namespace {

se::Rational q(long p, long d) { return se::make_rational(p, d); }
se::BigInt b(unsigned long v) { return se::BigInt(v); }

TEST(ChainLaw, InitialPmf) {
  EXPECT_EQ(se::initial_pmf(b(1)), q(2, 3));
  EXPECT_EQ(se::initial_pmf(b(2)), q(2, 15));
  se::Rational sum;
  for (unsigned long k = 1; k <= 300; ++k) {
    sum += se::initial_pmf(b(k));
    ASSERT_EQ(sum, se::Rational(1) - q(1, static_cast<long>(2 * k + 1)));
    ASSERT_EQ(se::initial_cdf(b(k)), sum);
  }
  EXPECT_THROW(se::initial_pmf(b(0)), se::Error);
}

TEST(ChainLaw, TransitionPmf) {
  EXPECT_EQ(se::transition_pmf(b(1), b(1)), q(1, 2));
  EXPECT_EQ(se::transition_pmf(b(1), b(2)), q(1, 5));
  EXPECT_EQ(se::transition_pmf(b(3), b(2)), q(0, 1));
  EXPECT_EQ(se::transition_pmf(b(2), b(2)), q(1, 4));
}

TEST(ChainLaw, RowSumsMatchBinarySplitting) {
  for (unsigned long k = 1; k <= 60; ++k) {
    for (unsigned long big_l : {k, k + 1, k + 7, k + 300}) {
      se::BigInt num, den;
      oracle::row_sum(k, big_l, num, den);
      const se::Rational expected = se::Rational(num) / se::Rational(den);
      ASSERT_EQ(se::transition_cdf(b(k), b(big_l)), expected) << k << " " << big_l;
      // Closed form 1 - (2k-1)(2k+1) / (2k (2L+1)).
      const long kk = static_cast<long>(k), ll = static_cast<long>(big_l);
      ASSERT_EQ(expected, se::Rational(1) - q((2 * kk - 1) * (2 * kk + 1), 2 * kk * (2 * ll + 1)));
    }
  }
}

TEST(ChainLaw, RowSumsByDirectSummation) {
  for (unsigned long k = 1; k <= 8; ++k) {
    se::Rational sum;
    for (unsigned long l = k; l <= k + 200; ++l) sum += se::transition_pmf(b(k), b(l));
    ASSERT_EQ(sum, se::transition_cdf(b(k), b(k + 200)));
  }
}

TEST(EvenRound, Examples) {
  EXPECT_EQ(se::even_round(1.0L), 2u);
  EXPECT_EQ(se::even_round(2.999L), 2u);
  EXPECT_EQ(se::even_round(3.0L), 4u);
  EXPECT_EQ(se::even_round(q(3, 1)), 4);
  EXPECT_EQ(se::even_round(q(2999, 1000)), 2);
  EXPECT_EQ(se::even_round(q(1, 1)), 2);
  EXPECT_THROW(se::even_round(0.5L), se::Error);
  EXPECT_THROW(se::even_round(q(1, 2)), se::Error);
}

TEST(EvenRound, DefiningInequality) {
  for (long num = 100; num <= 5000; num += 7) {
    const se::Rational t = q(num, 100);
    const se::BigInt e = se::even_round(t);
    ASSERT_EQ(mpz_even_p(e.get_mpz_t()), 1);
    ASSERT_LE(se::Rational(se::BigInt(e - 1)), t);
    ASSERT_LT(t, se::Rational(se::BigInt(e + 1)));
  }
}

TEST(SurrogateStep, Examples) {
  EXPECT_EQ(se::surrogate_step(2, 0.0), 2u);
  EXPECT_EQ(se::surrogate_step(4, 0.0), 4u);
  EXPECT_EQ(se::surrogate_step(b(2), q(1, 1)), 2);
  // x = ln 2, supplied as the exact factor e^x = 2: even_round(3) = 4.
  EXPECT_EQ(se::surrogate_step(b(2), q(2, 1)), 4);
  EXPECT_EQ(se::surrogate_step(b(4), q(1, 1)), 4);
  EXPECT_THROW(se::surrogate_step(3, 0.0), se::Error);
  EXPECT_THROW(se::surrogate_step(2, -1.0), se::Error);
}

TEST(SurrogateStep, Sandwich) {
  for (std::uint64_t d = 2; d <= 400; d += 2) {
    for (double x = 0.0; x < 6.0; x += 0.173) {
      const double next = static_cast<double>(se::surrogate_step(d, x));
      const double dd = static_cast<double>(d);
      ASSERT_LE(dd * (1.0 - 1.0 / (dd * dd)) * std::exp(x) - 1.0, next + 1e-9);
      ASSERT_LT(next, dd * std::exp(x) + 1.0);
    }
  }
}

TEST(ChainWalker, ExactChainMatchesBisectionOracle) {
  const std::uint64_t seed = 2024;
  const se::CounterRng rng(seed, "exact");
  int large_steps = 0;
  for (std::uint64_t id = 0; id < 40; ++id) {
    se::ChainWalker walker(se::ChainSource::kExactChain, seed, id);
    se::BigInt state = 0;
    for (std::size_t step = 0; step < 80; ++step) {
      const se::ChainState& s = walker.next();
      if (s.saturated) break;
      const std::uint64_t m = se::CounterRng::uniform_bits(rng.block(id, step));
      se::BigInt expected;
      if (step == 0) {
        // P(d_1 >= 2l) = 1 / (2l - 1) >= v  <=>  2l - 1 <= 2^53 / m.
        const se::BigInt l = (se::pow2(53) / se::BigInt(static_cast<unsigned long>(m)) + 1) / 2;
        expected = 2 * l;
      } else {
        expected = oracle::exact_chain_next(state, m);
      }
      ASSERT_EQ(se::BigInt(static_cast<unsigned long>(s.state)), expected)
          << "id " << id << " step " << step;
      if (state > se::pow2(37)) ++large_steps;
      state = expected;
    }
  }
  EXPECT_GT(large_steps, 100);
}

TEST(ChainWalker, SaturatesIntoLogMode) {
  se::ChainWalker walker(se::ChainSource::kExactChain, 5, 0);
  double previous = 0.0;
  bool saw_saturation = false;
  int flips = 0, moves = 0;
  for (int step = 0; step < 2000; ++step) {
    const se::ChainState& s = walker.next();
    ASSERT_GE(s.log_state, previous);
    if (s.saturated) {
      saw_saturation = true;
      EXPECT_EQ(s.state, 0u);
      EXPECT_GE(s.log_state, std::log(static_cast<double>(se::kStateCap)) - 1.0);
      if (s.log_state > previous) {
        ++moves;
        flips += s.sign_flip ? 1 : 0;
      }
    } else {
      EXPECT_LT(s.state, se::kStateCap);
    }
    previous = s.log_state;
  }
  EXPECT_TRUE(saw_saturation);
  EXPECT_NEAR(static_cast<double>(flips) / moves, 0.5, 0.06);
  EXPECT_NEAR(previous / 2000.0, 1.0, 0.12);
}

TEST(ChainWalker, RealSourceRejected) {
  EXPECT_THROW(se::ChainWalker(se::ChainSource::kExpansionOfReal, 1, 0), se::Error);
}

void expect_valid(const se::TrajectoryBatch& batch) {
  for (const auto& t : batch.trajectories) {
    ASSERT_EQ(t.size(), batch.n);
    for (std::size_t k = 0; k < t.size(); ++k) {
      const se::ChainState& s = t.states[k];
      if (s.saturated) continue;
      ASSERT_EQ(s.state % 2, 0u);
      ASSERT_GE(s.state, 2u);
      if (k > 0 && !t.states[k - 1].saturated) {
        ASSERT_GE(s.state, t.states[k - 1].state);
        if (s.sign_flip) ASSERT_GE(s.state, t.states[k - 1].state + 2);
      }
    }
    EXPECT_FALSE(t.states[0].sign_flip);
  }
}

TEST(Simulate, InvariantsForEverySource) {
  for (const auto source : {se::ChainSource::kExactChain, se::ChainSource::kSurrogateChain,
                            se::ChainSource::kExpansionOfReal}) {
    expect_valid(se::simulate(source, 5, 10, 77));
  }
  EXPECT_THROW(se::simulate(se::ChainSource::kExactChain, 0, 10, 1), se::Error);
}

TEST(Simulate, ExpansionSourceMatchesDigits) {
  const auto t = se::simulate_one(se::ChainSource::kExpansionOfReal, 6, 3, 9);
  ASSERT_EQ(t.size(), 6u);
  // The first attempt draws ceil((n^2/2 + 4n + 30) / ln 10) decimal digits.
  const se::CounterRng rng(3, "real");
  const unsigned digits = static_cast<unsigned>(std::ceil(72.0 / std::log(10.0)));
  const auto e = se::expand_certified(se::ball_from_decimal(se::random_decimal(rng, 9, digits, 0)), 6);
  ASSERT_GE(e.certified_prefix_len, 6u);
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_EQ(e.digits[k], se::BigInt(static_cast<unsigned long>(t.states[k].state)));
  }
}

TEST(Simulate, DeterministicAcrossWorkers) {
  for (const auto source : {se::ChainSource::kExactChain, se::ChainSource::kSurrogateChain}) {
    const auto a = se::simulate(source, 120, 16, 42, 1);
    const auto c = se::simulate(source, 120, 16, 42, 5);
    for (std::size_t i = 0; i < a.count(); ++i) {
      ASSERT_EQ(a.trajectories[i].states, c.trajectories[i].states);
    }
    // A trajectory does not depend on how many others were requested.
    const auto single = se::simulate_one(source, 120, 42, 7);
    EXPECT_EQ(single.states, a.trajectories[7].states);
  }
}

TEST(Simulate, ExactChainInitialFrequency) {
  const auto batch = se::simulate(se::ChainSource::kExactChain, 1, 100000, 42);
  std::size_t twos = 0;
  for (const auto& t : batch.trajectories) twos += t.states[0].state == 2 ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(twos) / 100000.0, 2.0 / 3.0, 0.01);
}

TEST(Simulate, SurrogateStayProbability) {
  const auto batch = se::simulate(se::ChainSource::kSurrogateChain, 2, 100000, 42);
  std::size_t from = 0, stay = 0;
  for (const auto& t : batch.trajectories) {
    if (t.states[0].state != 2) continue;
    ++from;
    stay += t.states[1].state == 2 ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(stay) / static_cast<double>(from), 0.5, 0.01);
}

TEST(RandomDecimal, FormatAndDeterminism) {
  const se::CounterRng rng(8, "decimals");
  const std::string a = se::random_decimal(rng, 3, 40);
  EXPECT_EQ(a.size(), 42u);
  EXPECT_EQ(a.substr(0, 2), "0.");
  EXPECT_EQ(a.find_first_not_of("0123456789", 2), std::string::npos);
  EXPECT_EQ(a, se::random_decimal(rng, 3, 40));
  EXPECT_NE(a, se::random_decimal(rng, 4, 40));
  EXPECT_NE(a, se::random_decimal(rng, 3, 40, 1));
  EXPECT_EQ(se::random_decimal(rng, 3, 5), a.substr(0, 7));
}

TEST(TrajectoryIo, CsvAndMetadata) {
  se::TrajectoryBatch batch;
  batch.source = se::ChainSource::kSurrogateChain;
  batch.seed = 11;
  batch.n = 2;
  se::Trajectory t;
  t.id = 0;
  se::ChainState a;
  a.state = 2;
  a.log_state = std::log(2.0);
  se::ChainState c;
  c.saturated = true;
  c.log_state = 44.5;
  t.states = {a, c};
  batch.trajectories.push_back(t);
  std::ostringstream out;
  se::write_csv(batch, out);
  EXPECT_EQ(out.str(), "trajectory_id,n,state_or_logstate,saturated\n0,1,2,0\n0,2,44.5,1\n");
  EXPECT_EQ(se::batch_metadata(batch).dump(), R"({"seed":11,"source":"surrogate","n":2,"count":1})");
}

TEST(ChainSource, Parse) {
  EXPECT_EQ(se::parse_chain_source("exact"), se::ChainSource::kExactChain);
  EXPECT_EQ(se::parse_chain_source("surrogate"), se::ChainSource::kSurrogateChain);
  EXPECT_EQ(se::parse_chain_source("real"), se::ChainSource::kExpansionOfReal);
  EXPECT_THROW(se::parse_chain_source("other"), se::Error);
}

}  // namespace
