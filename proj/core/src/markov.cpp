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

#include "signed_engel/markov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "signed_engel/ball.hpp"
#include "signed_engel/error.hpp"
#include "signed_engel/expansion.hpp"
#include "signed_engel/parallel.hpp"

namespace signed_engel {
namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kTwo53 = std::uint64_t{1} << 53;
// Largest state for which (D^2 - 1) * 2^53 fits in 128 bits.
constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 37;
constexpr long double kHalfCap = static_cast<long double>(kStateCap / 2);

void require_positive(const BigInt& k, const char* what) {
  if (k < 1) throw Error(ErrorCode::kOutOfDomain, std::string(what) + " must be >= 1");
}

// floor(((D^2 - 1) * 2^53 + D * m) / (2 * D * m)): the index l of the next
// state 2l of the exact chain, from its tail P(D' >= 2l) = (D^2 - 1) / (D (2l - 1)).
BigInt exact_next_index(std::uint64_t d, std::uint64_t m) {
  const BigInt big_d(static_cast<unsigned long>(d));
  const BigInt big_m(static_cast<unsigned long>(m));
  const BigInt num = (big_d * big_d - 1) * pow2(53) + big_d * big_m;
  const BigInt den = 2 * big_d * big_m;
  return BigInt(num / den);
}

}  // namespace

Rational initial_pmf(const BigInt& k) {
  require_positive(k, "k");
  return make_rational(BigInt(2), BigInt((2 * k - 1) * (2 * k + 1)));
}

Rational initial_cdf(const BigInt& k) {
  require_positive(k, "k");
  return Rational(1) - make_rational(BigInt(1), BigInt(2 * k + 1));
}

Rational transition_pmf(const BigInt& k, const BigInt& l) {
  require_positive(k, "k");
  require_positive(l, "l");
  if (l < k) return Rational(0);
  if (l == k) return make_rational(BigInt(1), BigInt(2 * k));
  return make_rational(BigInt((2 * k - 1) * (2 * k + 1)), BigInt(k * (2 * l - 1) * (2 * l + 1)));
}

Rational transition_cdf(const BigInt& k, const BigInt& l) {
  require_positive(k, "k");
  require_positive(l, "l");
  if (l < k) return Rational(0);
  return Rational(1) - make_rational(BigInt((2 * k - 1) * (2 * k + 1)), BigInt(2 * k * (2 * l + 1)));
}

BigInt even_round(const Rational& t) {
  if (t < Rational(1)) throw Error(ErrorCode::kOutOfDomain, "even_round needs t >= 1");
  return 2 * ((t + Rational(1)) / Rational(2)).floor();
}

std::uint64_t even_round(long double t) {
  if (!(t >= 1.0L)) throw Error(ErrorCode::kOutOfDomain, "even_round needs t >= 1");
  const long double half = std::floor((t + 1.0L) / 2.0L);
  if (half >= 0x1p63L) throw Error(ErrorCode::kOutOfDomain, "even_round result exceeds 64 bits");
  return 2 * static_cast<std::uint64_t>(half);
}

std::uint64_t surrogate_step(std::uint64_t d_prev, double x_exp) {
  if (d_prev < 2 || d_prev % 2 != 0) {
    throw Error(ErrorCode::kOutOfDomain, "surrogate_step needs an even state >= 2");
  }
  if (!(x_exp >= 0.0)) throw Error(ErrorCode::kOutOfDomain, "surrogate_step needs x_exp >= 0");
  const long double d = static_cast<long double>(d_prev);
  return even_round((d - 1.0L / d) * std::exp(static_cast<long double>(x_exp)));
}

BigInt surrogate_step(const BigInt& d_prev, const Rational& exp_factor) {
  if (d_prev < 2 || mpz_odd_p(d_prev.get_mpz_t()) != 0) {
    throw Error(ErrorCode::kOutOfDomain, "surrogate_step needs an even state >= 2");
  }
  if (exp_factor < Rational(1)) {
    throw Error(ErrorCode::kOutOfDomain, "surrogate_step needs exp(x) >= 1");
  }
  return even_round(make_rational(BigInt((d_prev - 1) * (d_prev + 1)), d_prev) * exp_factor);
}

std::string_view to_string(ChainSource source) {
  switch (source) {
    case ChainSource::kExactChain:
      return "exact";
    case ChainSource::kSurrogateChain:
      return "surrogate";
    case ChainSource::kExpansionOfReal:
      return "real";
  }
  return "exact";
}

ChainSource parse_chain_source(std::string_view text) {
  if (text == "exact") return ChainSource::kExactChain;
  if (text == "surrogate") return ChainSource::kSurrogateChain;
  if (text == "real") return ChainSource::kExpansionOfReal;
  throw Error(ErrorCode::kParseError, "unknown chain source '" + std::string(text) + "'");
}

ChainWalker::ChainWalker(ChainSource source, std::uint64_t master_seed, std::uint64_t trajectory_id)
    : source_(source), rng_(master_seed, to_string(source)), id_(trajectory_id) {
  if (source == ChainSource::kExpansionOfReal) {
    throw Error(ErrorCode::kOutOfDomain, "ChainWalker drives the exact or surrogate chain only");
  }
}

const ChainState& ChainWalker::next() {
  const PhiloxCounter block = rng_.block(id_, steps_);
  if (state_.saturated) {
    step_log(block);
  } else {
    step_integer(block);
  }
  ++steps_;
  return state_;
}

void ChainWalker::saturate(long double log_state) {
  state_.state = 0;
  state_.saturated = true;
  state_.log_state = static_cast<double>(log_state);
}

void ChainWalker::step_integer(const PhiloxCounter& block) {
  const std::uint64_t m = CounterRng::uniform_bits(block);
  const std::uint64_t prev = state_.state;
  std::uint64_t next = 0;

  if (source_ == ChainSource::kExactChain) {
    if (steps_ == 0) {
      // P(d_1 >= 2l) = 1 / (2l - 1).
      next = 2 * ((kTwo53 + m) / (2 * m));
    } else if (prev <= kExactLimit) {
      const u128 d = prev;
      const u128 num = (d * d - 1) * kTwo53 + d * m;
      const u128 l = num / (2 * d * m);
      if (l >= kStateCap / 2) {
        saturate(std::log(2.0L * static_cast<long double>(l)));
      } else {
        next = 2 * static_cast<std::uint64_t>(l);
      }
    } else {
      const long double d = static_cast<long double>(prev);
      const long double t = (d - 1.0L / d) * (0x1p53L / static_cast<long double>(m));
      const long double half = (t + 1.0L) / 2.0L;
      if (half >= 2.0L * kHalfCap) {
        saturate(std::log(t));
      } else {
        long double l = std::floor(half);
        const long double slack = half * 0x1p-52L + 0x1p-40L;
        if (half - l < slack || l + 1.0L - half < slack) {
          const BigInt exact = exact_next_index(prev, m);
          l = static_cast<long double>(exact.get_d());
          if (exact >= BigInt(static_cast<unsigned long>(kStateCap / 2))) {
            saturate(std::log(2.0L * l));
          } else {
            next = 2 * exact.get_ui();
          }
        } else if (l >= kHalfCap) {
          saturate(std::log(2.0L * l));
        } else {
          next = 2 * static_cast<std::uint64_t>(l);
        }
      }
    }
  } else {
    const long double x = -std::log(std::ldexp(static_cast<long double>(m), -53));
    const long double factor = steps_ == 0 ? 1.0L : [&] {
      const long double d = static_cast<long double>(prev);
      return d - 1.0L / d;
    }();
    const long double t = factor * std::exp(x);
    const long double half = std::floor((t + 1.0L) / 2.0L);
    if (half >= kHalfCap) {
      saturate(std::log(t));
    } else {
      next = 2 * static_cast<std::uint64_t>(half);
    }
  }

  if (!state_.saturated) {
    state_.state = next;
    state_.log_state = std::log(static_cast<double>(next));
    state_.sign_flip = steps_ > 0 && next != prev && CounterRng::coin(block);
  } else {
    state_.sign_flip = CounterRng::coin(block);
  }
}

void ChainWalker::step_log(const PhiloxCounter& block) {
  const std::uint64_t m = CounterRng::uniform_bits(block);
  if (m == kTwo53) {
    state_.sign_flip = false;
    return;
  }
  // log D' = log D + X + log(1 - 1/D^2); the rounding term is below 1/D.
  const double big_l = state_.log_state;
  double next = big_l - std::log(CounterRng::uniform(block));
  if (big_l < 64.0) next += std::log1p(-std::exp(-2.0 * big_l));
  state_.log_state = next;
  state_.sign_flip = CounterRng::coin(block);
}

std::size_t TrajectoryBatch::saturated_count() const {
  std::size_t total = 0;
  for (const auto& t : trajectories) total += t.saturated() ? 1 : 0;
  return total;
}

std::string random_decimal(const CounterRng& rng, std::uint64_t index, unsigned digits,
                           std::uint32_t salt) {
  constexpr std::uint64_t kChunk = 1000000000000000000ull;  // 10^18
  constexpr std::uint64_t kLimit = (~std::uint64_t{0} / kChunk) * kChunk;
  std::string out = "0.";
  out.reserve(digits + 2);
  std::uint64_t draw = 0;
  bool nonzero = false;
  while (out.size() < digits + 2u || !nonzero) {
    if (out.size() >= digits + 2u) {
      out.resize(2);  // all zeros: redraw
    }
    const PhiloxCounter b = rng.block(index, (static_cast<std::uint64_t>(salt) << 32) | draw++);
    for (int half = 0; half < 2 && out.size() < digits + 2u; ++half) {
      const std::uint64_t word =
          (static_cast<std::uint64_t>(b[2 * half + 1]) << 32) | b[2 * half];
      if (word >= kLimit) continue;
      char buf[24];
      std::snprintf(buf, sizeof buf, "%018llu", static_cast<unsigned long long>(word % kChunk));
      const std::size_t take = std::min<std::size_t>(18, digits + 2u - out.size());
      out.append(buf, take);
      for (std::size_t i = 0; i < take; ++i) nonzero = nonzero || buf[i] != '0';
    }
  }
  return out;
}

namespace {

Trajectory expansion_trajectory(std::size_t n, std::uint64_t master_seed, std::uint64_t id) {
  const CounterRng rng(master_seed, to_string(ChainSource::kExpansionOfReal));
  const double nd = static_cast<double>(n);
  unsigned digits = static_cast<unsigned>(std::ceil((nd * nd / 2.0 + 4.0 * nd + 30.0) / std::log(10.0)));
  for (std::uint32_t attempt = 0; attempt < 8; ++attempt, digits *= 2) {
    const Ball ball = ball_from_decimal(random_decimal(rng, id, digits, attempt));
    const SignedEngelExpansion e = expand_certified(ball, n);
    if (e.certified_prefix_len < n) continue;
    Trajectory t;
    t.source = ChainSource::kExpansionOfReal;
    t.seed = master_seed;
    t.id = id;
    t.states.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      ChainState s;
      const BigInt& d = e.digits[k];
      long exponent = 0;
      const double mantissa = mpz_get_d_2exp(&exponent, d.get_mpz_t());
      s.log_state = std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
      if (d < BigInt(static_cast<unsigned long>(kStateCap))) {
        s.state = d.get_ui();
      } else {
        s.saturated = true;
      }
      s.sign_flip = k > 0 && e.cum_signs[k] != e.cum_signs[k - 1];
      t.states.push_back(s);
    }
    return t;
  }
  throw Error(ErrorCode::kPrecisionExhausted,
              "could not certify " + std::to_string(n) + " digits for trajectory " + std::to_string(id));
}

}  // namespace

Trajectory simulate_one(ChainSource source, std::size_t n, std::uint64_t master_seed,
                        std::uint64_t id) {
  if (source == ChainSource::kExpansionOfReal) return expansion_trajectory(n, master_seed, id);
  Trajectory t;
  t.source = source;
  t.seed = master_seed;
  t.id = id;
  t.states.reserve(n);
  ChainWalker walker(source, master_seed, id);
  for (std::size_t k = 0; k < n; ++k) t.states.push_back(walker.next());
  return t;
}

TrajectoryBatch simulate(ChainSource source, std::size_t n, std::size_t count,
                         std::uint64_t master_seed, unsigned workers) {
  if (n < 1 || count < 1) throw Error(ErrorCode::kOutOfDomain, "simulate needs n >= 1 and count >= 1");
  TrajectoryBatch batch;
  batch.source = source;
  batch.seed = master_seed;
  batch.n = n;
  batch.trajectories.resize(count);
  parallel_for(
      count, [&](std::size_t i) { batch.trajectories[i] = simulate_one(source, n, master_seed, i); },
      workers);
  return batch;
}

void write_csv(const TrajectoryBatch& batch, std::ostream& out) {
  out << "trajectory_id,n,state_or_logstate,saturated\n";
  char buf[64];
  for (const auto& t : batch.trajectories) {
    for (std::size_t k = 0; k < t.states.size(); ++k) {
      const ChainState& s = t.states[k];
      out << t.id << ',' << (k + 1) << ',';
      if (s.saturated) {
        std::snprintf(buf, sizeof buf, "%.17g", s.log_state);
        out << buf << ",1\n";
      } else {
        out << s.state << ",0\n";
      }
    }
  }
}

nlohmann::ordered_json batch_metadata(const TrajectoryBatch& batch) {
  nlohmann::ordered_json j;
  j["seed"] = batch.seed;
  j["source"] = std::string(to_string(batch.source));
  j["n"] = batch.n;
  j["count"] = batch.count();
  return j;
}

}  // namespace signed_engel
