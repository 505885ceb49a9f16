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

#ifndef SIGNED_ENGEL_MARKOV_HPP_
#define SIGNED_ENGEL_MARKOV_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "signed_engel/counter_rng.hpp"
#include "signed_engel/rational.hpp"

namespace signed_engel {

// Law of the digit chain on even states 2k.
Rational initial_pmf(const BigInt& k);                      // P(d_1 = 2k)
Rational initial_cdf(const BigInt& k);                      // P(d_1 <= 2k)
Rational transition_pmf(const BigInt& k, const BigInt& l);  // P(2k -> 2l), 0 for l < k
// P(2k -> 2j for some j <= l) in closed form; 0 for l < k.
Rational transition_cdf(const BigInt& k, const BigInt& l);

// The even integer 2k with 2k - 1 <= t < 2k + 1. kOutOfDomain for t < 1.
BigInt even_round(const Rational& t);
std::uint64_t even_round(long double t);

// Even-rounding of ((D - 1)(D + 1) / D) * exp(x_exp) in long double.
std::uint64_t surrogate_step(std::uint64_t d_prev, double x_exp);
// Same step with the factor exp(x_exp) supplied exactly.
BigInt surrogate_step(const BigInt& d_prev, const Rational& exp_factor);

enum class ChainSource { kExactChain, kSurrogateChain, kExpansionOfReal };
std::string_view to_string(ChainSource source);
ChainSource parse_chain_source(std::string_view text);  // "exact", "surrogate", "real"

// States at or above the cap switch to log-state mode.
inline constexpr std::uint64_t kStateCap = std::uint64_t{1} << 62;

struct ChainState {
  std::uint64_t state = 0;  // D_n while not saturated, 0 afterwards
  double log_state = 0.0;   // log D_n, always set
  bool saturated = false;
  bool sign_flip = false;   // ε_n != ε_{n-1}; false at n = 1

  friend bool operator==(const ChainState&, const ChainState&) = default;
};

// Step-by-step generator for one chain trajectory. Step n draws from the
// Philox block (trajectory_id, n - 1) of the source's stream, so any
// trajectory can be regenerated independently of the others.
class ChainWalker {
 public:
  ChainWalker(ChainSource source, std::uint64_t master_seed, std::uint64_t trajectory_id);

  const ChainState& next();
  const ChainState& current() const { return state_; }
  std::size_t steps() const { return steps_; }

 private:
  void step_integer(const PhiloxCounter& block);
  void step_log(const PhiloxCounter& block);
  void saturate(long double log_state);

  ChainSource source_;
  CounterRng rng_;
  std::uint64_t id_;
  std::size_t steps_ = 0;
  ChainState state_;
};

struct Trajectory {
  ChainSource source = ChainSource::kExactChain;
  std::uint64_t seed = 0;
  std::uint64_t id = 0;
  std::vector<ChainState> states;

  std::size_t size() const { return states.size(); }
  bool saturated() const { return !states.empty() && states.back().saturated; }
};

struct TrajectoryBatch {
  ChainSource source = ChainSource::kExactChain;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<Trajectory> trajectories;

  std::size_t count() const { return trajectories.size(); }
  std::size_t saturated_count() const;
};

// Trajectory `id` of length n. For kExpansionOfReal the states are the
// certified digits of a random decimal drawn from the seed.
Trajectory simulate_one(ChainSource source, std::size_t n, std::uint64_t master_seed,
                        std::uint64_t id);
TrajectoryBatch simulate(ChainSource source, std::size_t n, std::size_t count,
                         std::uint64_t master_seed, unsigned workers = 0);

// "0." followed by `digits` uniform decimal digits (not all zero), drawn
// from the (index, salt) slice of the stream.
std::string random_decimal(const CounterRng& rng, std::uint64_t index, unsigned digits,
                           std::uint32_t salt = 0);

void write_csv(const TrajectoryBatch& batch, std::ostream& out);
nlohmann::ordered_json batch_metadata(const TrajectoryBatch& batch);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_MARKOV_HPP_
