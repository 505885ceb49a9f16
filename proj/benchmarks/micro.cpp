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

#include <benchmark/benchmark.h>

#include "signed_engel/ball.hpp"
#include "signed_engel/counter_rng.hpp"
#include "signed_engel/expansion.hpp"
#include "signed_engel/intervals.hpp"
#include "signed_engel/markov.hpp"
#include "signed_engel/symbolic.hpp"

namespace se = signed_engel;

namespace {

void BM_ExpandRational(benchmark::State& state) {
  const se::Rational x = se::make_rational(355, 497);
  for (auto _ : state) benchmark::DoNotOptimize(se::expand_rational(x, 64));
}
BENCHMARK(BM_ExpandRational);

void BM_ExpandCertified(benchmark::State& state) {
  const se::Ball ball = se::ball_from_decimal("0.7071067811865475244008443621048490392848359376884740");
  for (auto _ : state) benchmark::DoNotOptimize(se::expand_certified(ball, 200));
}
BENCHMARK(BM_ExpandCertified);

void BM_BasicInterval(benchmark::State& state) {
  const se::SymbolSequence s = se::parse_symbols("2 +1 4 -1 8 -1 10 +1 14");
  for (auto _ : state) benchmark::DoNotOptimize(se::basic_interval(s));
}
BENCHMARK(BM_BasicInterval);

void BM_Philox(benchmark::State& state) {
  const se::CounterRng rng(42, "exact");
  std::uint64_t step = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rng.block(7, step++));
}
BENCHMARK(BM_Philox);

void BM_ChainSteps(benchmark::State& state) {
  const auto source = static_cast<se::ChainSource>(state.range(0));
  for (auto _ : state) {
    se::ChainWalker walker(source, 42, 0);
    for (int k = 0; k < 1000; ++k) benchmark::DoNotOptimize(walker.next());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_ChainSteps)
    ->Arg(static_cast<int>(se::ChainSource::kExactChain))
    ->Arg(static_cast<int>(se::ChainSource::kSurrogateChain));

void BM_ExpansionTrajectory(benchmark::State& state) {
  std::uint64_t id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(se::simulate_one(se::ChainSource::kExpansionOfReal, 5, 42, id++));
  }
}
BENCHMARK(BM_ExpansionTrajectory);

}  // namespace

BENCHMARK_MAIN();
