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

#ifndef SIGNED_ENGEL_COUNTER_RNG_HPP_
#define SIGNED_ENGEL_COUNTER_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace signed_engel {

// Philox4x32-10. Stateless: the output is a pure function of (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);

// Sub-seed for a named stream or suite: splitmix64(seed ^ fnv1a64(name)).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name);

// Random draws addressed by (stream, index, step).
class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, std::string_view stream);

  PhiloxCounter block(std::uint64_t index, std::uint64_t step) const;

  // Uniform on (0, 1] with 53 random bits, as the integer m in [1, 2^53]
  // such that u = m * 2^-53.
  static std::uint64_t uniform_bits(const PhiloxCounter& block);
  static double uniform(const PhiloxCounter& block);
  // Independent fair bit from the third word.
  static bool coin(const PhiloxCounter& block) { return (block[2] & 1u) != 0; }

 private:
  PhiloxKey key_{};
};

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_COUNTER_RNG_HPP_
