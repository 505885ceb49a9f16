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

#ifndef SIGNED_ENGEL_STATS_HPP_
#define SIGNED_ENGEL_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "signed_engel/markov.hpp"

namespace signed_engel {

enum class Verdict { kPass, kFail, kInconclusive };
std::string_view to_string(Verdict verdict);

struct Check {
  std::string name;
  double value = 0.0;
  std::string gate;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  Verdict verdict = Verdict::kInconclusive;
  std::vector<Check> checks;

  void add_check(std::string name, double value, std::string gate, bool pass);
  // Pass iff there is at least one check and all pass.
  void conclude();
  void mark_inconclusive(const std::string& reason);
};

nlohmann::ordered_json to_json(const VerificationReport& report);

class PhiFunction {
 public:
  enum class Kind { kPower, kNLogPow, kConstant, kTable };

  static PhiFunction power(double exponent);   // n^a
  static PhiFunction nlogpow(double alpha);    // n (log n)^alpha, with φ(1) = 1
  static PhiFunction constant(double value);
  // φ(n) = values[n - 1]; the last value repeats beyond the table.
  static PhiFunction table(std::vector<double> values);
  // "power:1", "nlogpow:3", "const:2", "table:1,2,4".
  static PhiFunction parse(std::string_view text);

  double operator()(std::size_t n) const;
  Kind kind() const { return kind_; }
  // Whether Σ 1/φ(n) diverges; nullopt for tables.
  std::optional<bool> series_diverges() const;
  std::string to_string() const;

 private:
  PhiFunction(Kind kind, double parameter, std::vector<double> table = {});

  Kind kind_;
  double parameter_;
  std::vector<double> table_;
};

// LIL statistic normalization. kSqrtN is only useful as a negative control.
enum class LilNormalization { kIteratedLog, kSqrtN };

// Checks over materialized batches.
VerificationReport lln_check(const TrajectoryBatch& batch);
VerificationReport clt_check(const TrajectoryBatch& batch);
VerificationReport lil_smoke(const TrajectoryBatch& batch,
                             LilNormalization norm = LilNormalization::kIteratedLog);
VerificationReport borel_bernstein_check(const TrajectoryBatch& batch, const PhiFunction& phi);
VerificationReport ratio_limsup_check(const TrajectoryBatch& batch);

struct SuiteOptions {
  std::optional<ChainSource> source;  // suite default when unset
  std::optional<std::size_t> n;      // suite default when unset
  std::optional<std::size_t> count;  // suite default when unset
  std::vector<PhiFunction> phis;     // bb only; default power:1 and nlogpow:3
  unsigned workers = 0;
};

// Streaming versions: trajectories are generated and reduced one at a time,
// so memory does not grow with n * count.
VerificationReport lln_check(std::uint64_t seed, const SuiteOptions& options = {});
VerificationReport clt_check(std::uint64_t seed, const SuiteOptions& options = {});
VerificationReport lil_smoke(std::uint64_t seed, const SuiteOptions& options = {});
VerificationReport borel_bernstein_check(std::uint64_t seed, const SuiteOptions& options = {});
VerificationReport ratio_limsup_check(std::uint64_t seed, const SuiteOptions& options = {});
// Uniform random decimals expanded with certification.
VerificationReport yn_uniformity_check(std::uint64_t seed, const SuiteOptions& options = {});
VerificationReport empirical_pmf_check(std::uint64_t seed, const SuiteOptions& options = {},
                                       std::size_t bins = 10);
// One-step surrogate kernel from D_1 = 2 and D_1 = 4 against the exact pmf.
VerificationReport kernel_check(std::uint64_t seed, const SuiteOptions& options = {});
// Frequency of D_{n+1} = D_n along the surrogate chain.
VerificationReport repeat_check(std::uint64_t seed, const SuiteOptions& options = {});

// d_1 chi-square against the initial law for externally supplied digits.
VerificationReport empirical_pmf_check(std::span<const std::uint64_t> first_digits,
                                       std::size_t bins = 10);

std::vector<std::string_view> suite_names();  // every suite except "all"
// Runs `suite` with the sub-seed derive_seed(seed, suite). "all" runs every
// suite in turn and nests the sub-reports under metrics.
VerificationReport run_suite(std::string_view suite, std::uint64_t seed,
                             const SuiteOptions& options = {});

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_STATS_HPP_
