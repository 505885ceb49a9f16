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

#ifndef SIGNED_ENGEL_STATS_TESTS_HPP_
#define SIGNED_ENGEL_STATS_TESTS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace signed_engel {

double normal_cdf(double x);

// Two-sided Kolmogorov-Smirnov distance between the empirical law of the
// sample and a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_distance_normal(std::vector<double> sample);
double ks_distance_uniform(std::vector<double> sample);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Pearson goodness of fit of observed counts against cell probabilities
// (which must sum to 1).
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities);
double chi_square_survival(double statistic, int dof);

double median(std::vector<double> values);

// Standard deviation of a sample proportion.
double proportion_sigma(double p, std::size_t n);

}  // namespace signed_engel

#endif  // SIGNED_ENGEL_STATS_TESTS_HPP_
