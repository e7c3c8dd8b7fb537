// Copyright 2026 The sleloop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Small statistics toolkit for Monte Carlo reporting.

#include <cstddef>
#include <functional>
#include <vector>

namespace sleloop {

/// A Monte Carlo estimate with a 95% confidence interval.
struct McEstimate {
  double value = 0.0;
  std::size_t n = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;

  bool contains(double x) const { return ci_low <= x && x <= ci_high; }
};

namespace stats {

inline constexpr double kZ95 = 1.959963984540054;

/// Proportion with the Wilson score interval. Throws EmptySampleError if n == 0.
McEstimate wilson(std::size_t successes, std::size_t n, double z = kZ95);

/// Sample mean with a normal-approximation interval.
McEstimate mean_interval(const std::vector<double>& xs, double z = kZ95);

/// Standard deviation of a binomial frequency: sqrt(p(1-p)/n).
double binomial_sigma(double p, std::size_t n);

/// Two-sided Kolmogorov-Smirnov distance sup |F_n - F| between the
/// empirical distribution of `samples` and a continuous CDF.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

}  // namespace stats
}  // namespace sleloop
