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

#include "sleloop/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sleloop/errors.hpp"

namespace sleloop::stats {

McEstimate wilson(std::size_t successes, std::size_t n, double z) {
  if (n == 0) throw EmptySampleError("wilson: no samples");
  if (successes > n) throw DomainError("wilson: successes exceed trials");
  const double nn = static_cast<double>(n);
  const double p = successes / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // clamp so the point estimate is always inside (rounding at p = 0 or 1)
  return {p, n, std::min(p, centre - half), std::max(p, centre + half)};
}

McEstimate mean_interval(const std::vector<double>& xs, double z) {
  if (xs.empty()) throw EmptySampleError("mean_interval: no samples");
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double half = z * sd / std::sqrt(n);
  return {mean, xs.size(), mean - half, mean + half};
}

double binomial_sigma(double p, std::size_t n) {
  if (n == 0) throw EmptySampleError("binomial_sigma: n == 0");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptySampleError("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

}  // namespace sleloop::stats
