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

// Measure-level quantities: Schramm's formula, the bubble-stay probability
// and the Werner loop mass of U_b loops surrounding i, plus the disk
// evaluators p(0, x) = lambda x and lambda log Phi'(0).

#include <vector>

#include "sleloop/geometry.hpp"
#include "sleloop/stats.hpp"

namespace sleloop {

struct MeasureConfig {
  double lambda = 1.0;   // free overall scale of the loop measure
  int quad_points = 64;  // Gauss-Legendre nodes per panel for envelopes

  void validate() const;
};

namespace measures {

/// P(chordal SLE(8/3) from 0 to infinity passes right of i), curve started
/// at real x: (1 + x / sqrt(1 + x^2)) / 2.
double schramm_q(double x);

/// Fraction of samples with a_star < a (Wilson interval).
McEstimate bubble_stay_estimate(double a, const std::vector<BubbleSample>& samples);
McEstimate bubble_stay_estimate(double a, const std::vector<double>& a_stars);

struct WernerMass {
  McEstimate estimate;  // lambda * integral_0^b of the empirical stay fraction
  double lower = 0.0;   // lambda * integral of the lower Koebe envelope
  double upper = 0.0;   // lambda * integral of the upper envelope
};

/// Mass of loops in U_b's family surrounding i: lambda * int_0^b P(a* < s) ds,
/// which over a fixed sample set is exactly lambda * mean(max(0, b - a*)).
WernerMass werner_mass(double b, const std::vector<double>& a_stars,
                       const MeasureConfig& cfg = {});
WernerMass werner_mass(double b, const std::vector<BubbleSample>& samples,
                       const MeasureConfig& cfg = {});

/// The analytic envelope integrals alone.
double envelope_lower_integral(double b, const MeasureConfig& cfg = {});
double envelope_upper_integral(double b, const MeasureConfig& cfg = {});

/// lim_{b -> inf} (b - int_0^b upper) = int_0^inf (1 - upper(s)) ds.
double upper_envelope_deficit(const MeasureConfig& cfg = {});

/// lambda log Phi'(0) for a subdomain D of the unit disk containing 0.
double mass_outside_domain(double phi_prime_0, const MeasureConfig& cfg = {});

/// lambda (y - x): loops surrounding 0 whose largest modulus lies in
/// [e^{-y}, e^{-x}).
double shell_mass(double x, double y, const MeasureConfig& cfg = {});

/// Composite Gauss-Legendre on [lo, hi] with `panels` panels of n nodes.
template <class F>
double gauss_legendre(F&& f, double lo, double hi, int n, int panels);

/// Nodes and weights of the n-point rule on [-1, 1].
void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights);

template <class F>
double gauss_legendre(F&& f, double lo, double hi, int n, int panels) {
  std::vector<double> x, w;
  gauss_legendre_rule(n, x, w);
  const double h = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (std::size_t k = 0; k < x.size(); ++k) sum += w[k] * f(mid + 0.5 * h * x[k]);
  }
  return 0.5 * h * sum;
}

}  // namespace measures
}  // namespace sleloop
