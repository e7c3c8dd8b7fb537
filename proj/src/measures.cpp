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

#include "sleloop/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sleloop/errors.hpp"
#include "sleloop/specfun.hpp"

namespace sleloop {

void MeasureConfig::validate() const {
  if (!(lambda > 0.0)) throw DomainError("lambda must be positive");
  if (quad_points < 1) throw DomainError("quad_points must be at least 1");
}

namespace measures {
namespace {

// Bub(r >= e^{-s}); the modular form is the accurate one for small s.
double upper_envelope(double s) {
  if (s <= 0.0) return 0.0;
  return s < 1.0 ? specfun::radius_cdf_modular(s)
                 : specfun::radius_cdf_product(std::exp(-s));
}

double lower_envelope(double s) {
  return upper_envelope(s - std::log(4.0));
}

int panels_for(double len) {
  return std::max(1, static_cast<int>(std::ceil(2.0 * len)));
}

}  // namespace

void gauss_legendre_rule(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DomainError("gauss_legendre_rule: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess, then Newton on P_n
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(n, x);
      const double pm = n > 1 ? std::legendre(n - 1, x) : 1.0;
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double p = std::legendre(n, x);
    const double pm = n > 1 ? std::legendre(n - 1, x) : 1.0;
    dp = n * (x * p - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

double schramm_q(double x) { return 0.5 * (1.0 + x / std::sqrt(1.0 + x * x)); }

McEstimate bubble_stay_estimate(double a, const std::vector<double>& a_stars) {
  if (!(a > 0.0)) throw DomainError("bubble_stay_estimate: a must be positive");
  if (a_stars.empty()) throw EmptySampleError("bubble_stay_estimate: no samples");
  const auto k = static_cast<std::size_t>(
      std::count_if(a_stars.begin(), a_stars.end(), [a](double s) { return s < a; }));
  return stats::wilson(k, a_stars.size());
}

McEstimate bubble_stay_estimate(double a, const std::vector<BubbleSample>& samples) {
  std::vector<double> a_stars;
  a_stars.reserve(samples.size());
  for (const auto& s : samples) a_stars.push_back(s.a_star);
  return bubble_stay_estimate(a, a_stars);
}

double envelope_upper_integral(double b, const MeasureConfig& cfg) {
  cfg.validate();
  if (b <= 0.0) return 0.0;
  return cfg.lambda * gauss_legendre(upper_envelope, 0.0, b, cfg.quad_points, panels_for(b));
}

double envelope_lower_integral(double b, const MeasureConfig& cfg) {
  cfg.validate();
  const double lo = std::log(4.0);
  if (b <= lo) return 0.0;
  return cfg.lambda *
         gauss_legendre(lower_envelope, lo, b, cfg.quad_points, panels_for(b - lo));
}

double upper_envelope_deficit(const MeasureConfig& cfg) {
  cfg.validate();
  // 1 - upper(s) ~ 3 e^{-2s/3}; beyond s = 60 the remainder is below 1e-16
  const double hi = 60.0;
  return cfg.lambda * gauss_legendre([](double s) { return 1.0 - upper_envelope(s); },
                                     0.0, hi, cfg.quad_points, panels_for(hi));
}

WernerMass werner_mass(double b, const std::vector<double>& a_stars,
                       const MeasureConfig& cfg) {
  cfg.validate();
  if (a_stars.empty()) throw EmptySampleError("werner_mass: no samples");
  WernerMass out;
  if (b <= 0.0) {
    out.estimate = {0.0, a_stars.size(), 0.0, 0.0};
    return out;
  }
  // int_0^b 1{a* < s} ds = max(0, b - a*), so the inner quadrature is exact
  std::vector<double> terms;
  terms.reserve(a_stars.size());
  for (double s : a_stars) terms.push_back(cfg.lambda * std::max(0.0, b - s));
  out.estimate = stats::mean_interval(terms);
  out.lower = envelope_lower_integral(b, cfg);
  out.upper = envelope_upper_integral(b, cfg);
  return out;
}

WernerMass werner_mass(double b, const std::vector<BubbleSample>& samples,
                       const MeasureConfig& cfg) {
  std::vector<double> a_stars;
  a_stars.reserve(samples.size());
  for (const auto& s : samples) a_stars.push_back(s.a_star);
  return werner_mass(b, a_stars, cfg);
}

double mass_outside_domain(double phi_prime_0, const MeasureConfig& cfg) {
  cfg.validate();
  if (!(phi_prime_0 >= 1.0)) throw DomainError("mass_outside_domain: Phi'(0) must be >= 1");
  return cfg.lambda * std::log(phi_prime_0);
}

double shell_mass(double x, double y, const MeasureConfig& cfg) {
  cfg.validate();
  if (!(x >= 0.0)) throw DomainError("shell_mass: x must be >= 0");
  if (!(y >= x)) throw DomainError("shell_mass: need x <= y");
  return cfg.lambda * (y - x);
}

}  // namespace measures
}  // namespace sleloop
