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

// Chordal Loewner flow d/dt g_t(z) = a / (g_t(z) - U_t) for a driver that is
// piecewise constant on its time grid (left value U_k on [t_k, t_{k+1})).
// On each such step the flow is an explicit vertical-slit map, which gives
// exact traces; evolve_point integrates the ODE itself as an independent path.

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sleloop {

using cplx = std::complex<double>;

/// a = 2 / kappa for kappa = 8/3.
inline constexpr double kCapacityRate = 0.75;

/// Driving function sampled on an increasing capacity-time grid from 0.
struct DrivingPath {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  /// Throws DomainError unless times start at 0 and strictly increase.
  void validate() const;
};

/// Polyline in the closed upper half-plane with matching capacity times.
struct CurveTrace {
  std::vector<cplx> points;
  std::vector<double> times;
};

struct TrackedPoint {
  cplx z0;
  cplx g;
  cplx gprime{1.0, 0.0};
  bool alive = true;
  std::optional<double> swallow_time;
};

namespace loewner {

/// Threshold on |g - U| below which a tracked point counts as swallowed.
inline constexpr double kSwallowTol = 1e-9;

/// Forward slit map over a step of length delta with frozen driver u:
/// u + sqrt((w - u)^2 + 2 a delta), branch with Im >= 0.
cplx slit_forward(cplx w, double u, double delta, double a = kCapacityRate);
/// d/dw of slit_forward.
cplx slit_forward_derivative(cplx w, double u, double delta,
                             double a = kCapacityRate);
/// Inverse slit map u + sqrt((w - u)^2 - 2 a delta), branch with Im >= 0.
cplx slit_inverse(cplx w, double u, double delta, double a = kCapacityRate);

/// Tip gamma(t_k). Costs O(k).
cplx trace_tip(const DrivingPath& driver, std::size_t k,
               double a = kCapacityRate);

/// Full trace gamma(t_0..t_n) by backward composition; O(n^2).
CurveTrace chordal_trace(const DrivingPath& driver, double a = kCapacityRate);

/// Integrates g and g' from t = 0 through the whole driver with RK4.
TrackedPoint evolve_point(const DrivingPath& driver, cplx z,
                          double a = kCapacityRate);

/// Same flow via composition of the exact slit maps up to grid index k
/// (default: the whole driver). Returns (g, g').
std::pair<cplx, cplx> apply_forward_maps(const DrivingPath& driver, cplx z,
                                         std::optional<std::size_t> k = {},
                                         double a = kCapacityRate);

/// Upsilon_t = Im g_t(i) / |g_t'(i)| at every grid time. Stops early (and
/// returns the prefix) if i is swallowed.
std::vector<std::pair<double, double>> conformal_radius_at_i(
    const DrivingPath& driver, double a = kCapacityRate);

/// U_t = x - B_t on a uniform grid of n_steps steps over [0, T].
DrivingPath brownian_driver(double x, double T, std::size_t n_steps,
                            std::uint64_t seed, std::uint64_t stream = 0);

struct ChordalSample {
  DrivingPath driver;
  CurveTrace trace;
};

/// Chordal SLE(8/3) from x to infinity: Brownian driver plus its trace.
ChordalSample sample_chordal_sle(double x, double T, std::size_t n_steps,
                                 std::uint64_t seed, double a = kCapacityRate);

/// Minimum distance between non-adjacent segments of a polyline; used to
/// check the sampled trace is simple at the sampling resolution.
double min_nonadjacent_distance(const std::vector<cplx>& poly);

}  // namespace loewner
}  // namespace sleloop
