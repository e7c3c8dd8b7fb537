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

// The angle process theta_s of a tracked interior point under the SLE(8/3)
// flow, in radius time s and in the coordinate v = cos(theta):
//   unconditioned  dv = sqrt(1 - v^2) dB
//   conditioned    dv = -(1 + v) ds + sqrt(1 - v^2) dB
// The conditioned process (curve forced to pass right of i) is absorbed at
// v = -1 (theta = pi) at time tau_pi, and r = exp(-3 tau_pi / 2).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sleloop/loewner.hpp"
#include "sleloop/stats.hpp"

namespace sleloop {

struct SimConfig {
  double dt = 1e-4;          // radius-time step
  std::uint64_t seed = 1;
  double theta_cut = 0.1;    // driver reconstruction needs theta >= cut
  double max_time = 50.0;    // radius-time cutoff

  void validate() const;
};

/// Sampled v = cos(theta) on the grid s_k = k dt.
struct ThetaPath {
  double dt = 0.0;
  std::vector<double> values;
  std::optional<double> tau_pi;  // absent if stopped before absorption
  bool conditioned = true;

  double time(std::size_t k) const { return dt * static_cast<double>(k); }
};

/// (x, y) = (Re, Im) of g_t(i) and the half-plane capacity time t.
struct CapacityState {
  double x = 0.0;
  double y = 1.0;
  double t_cap = 0.0;
};

namespace diffusion {

/// One Euler-Maruyama step (noise is a standard normal draw), clamped to
/// [-1, 1].
double step_conditioned(double v, double dt, double noise);
double step_unconditioned(double v, double dt, double noise);

/// Drift and diffusion coefficients in v = cos(theta).
double drift_conditioned(double v);
double diffusion_coeff(double v);

/// Drift of theta itself (unit diffusion): -cot(theta)/2 unconditioned and
/// (tan(theta/2) + 3 cot(theta/2)) / 4 conditioned.
double theta_drift_unconditioned(double theta);
double theta_drift_conditioned(double theta);

struct LifetimeSample {
  ThetaPath path;
  double r = 0.0;
};

/// Conditioned path from theta = 0 until absorption at pi. If keep_path is
/// false only the endpoint values are stored. Throws CutoffError past
/// cfg.max_time. `stream` selects the per-path random stream.
LifetimeSample simulate_lifetime(const SimConfig& cfg, std::uint64_t stream = 0,
                                 bool keep_path = true);

/// Radii of n independent conditioned paths (parallel, seed-deterministic).
std::vector<double> simulate_radii(std::size_t n, const SimConfig& cfg);

/// Unconditioned path from v0 until it hits -1 or +1; returns true when it
/// is absorbed at -1 (curve passes right of i).
bool absorbed_at_minus_one(double v0, const SimConfig& cfg, std::uint64_t stream);

/// Monte Carlo frequency of absorption at -1 over n paths with a Wilson
/// interval.
McEstimate absorption_probability(double v0, std::size_t n_paths,
                                  const SimConfig& cfg);

/// Start value v0 = -x / sqrt(1 + x^2) for a curve started at real x.
double start_from_x(double x);

/// Index window [first, last] used for capacity reconstruction: it ends at
/// the last sample with theta <= pi - cut and starts right after the last
/// sample before that with theta < cut.
std::pair<std::size_t, std::size_t> retained_window(const ThetaPath& path,
                                                    double theta_cut);

/// One reconstruction step across radius time ds. The capacity increment
/// integrates dt/ds = y^2 / sin^4(theta) with theta frozen; (x, y) is then
/// moved by the exact slit map of the frozen driver U = x - y cot(theta),
/// so the states are exactly the images of i under the recovered chain.
CapacityState capacity_step(const CapacityState& st, double theta, double ds);

struct CapacityDriver {
  DrivingPath driver;                 // U on the capacity-time grid
  std::vector<CapacityState> states;  // same length as driver
  std::vector<double> theta;          // theta at each retained sample
  std::vector<double> s;              // radius time, 0 at the first sample
  std::size_t first = 0;              // index into the source path
};

/// Integrates the capacity system over path samples [first, last] starting
/// from x = 0, y = 1, t = 0. Throws DomainError if any theta < theta_cut.
CapacityDriver integrate_capacity(const ThetaPath& path, std::size_t first,
                                  std::size_t last, double theta_cut);

/// retained_window followed by integrate_capacity.
CapacityDriver recover_capacity_driver(const ThetaPath& path,
                                       const SimConfig& cfg);

}  // namespace diffusion
}  // namespace sleloop
