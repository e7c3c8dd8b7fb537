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

// Samplers for whole curves: SLE(8/3) boundary bubbles encircling i, and
// chordal SLE(8/3) with half-disk hitting detection.
//
// A bubble is grown online in radius time from the conditioned angle
// process. Its first arc (theta < theta_cut, where the driver sits near
// -infinity) is mapped out: the sample is the curve seen through the map
// that fixes i and infinity at the moment theta last crosses theta_cut,
// which is chordal SLE(8/3) from -cot(theta) conditioned to pass right of i.
// The final excursion above pi - theta_cut is dropped symmetrically.
//
// Hitting of the half-disk {|z| <= rho} is decided without a trace: points
// of the boundary arc are pushed through the forward slit maps, and the
// curve enters the half-disk exactly when a new slit starts under the image
// of the arc or reaches it. Arc points are added
// adaptively (by replaying the driver history) where the image of the arc
// stretches near the driver, and the capacity step is shortened so the new
// slit stays small next to the nearest arc image.

#include <cstdint>
#include <vector>

#include "sleloop/geometry.hpp"
#include "sleloop/loewner.hpp"
#include "sleloop/stats.hpp"

namespace sleloop::sampling {

/// Tracks the images under g_t of points on the arc rho e^{i phi}, phi in [0, pi].
class ArcTracker {
 public:
  /// eta: a pair of neighbouring images is split when their distance
  /// exceeds eta times the distance of their chord from the driver.
  ArcTracker(double rho, int initial_points, double eta, std::size_t max_points);

  /// Images and arc parameters at a point in time; history is implied by
  /// the recorded step count.
  struct State {
    std::vector<double> phi;
    std::vector<cplx> w;
    std::size_t n_steps = 0;
    bool crossed = false;
  };
  State save() const;
  void restore(const State& st);

  /// Applies one forward slit step (base u, capacity length delta) to all
  /// points, records it, and refines the arc near u. If the new slit cuts
  /// the image of the arc, the curve has entered the half-disk: crossed()
  /// turns true and further steps are ignored.
  void step(double u, double delta);
  bool crossed() const { return crossed_; }

  /// Lowest height at which the polyline of images meets the vertical line
  /// Re w = u (+inf if it does not).
  double crossing_height(double u) const;

  /// min |w - u| over the current images.
  double distance_to(double u) const;
  /// Any image strictly left / right of the real position u.
  bool any_left_of(double u) const;
  bool any_right_of(double u) const;

  std::size_t size() const { return w_.size(); }
  std::size_t steps() const { return hist_u_.size(); }
  const std::vector<cplx>& images() const { return w_; }

 private:
  cplx replay(double phi) const;
  void refine(double u);

  double rho_;
  double eta_;
  std::size_t max_points_;
  std::vector<double> phi_;
  std::vector<cplx> w_;
  std::vector<double> hist_u_;
  std::vector<double> hist_delta_;
  bool crossed_ = false;
};

struct BubbleOptions {
  double dt = 1e-3;             // radius-time step away from the arc
  double theta_cut = 0.1;
  double max_time = 50.0;
  double rho = 0.3;             // half-disk radius; <= 0 disables tracking
  double eta_arc = 0.1;         // slit length / distance to arc images
  double eta_i = 0.2;           // slit length / distance to the image of i
  double eta_v = 0.1;           // relative Euler step in cos(theta) near +-1
  double eta_refine = 0.25;     // arc refinement threshold (see ArcTracker)
  int arc_points = 33;
  std::size_t max_arc_points = 4096;
  double min_step_fraction = 1e-6;  // floor on ds as a fraction of dt
  std::size_t tip_stride = 64;
  double eta_trace = 0.15;      // trace segment length / distance to i
  bool with_geometry = true;     // build the trace, a_star and winding
  bool keep_trace = false;
};

struct SampledBubble {
  BubbleSample sample;          // r, a_star, winding (and trace if kept)
  double tau_pi = 0.0;          // full absorption time of the angle process
  double s_start = 0.0;         // radius time where the retained window starts
  double s_end = 0.0;           // and where it ends
  bool hits_halfdisk = false;
  double trace_min_abs = 0.0;   // min |z| over the sampled trace
  std::size_t steps = 0;        // Loewner steps in the retained window
  std::size_t arc_points = 0;
  std::size_t resets = 0;       // returns below theta_cut
  DrivingPath driver;           // retained driver (only with keep_trace)
};

/// One bubble from stream `index` of `seed`. Throws CutoffError past max_time.
SampledBubble sample_bubble(const BubbleOptions& opt, std::uint64_t seed,
                            std::uint64_t index);

/// n bubbles in parallel; result i depends only on (seed, i).
std::vector<SampledBubble> sample_bubbles(std::size_t n, const BubbleOptions& opt,
                                          std::uint64_t seed);

/// Trace of a retained bubble driver: tips at a coarse stride, refined where
/// consecutive tips are far apart compared with their distance to i, and at
/// full resolution next to the point of largest |(i+z)/(i-z)|.
CurveTrace adaptive_bubble_trace(const DrivingPath& driver, std::size_t stride,
                                 double eta, double a = kCapacityRate);

struct ChordalHitOptions {
  double x = 2.0;
  double rho = 0.3;
  double horizon = 1e4;         // capacity-time horizon
  double eta = 0.1;             // slit length / distance to arc images
  double eta_refine = 0.25;
  int arc_points = 33;
  std::size_t max_arc_points = 4096;
  double min_distance = 1e-7;   // floor on the distance used for step control
};

/// True if chordal SLE(8/3) from opt.x hits the half-disk before the horizon.
bool chordal_hits_halfdisk(const ChordalHitOptions& opt, std::uint64_t seed,
                           std::uint64_t index);

/// Avoidance frequency over n curves with a Wilson interval.
McEstimate chordal_avoidance(std::size_t n, const ChordalHitOptions& opt,
                             std::uint64_t seed);

}  // namespace sleloop::sampling
