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

#include "sleloop/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "sleloop/errors.hpp"
#include "sleloop/parallel.hpp"
#include "sleloop/rng.hpp"

namespace sleloop {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(theta_cut > 0.0 && theta_cut < std::numbers::pi)) {
    throw DomainError("theta_cut must lie in (0, pi)");
  }
  if (!(max_time > 0.0)) throw DomainError("max_time must be positive");
}

namespace diffusion {

double drift_conditioned(double v) { return -(1.0 + v); }

double diffusion_coeff(double v) { return std::sqrt(std::max(0.0, 1.0 - v * v)); }

double theta_drift_unconditioned(double theta) { return -0.5 / std::tan(theta); }

double theta_drift_conditioned(double theta) {
  return 0.25 * (std::tan(0.5 * theta) + 3.0 / std::tan(0.5 * theta));
}

double step_conditioned(double v, double dt, double noise) {
  const double next =
      v + drift_conditioned(v) * dt + diffusion_coeff(v) * std::sqrt(dt) * noise;
  return std::clamp(next, -1.0, 1.0);
}

double step_unconditioned(double v, double dt, double noise) {
  const double next = v + diffusion_coeff(v) * std::sqrt(dt) * noise;
  return std::clamp(next, -1.0, 1.0);
}

LifetimeSample simulate_lifetime(const SimConfig& cfg, std::uint64_t stream,
                                 bool keep_path) {
  cfg.validate();
  auto rng = path_rng(cfg.seed, stream);
  std::normal_distribution<double> normal;
  LifetimeSample out;
  out.path.dt = cfg.dt;
  out.path.conditioned = true;
  auto& vals = out.path.values;
  if (keep_path) vals.reserve(static_cast<std::size_t>(4.0 / cfg.dt));
  const double sdt = std::sqrt(cfg.dt);
  const auto max_steps = static_cast<std::size_t>(std::ceil(cfg.max_time / cfg.dt));
  double v = 1.0;
  if (keep_path) vals.push_back(v);
  for (std::size_t k = 0; k < max_steps; ++k) {
    const double raw =
        v + drift_conditioned(v) * cfg.dt + diffusion_coeff(v) * sdt * normal(rng);
    if (raw <= -1.0) {
      // crossing of -1 by linear interpolation inside the step
      const double frac = (v + 1.0) / (v - raw);
      const double tau = cfg.dt * (static_cast<double>(k) + frac);
      if (keep_path) vals.push_back(-1.0);
      else vals = {1.0, -1.0};
      out.path.tau_pi = tau;
      out.r = std::exp(-1.5 * tau);
      return out;
    }
    v = std::min(raw, 1.0);
    if (keep_path) vals.push_back(v);
  }
  throw CutoffError("conditioned path not absorbed before max_time = " +
                    std::to_string(cfg.max_time));
}

std::vector<double> simulate_radii(std::size_t n, const SimConfig& cfg) {
  cfg.validate();
  std::vector<double> r(n);
  parallel_for(n, [&](std::size_t i) { r[i] = simulate_lifetime(cfg, i, false).r; });
  return r;
}

double start_from_x(double x) { return -x / std::sqrt(1.0 + x * x); }

bool absorbed_at_minus_one(double v0, const SimConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  if (!(v0 >= -1.0 && v0 <= 1.0)) throw DomainError("v0 outside [-1, 1]");
  if (v0 <= -1.0) return true;
  if (v0 >= 1.0) return false;
  auto rng = path_rng(cfg.seed, stream);
  std::normal_distribution<double> normal;
  const auto max_steps = static_cast<std::size_t>(std::ceil(cfg.max_time / cfg.dt));
  double v = v0;
  for (std::size_t k = 0; k < max_steps; ++k) {
    v = step_unconditioned(v, cfg.dt, normal(rng));
    if (v <= -1.0) return true;
    if (v >= 1.0) return false;
  }
  throw CutoffError("unconditioned path not absorbed before max_time = " +
                    std::to_string(cfg.max_time));
}

McEstimate absorption_probability(double v0, std::size_t n_paths,
                                  const SimConfig& cfg) {
  std::vector<char> hit(n_paths, 0);
  parallel_for(n_paths, [&](std::size_t i) { hit[i] = absorbed_at_minus_one(v0, cfg, i); });
  const auto k = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  return stats::wilson(k, n_paths);
}

std::pair<std::size_t, std::size_t> retained_window(const ThetaPath& path,
                                                    double theta_cut) {
  const auto& v = path.values;
  const double v_low = std::cos(theta_cut);          // theta < cut  <=> v > v_low
  const double v_high = std::cos(std::numbers::pi - theta_cut);  // theta > pi - cut <=> v < v_high
  std::size_t last = v.size();
  for (std::size_t k = v.size(); k-- > 0;) {
    if (v[k] >= v_high) {
      last = k;
      break;
    }
  }
  if (last == v.size()) throw DegenerateError("path never leaves the cut near pi");
  std::size_t first = 0;
  for (std::size_t k = last + 1; k-- > 0;) {
    if (v[k] > v_low) {
      first = k + 1;
      break;
    }
  }
  if (first >= last) throw DegenerateError("retained window is empty");
  return {first, last};
}

CapacityState capacity_step(const CapacityState& st, double theta, double ds) {
  const double sn = std::sin(theta);
  const double s2 = sn * sn;
  const double c = kCapacityRate / s2;
  // capacity gained over ds, integrating y^2 / sin^4 with theta frozen;
  // -expm1 keeps precision when c ds is small
  const double delta = st.y * st.y / (s2 * s2) * (-std::expm1(-2.0 * c * ds)) / (2.0 * c);
  // g(i) - U for the frozen driver value U = x - y cot(theta), pushed
  // through the exact slit map. Using the actual image of i (rather than
  // integrating x and y on their own) keeps theta pinned to the path:
  // the open-loop system is unstable as i approaches the curve.
  const cplx w = cplx{std::cos(theta), sn} * (st.y / sn);
  const double u = st.x - w.real();
  const cplx w_next = loewner::slit_forward(w, 0.0, delta);
  CapacityState out;
  out.x = u + w_next.real();
  out.y = w_next.imag();
  out.t_cap = st.t_cap + delta;
  return out;
}

CapacityDriver integrate_capacity(const ThetaPath& path, std::size_t first,
                                  std::size_t last, double theta_cut) {
  if (!(first <= last && last < path.values.size())) {
    throw DomainError("integrate_capacity: bad index window");
  }
  CapacityDriver out;
  out.first = first;
  const std::size_t m = last - first + 1;
  out.driver.times.reserve(m);
  out.driver.values.reserve(m);
  out.states.reserve(m);
  out.theta.reserve(m);
  out.s.reserve(m);
  CapacityState st;
  for (std::size_t k = first; k <= last; ++k) {
    const double theta = std::acos(std::clamp(path.values[k], -1.0, 1.0));
    if (theta < theta_cut) {
      throw DomainError("integrate_capacity: theta below cut at sample " +
                        std::to_string(k));
    }
    if (k > first) st = capacity_step(st, out.theta.back(), path.dt);
    out.states.push_back(st);
    out.theta.push_back(theta);
    out.s.push_back(path.dt * static_cast<double>(k - first));
    out.driver.times.push_back(st.t_cap);
    out.driver.values.push_back(st.x - st.y / std::tan(theta));
  }
  return out;
}

CapacityDriver recover_capacity_driver(const ThetaPath& path, const SimConfig& cfg) {
  cfg.validate();
  const auto [first, last] = retained_window(path, cfg.theta_cut);
  return integrate_capacity(path, first, last, cfg.theta_cut);
}

}  // namespace diffusion
}  // namespace sleloop
