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

#include "sleloop/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sleloop/errors.hpp"
#include "sleloop/rng.hpp"

namespace sleloop {

void DrivingPath::validate() const {
  if (times.size() != values.size()) {
    throw DomainError("driver: times and values differ in length");
  }
  if (times.empty() || times.front() != 0.0) {
    throw DomainError("driver: time grid must start at 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw DomainError("driver: time grid must be strictly increasing");
    }
  }
}

namespace loewner {
namespace {

// sqrt(zeta) on the branch that keeps the image in the closed upper half
// plane. When the root is real the side is inherited from Re(w - u).
// Written out with real square roots: this sits in every inner loop.
cplx upper_sqrt(cplx zeta, double side) {
  const double x = zeta.real();
  const double y = zeta.imag();
  const double m = std::sqrt(0.5 * (std::sqrt(x * x + y * y) + std::fabs(x)));
  if (m == 0.0) return {0.0, 0.0};
  double re, im;
  if (x >= 0.0) {
    re = m;
    im = y / (2.0 * m);
  } else {
    re = std::fabs(y) / (2.0 * m);
    im = std::copysign(m, y);
  }
  if (im < 0.0 || (im == 0.0 && side < 0.0)) {
    re = -re;
    im = -im;
  }
  return {re, im};
}

}  // namespace

cplx slit_forward(cplx w, double u, double delta, double a) {
  const cplx d = w - u;
  return u + upper_sqrt(d * d + 2.0 * a * delta, d.real());
}

cplx slit_forward_derivative(cplx w, double u, double delta, double a) {
  const cplx d = w - u;
  return d / upper_sqrt(d * d + 2.0 * a * delta, d.real());
}

cplx slit_inverse(cplx w, double u, double delta, double a) {
  const cplx d = w - u;
  return u + upper_sqrt(d * d - 2.0 * a * delta, d.real());
}

cplx trace_tip(const DrivingPath& driver, std::size_t k, double a) {
  if (k >= driver.size()) throw DomainError("trace_tip: index out of range");
  if (k == 0) return {driver.values[0], 0.0};
  const auto& t = driver.times;
  const auto& u = driver.values;
  // The last slit has its base at u[k-1]; its tip is the curve tip.
  cplx w{u[k - 1], std::sqrt(2.0 * a * (t[k] - t[k - 1]))};
  for (std::size_t j = k - 1; j-- > 0;) {
    w = slit_inverse(w, u[j], t[j + 1] - t[j], a);
  }
  return w;
}

CurveTrace chordal_trace(const DrivingPath& driver, double a) {
  driver.validate();
  CurveTrace out;
  out.times = driver.times;
  out.points.reserve(driver.size());
  for (std::size_t k = 0; k < driver.size(); ++k) {
    out.points.push_back(trace_tip(driver, k, a));
  }
  return out;
}

namespace {

// RK4 for (w, g') with w = g - U over a step of length h at frozen U.
void rk4_step(cplx& w, cplx& gp, double h, double a) {
  auto fw = [a](cplx x) { return a / x; };
  auto fg = [a](cplx x, cplx p) { return -a * p / (x * x); };
  const cplx k1w = fw(w), k1g = fg(w, gp);
  const cplx w2 = w + 0.5 * h * k1w, g2 = gp + 0.5 * h * k1g;
  const cplx k2w = fw(w2), k2g = fg(w2, g2);
  const cplx w3 = w + 0.5 * h * k2w, g3 = gp + 0.5 * h * k2g;
  const cplx k3w = fw(w3), k3g = fg(w3, g3);
  const cplx w4 = w + h * k3w, g4 = gp + h * k3g;
  const cplx k4w = fw(w4), k4g = fg(w4, g4);
  w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
  gp += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
}

// Advances p across grid step k; returns false if p was swallowed.
bool advance(TrackedPoint& p, const DrivingPath& driver, std::size_t k,
             double a) {
  const double u = driver.values[k];
  const double t0 = driver.times[k];
  const double len = driver.times[k + 1] - t0;
  cplx w = p.g - u;
  double done = 0.0;
  // Keep a h / |w|^2 near 1e-3: RK4 error per substep is then ~1e-15.
  while (done < len) {
    const double r2 = std::norm(w);
    if (std::sqrt(r2) < kSwallowTol) {
      p.alive = false;
      p.swallow_time = t0 + done;
      p.g = w + u;
      return false;
    }
    const double h = std::min(len - done, 1e-3 * r2 / a);
    rk4_step(w, p.gprime, h, a);
    done += h;
  }
  p.g = w + u;
  return true;
}

}  // namespace

TrackedPoint evolve_point(const DrivingPath& driver, cplx z, double a) {
  driver.validate();
  if (!(z.imag() > 0.0)) throw DomainError("evolve_point: Im z must be > 0");
  TrackedPoint p;
  p.z0 = z;
  p.g = z;
  for (std::size_t k = 0; k + 1 < driver.size(); ++k) {
    if (!advance(p, driver, k, a)) break;
  }
  return p;
}

std::pair<cplx, cplx> apply_forward_maps(const DrivingPath& driver, cplx z,
                                         std::optional<std::size_t> k,
                                         double a) {
  const std::size_t last = k.value_or(driver.size() - 1);
  if (last >= driver.size()) throw DomainError("apply_forward_maps: bad index");
  cplx g = z;
  cplx gp{1.0, 0.0};
  for (std::size_t j = 0; j < last; ++j) {
    const double u = driver.values[j];
    const double delta = driver.times[j + 1] - driver.times[j];
    gp *= slit_forward_derivative(g, u, delta, a);
    g = slit_forward(g, u, delta, a);
  }
  return {g, gp};
}

std::vector<std::pair<double, double>> conformal_radius_at_i(
    const DrivingPath& driver, double a) {
  driver.validate();
  std::vector<std::pair<double, double>> out;
  out.reserve(driver.size());
  TrackedPoint p;
  p.z0 = p.g = cplx{0.0, 1.0};
  out.emplace_back(0.0, 1.0);
  for (std::size_t k = 0; k + 1 < driver.size(); ++k) {
    if (!advance(p, driver, k, a)) break;
    out.emplace_back(driver.times[k + 1], p.g.imag() / std::abs(p.gprime));
  }
  return out;
}

DrivingPath brownian_driver(double x, double T, std::size_t n_steps,
                            std::uint64_t seed, std::uint64_t stream) {
  if (!(T > 0.0) || n_steps == 0) throw DomainError("brownian_driver: bad grid");
  auto rng = path_rng(seed, stream);
  std::normal_distribution<double> normal;
  DrivingPath d;
  d.times.resize(n_steps + 1);
  d.values.resize(n_steps + 1);
  const double dt = T / static_cast<double>(n_steps);
  const double sd = std::sqrt(dt);
  double b = 0.0;
  for (std::size_t k = 0; k <= n_steps; ++k) {
    d.times[k] = k == n_steps ? T : dt * static_cast<double>(k);
    d.values[k] = x - b;
    b += sd * normal(rng);
  }
  return d;
}

ChordalSample sample_chordal_sle(double x, double T, std::size_t n_steps,
                                 std::uint64_t seed, double a) {
  ChordalSample s;
  s.driver = brownian_driver(x, T, n_steps, seed);
  s.trace = chordal_trace(s.driver, a);
  return s;
}

namespace {

double segment_distance(cplx p1, cplx p2, cplx q1, cplx q2) {
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0) {
    return 0.0;
  }
  auto pt_seg = [](cplx p, cplx a0, cplx a1) {
    const cplx d = a1 - a0;
    const double n2 = std::norm(d);
    double s = n2 > 0 ? ((p - a0) * std::conj(d)).real() / n2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (a0 + s * d));
  };
  return std::min({pt_seg(p1, q1, q2), pt_seg(p2, q1, q2), pt_seg(q1, p1, p2),
                   pt_seg(q2, p1, p2)});
}

}  // namespace

double min_nonadjacent_distance(const std::vector<cplx>& poly) {
  double best = HUGE_VAL;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    for (std::size_t j = i + 2; j + 1 < poly.size(); ++j) {
      best = std::min(best, segment_distance(poly[i], poly[i + 1], poly[j], poly[j + 1]));
    }
  }
  return best;
}

}  // namespace loewner
}  // namespace sleloop
