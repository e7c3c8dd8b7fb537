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

#include "sleloop/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "sleloop/diffusion.hpp"
#include "sleloop/errors.hpp"
#include "sleloop/parallel.hpp"
#include "sleloop/rng.hpp"

namespace sleloop::sampling {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// |z|^2 without the overflow-safe hypot that std::norm goes through.
inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Squared distance from the real point u to the segment [a, b].
double segment_distance2(double u, cplx a, cplx b) {
  const cplx p{u, 0.0};
  const cplx d = b - a;
  const double n2 = abs2(d);
  double s = n2 > 0.0 ? ((p - a) * std::conj(d)).real() / n2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return abs2(p - (a + s * d));
}

// Slit bases and capacity lengths kept separately: cumulative capacity
// times lose the small late increments to rounding.
struct SlitChain {
  std::vector<double> u;
  std::vector<double> delta;

  std::size_t size() const { return u.size() + 1; }  // number of tips

  // Pulls w back through the first k slit maps.
  cplx preimage(cplx w, std::size_t k, double a) const {
    for (std::size_t j = k; j-- > 0;) w = loewner::slit_inverse(w, u[j], delta[j], a);
    return w;
  }

  cplx tip(std::size_t k, double a) const {
    if (k == 0) return {u.empty() ? 0.0 : u[0], 0.0};
    return preimage({u[k - 1], std::sqrt(2.0 * a * delta[k - 1])}, k - 1, a);
  }

  // Hyperbolic geodesic from the final tip to infinity: the preimage of the
  // vertical ray above the last slit base, sampled geometrically out to
  // `reach`.
  std::vector<cplx> geodesic(double reach, double a) const {
    std::vector<cplx> out;
    const std::size_t k = u.size();
    if (k == 0) return out;
    for (double h = std::sqrt(2.0 * a * delta[k - 1]); h < reach; h *= 1.5) {
      out.push_back(preimage({u[k - 1], h}, k, a));
    }
    out.push_back(preimage({u[k - 1], reach}, k, a));
    return out;
  }
};

cplx arc_point(double rho, double phi) {
  if (phi <= 0.0) return {rho, 0.0};
  if (phi >= kPi) return {-rho, 0.0};
  return std::polar(rho, phi);
}

}  // namespace

ArcTracker::ArcTracker(double rho, int initial_points, double eta,
                       std::size_t max_points)
    : rho_(rho), eta_(eta), max_points_(max_points) {
  if (!(rho > 0.0)) throw DomainError("ArcTracker: rho must be positive");
  if (initial_points < 2) throw DomainError("ArcTracker: need at least 2 points");
  phi_.resize(initial_points);
  w_.resize(initial_points);
  for (int k = 0; k < initial_points; ++k) {
    phi_[k] = kPi * k / (initial_points - 1.0);
    w_[k] = arc_point(rho, phi_[k]);
  }
}

ArcTracker::State ArcTracker::save() const {
  return {phi_, w_, hist_u_.size(), crossed_};
}

void ArcTracker::restore(const State& st) {
  if (st.n_steps > hist_u_.size()) throw DomainError("ArcTracker: state from the future");
  phi_ = st.phi;
  w_ = st.w;
  crossed_ = st.crossed;
  hist_u_.resize(st.n_steps);
  hist_delta_.resize(st.n_steps);
}

cplx ArcTracker::replay(double phi) const {
  cplx z = arc_point(rho_, phi);
  for (std::size_t k = 0; k < hist_u_.size(); ++k) {
    z = loewner::slit_forward(z, hist_u_[k], hist_delta_[k]);
  }
  return z;
}

double ArcTracker::crossing_height(double u) const {
  double h = HUGE_VAL;
  for (std::size_t j = 0; j + 1 < w_.size(); ++j) {
    const double ra = w_[j].real() - u;
    const double rb = w_[j + 1].real() - u;
    if ((ra > 0.0 && rb > 0.0) || (ra < 0.0 && rb < 0.0)) continue;
    const double span = ra - rb;
    const double f = span != 0.0 ? ra / span : 0.0;
    h = std::min(h, w_[j].imag() + f * (w_[j + 1].imag() - w_[j].imag()));
  }
  return h;
}

void ArcTracker::step(double u, double delta) {
  if (crossed_) return;
  // The slit enters the half-disk if its base lies under the arc image or it
  // reaches the arc from outside.
  const double lo = std::min(w_.front().real(), w_.back().real());
  const double hi = std::max(w_.front().real(), w_.back().real());
  if ((u > lo && u < hi) ||
      crossing_height(u) <= std::sqrt(2.0 * kCapacityRate * delta)) {
    crossed_ = true;
    return;
  }
  for (auto& w : w_) w = loewner::slit_forward(w, u, delta);
  hist_u_.push_back(u);
  hist_delta_.push_back(delta);
  refine(u);
}

void ArcTracker::refine(double u) {
  std::size_t j = 0;
  while (j + 1 < w_.size()) {
    // squared form of |w_{j+1} - w_j| > eta * dist(u, segment)
    const double gap2 = abs2(w_[j + 1] - w_[j]);
    const bool split = w_.size() < max_points_ && phi_[j + 1] - phi_[j] > 1e-12 &&
                       gap2 > eta_ * eta_ * segment_distance2(u, w_[j], w_[j + 1]);
    if (!split) {
      ++j;
      continue;
    }
    const double mid = 0.5 * (phi_[j] + phi_[j + 1]);
    phi_.insert(phi_.begin() + static_cast<std::ptrdiff_t>(j + 1), mid);
    w_.insert(w_.begin() + static_cast<std::ptrdiff_t>(j + 1), replay(mid));
  }
}

double ArcTracker::distance_to(double u) const {
  double d2 = HUGE_VAL;
  for (const auto& w : w_) d2 = std::min(d2, abs2(w - u));
  return std::sqrt(d2);
}

bool ArcTracker::any_left_of(double u) const {
  return std::any_of(w_.begin(), w_.end(), [u](cplx w) { return w.real() < u; });
}

bool ArcTracker::any_right_of(double u) const {
  return std::any_of(w_.begin(), w_.end(), [u](cplx w) { return w.real() > u; });
}

namespace {

std::map<std::size_t, cplx> adaptive_tips(const SlitChain& chain, std::size_t stride,
                                          double eta, double a) {
  if (stride == 0) stride = 1;
  const std::size_t last = chain.size() - 1;
  std::map<std::size_t, cplx> tips;
  auto tip = [&](std::size_t k) {
    auto it = tips.find(k);
    if (it == tips.end()) it = tips.emplace(k, chain.tip(k, a)).first;
    return it->second;
  };
  for (std::size_t k = 0; k < last; k += stride) tip(k);
  tip(last);

  // Bisect index intervals whose chord is long next to its distance from i.
  std::vector<std::pair<std::size_t, std::size_t>> work;
  for (auto it = tips.begin(); std::next(it) != tips.end(); ++it) {
    work.emplace_back(it->first, std::next(it)->first);
  }
  while (!work.empty()) {
    const auto [ka, kb] = work.back();
    work.pop_back();
    if (kb - ka < 2) continue;
    const cplx za = tip(ka), zb = tip(kb);
    const double scale = std::min(std::abs(za - kI), std::abs(zb - kI));
    if (std::abs(za - zb) <= eta * scale) continue;
    const std::size_t km = ka + (kb - ka) / 2;
    tip(km);
    work.emplace_back(ka, km);
    work.emplace_back(km, kb);
  }

  // Bisect towards the vertex of largest Moebius modulus until its
  // neighbours are adjacent steps.
  for (int round = 0; round < 128; ++round) {
    auto best = tips.begin();
    double best_m = -1.0;
    for (auto it = tips.begin(); it != tips.end(); ++it) {
      const double m = geometry::mobius_abs(it->second);
      if (m > best_m) {
        best_m = m;
        best = it;
      }
    }
    const std::size_t kb = best->first;
    bool refined = false;
    if (best != tips.begin() && kb - std::prev(best)->first > 1) {
      const std::size_t lo = std::prev(best)->first;
      tip(lo + (kb - lo) / 2);
      refined = true;
    }
    if (std::next(best) != tips.end() && std::next(best)->first - kb > 1) {
      const std::size_t hi = std::next(best)->first;
      tip(kb + (hi - kb + 1) / 2);
      refined = true;
    }
    if (!refined) break;
  }
  return tips;
}

CurveTrace to_trace(const std::map<std::size_t, cplx>& tips,
                    const std::vector<double>& times) {
  CurveTrace out;
  out.points.reserve(tips.size());
  out.times.reserve(tips.size());
  for (const auto& [k, z] : tips) {
    out.times.push_back(times[k]);
    out.points.push_back(z);
  }
  return out;
}

}  // namespace

CurveTrace adaptive_bubble_trace(const DrivingPath& driver, std::size_t stride,
                                 double eta, double a) {
  driver.validate();
  SlitChain chain;
  for (std::size_t k = 0; k + 1 < driver.size(); ++k) {
    chain.u.push_back(driver.values[k]);
    chain.delta.push_back(driver.times[k + 1] - driver.times[k]);
  }
  if (chain.u.empty()) return {{cplx{driver.values[0], 0.0}}, {0.0}};
  return to_trace(adaptive_tips(chain, stride, eta, a), driver.times);
}

SampledBubble sample_bubble(const BubbleOptions& opt, std::uint64_t seed,
                            std::uint64_t index) {
  if (!(opt.dt > 0.0)) throw DomainError("bubble: dt must be positive");
  if (!(opt.theta_cut > 0.0 && opt.theta_cut < 0.5 * kPi)) {
    throw DomainError("bubble: theta_cut must lie in (0, pi/2)");
  }
  if (opt.keep_trace && !opt.with_geometry) {
    throw DomainError("bubble: keep_trace needs with_geometry");
  }
  const double a = kCapacityRate;
  const bool track = opt.rho > 0.0;
  const double hi_cut = kPi - opt.theta_cut;
  const double ds_floor = opt.dt * opt.min_step_fraction;

  auto rng = path_rng(seed, index);
  std::normal_distribution<double> normal;

  // Current retained window.
  bool active = false;
  CapacityState st;
  SlitChain chain;
  std::vector<double> times;  // capacity time at each slit base
  ArcTracker arc(track ? opt.rho : 1.0, opt.arc_points, opt.eta_refine, opt.max_arc_points);
  double s0 = 0.0;

  // Snapshot taken on each entry above pi - cut.
  struct Snapshot {
    bool valid = false;
    CapacityState st;
    double theta = 0.0;
    std::size_t n_grid = 0;
    ArcTracker::State arc;
    double s = 0.0;
  } snap;
  bool in_high = false;

  SampledBubble out;
  double v = 1.0;
  double s = 0.0;
  for (;;) {
    if (s > opt.max_time) {
      throw CutoffError("bubble: angle process not absorbed before max_time");
    }
    const double theta = std::acos(v);
    const bool low = theta < opt.theta_cut;
    const bool high = theta > hi_cut;
    if (low) {
      if (active) ++out.resets;
      active = false;
      in_high = false;
      snap.valid = false;
    } else if (!active) {
      active = true;
      st = CapacityState{};
      chain.u.clear();
      chain.delta.clear();
      times.clear();
      arc = ArcTracker(track ? opt.rho : 1.0, opt.arc_points, opt.eta_refine,
                       opt.max_arc_points);
      s0 = s;
    }
    const double cot = active ? 1.0 / std::tan(theta) : 0.0;
    const double u = st.x - st.y * cot;
    if (active && high && !in_high) {
      snap = {true, st, theta, chain.u.size(), arc.save(), s};
    }
    in_high = active && high;

    double ds = opt.dt;
    if (active) {
      const double sn = std::sin(theta);
      ds = std::min(ds, (opt.eta_i * sn) * (opt.eta_i * sn) / (2.0 * a));
      // Keep the Euler step in v small relative to the distance to +-1, where
      // cot(theta), and with it the driver, is most sensitive.
      ds = std::min(ds, 0.5 * opt.eta_v * opt.eta_v * (1.0 - std::fabs(v)));
      if (track && !arc.crossed()) {
        const double d = opt.eta_arc * arc.distance_to(u) * sn * sn / st.y;
        ds = std::min(ds, d * d / (2.0 * a));
      }
      ds = std::max(ds, ds_floor);
    }

    const double raw = v + diffusion::drift_conditioned(v) * ds +
                       diffusion::diffusion_coeff(v) * std::sqrt(ds) * normal(rng);
    if (raw <= -1.0) {
      out.tau_pi = s + ds * (v + 1.0) / (v - raw);
      if (!in_high) {
        // jumped straight to pi: the window ends at the current sample
        snap = {true, st, theta, chain.u.size(), arc.save(), s};
      }
      break;
    }
    if (active) {
      const CapacityState next = diffusion::capacity_step(st, theta, ds);
      const double delta = next.t_cap - st.t_cap;
      if (delta > 0.0) {
        times.push_back(st.t_cap);
        chain.u.push_back(u);
        chain.delta.push_back(delta);
        if (track) arc.step(u, delta);
      }
      st = next;
    }
    v = std::min(raw, 1.0);
    s += ds;
  }

  if (!snap.valid || snap.n_grid == 0) {
    throw DegenerateError("bubble: empty retained window");
  }
  // Roll the window back to the snapshot.
  chain.u.resize(snap.n_grid);
  chain.delta.resize(snap.n_grid);
  times.resize(snap.n_grid);
  const double u_last = chain.u.back();
  times.push_back(snap.st.t_cap);
  if (track) {
    arc.restore(snap.arc);
    out.hits_halfdisk = arc.crossed();
    out.arc_points = arc.size();
  }
  out.s_start = s0;
  out.s_end = snap.s;
  out.steps = snap.n_grid;

  out.sample.r = std::exp(-1.5 * (out.tau_pi - s0));
  if (!opt.with_geometry) return out;

  CurveTrace trace = to_trace(adaptive_tips(chain, opt.tip_stride, opt.eta_trace, a), times);
  out.sample.a_star = geometry::critical_modulus(trace);
  {
    // Close through infinity along the geodesic from the tip, then the big
    // semicircle and the real axis back to the start.
    double reach = 1.0;
    for (const cplx& z : trace.points) reach = std::max(reach, std::abs(z));
    std::vector<cplx> loop = trace.points;
    const auto geo = chain.geodesic(20.0 * (reach + std::fabs(u_last)), a);
    loop.insert(loop.end(), geo.begin(), geo.end());
    out.sample.winding = geometry::winding_number(geometry::close_bubble_trace(loop), kI);
  }
  out.trace_min_abs = geometry::polyline_min_abs(trace.points);
  if (opt.keep_trace) {
    out.sample.trace = std::move(trace);
    out.driver.times = std::move(times);
    out.driver.values = chain.u;
    out.driver.values.push_back(snap.st.x - snap.st.y / std::tan(snap.theta));
  }
  return out;
}

std::vector<SampledBubble> sample_bubbles(std::size_t n, const BubbleOptions& opt,
                                          std::uint64_t seed) {
  std::vector<SampledBubble> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = sample_bubble(opt, seed, i); });
  return out;
}

bool chordal_hits_halfdisk(const ChordalHitOptions& opt, std::uint64_t seed,
                           std::uint64_t index) {
  if (!(opt.rho > 0.0) || !(std::fabs(opt.x) > opt.rho)) {
    throw DomainError("chordal: need |x| > rho > 0");
  }
  if (!(opt.horizon > 0.0) || !(opt.eta > 0.0)) {
    throw DomainError("chordal: horizon and eta must be positive");
  }
  const double a = kCapacityRate;
  auto rng = path_rng(seed, index);
  std::normal_distribution<double> normal;
  ArcTracker arc(opt.rho, opt.arc_points, opt.eta_refine, opt.max_arc_points);
  double u = opt.x;
  double t = 0.0;
  while (t < opt.horizon) {
    const double d = std::max(arc.distance_to(u), opt.min_distance);
    const double delta = std::min((opt.eta * d) * (opt.eta * d) / (2.0 * a), opt.horizon - t);
    arc.step(u, delta);
    if (arc.crossed()) return true;
    t += delta;
    u -= std::sqrt(delta) * normal(rng);  // U_t = x - B_t
  }
  // Past the horizon the tip is far out and the arc is no longer reachable
  // at this resolution.
  return false;
}

McEstimate chordal_avoidance(std::size_t n, const ChordalHitOptions& opt,
                             std::uint64_t seed) {
  std::vector<char> hit(n, 0);
  parallel_for(n, [&](std::size_t i) { hit[i] = chordal_hits_halfdisk(opt, seed, i); });
  const auto k = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 0));
  return stats::wilson(k, n);
}

}  // namespace sleloop::sampling
