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

#include "sleloop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sleloop/errors.hpp"

namespace sleloop::geometry {
namespace {

constexpr cplx kI{0.0, 1.0};

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double n2 = std::norm(d);
  double s = n2 > 0.0 ? ((p - a) * std::conj(d)).real() / n2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

}  // namespace

RingDomainUa u_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("u_a: modulus must be positive");
  RingDomainUa d;
  d.a = a;
  d.rho = std::exp(a);
  // rho^2 - 1 via expm1 keeps small-a accuracy
  const double den = std::expm1(2.0 * a);
  d.center = cplx{0.0, (d.rho * d.rho + 1.0) / den};
  d.radius = 2.0 * d.rho / den;
  return d;
}

double mobius_abs(cplx z) {
  if (z.imag() < 0.0) throw DomainError("mobius_abs: point below the real axis");
  const double den = std::abs(kI - z);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(kI + z) / den;
}

bool contains(const RingDomainUa& dom, cplx z) {
  return z.imag() > 0.0 && std::abs(z - dom.center) > dom.radius;
}

double critical_modulus(const std::vector<cplx>& points) {
  if (points.empty()) throw DomainError("critical_modulus: empty trace");
  double best = 1.0;
  for (const cplx& z : points) best = std::max(best, mobius_abs(z));
  return std::log(best);
}

double critical_modulus(const CurveTrace& trace) {
  return critical_modulus(trace.points);
}

std::vector<cplx> close_bubble_trace(const std::vector<cplx>& points, int arc_points) {
  if (points.size() < 2) throw DomainError("close_bubble_trace: need two points");
  double rmax = 0.0;
  for (const cplx& z : points) rmax = std::max(rmax, std::abs(z));
  const double R = 2.0 * std::max(rmax, 1.0);
  auto angle = [](cplx z) {
    return std::abs(z) > 0.0 ? std::clamp(std::arg(z), 0.0, std::numbers::pi) : 0.0;
  };
  std::vector<cplx> out = points;
  const double a0 = angle(points.back());
  const double a1 = angle(points.front());
  for (int k = 0; k <= arc_points; ++k) {
    const double phi = a0 + (a1 - a0) * k / static_cast<double>(arc_points);
    out.push_back(std::polar(R, phi));
  }
  return out;
}

int winding_number(const std::vector<cplx>& closed, cplx p, double tol) {
  if (closed.size() < 3) throw DegenerateError("winding_number: fewer than 3 vertices");
  double total = 0.0;
  for (std::size_t k = 0; k < closed.size(); ++k) {
    const cplx a = closed[k];
    const cplx b = closed[(k + 1) % closed.size()];
    if (point_segment_distance(p, a, b) <= tol) {
      throw DegenerateError("winding_number: point lies on the polyline");
    }
    total += std::arg((b - p) / (a - p));
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

SandwichResult koebe_sandwich_check(double r, double a_star, double tol) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("koebe_sandwich_check: r outside (0, 1)");
  if (!(a_star >= 0.0)) throw DomainError("koebe_sandwich_check: negative a_star");
  // a few ulps of slack so the exact boundary cases survive rounding in log
  const double slack = tol + 8.0 * std::numeric_limits<double>::epsilon() *
                                 std::max(1.0, std::fabs(a_star));
  SandwichResult res;
  res.lower_ok = a_star >= -std::log(r) - slack;
  res.upper_ok = a_star <= std::log(4.0 / r) + slack;
  res.pass = res.lower_ok && res.upper_ok;
  return res;
}

double halfdisk_restriction_bubble(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must lie in (0, 1)");
  const double f = 1.0 - rho * rho;
  return f * f;
}

double halfdisk_restriction_chordal(double x, double rho) {
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  if (!(std::fabs(x) > rho)) throw DomainError("start point inside the half-disk");
  return std::pow(1.0 - rho * rho / (x * x), 0.625);
}

double polyline_min_abs(const std::vector<cplx>& poly) {
  if (poly.empty()) throw DomainError("polyline_min_abs: empty polyline");
  double best = std::abs(poly.front());
  for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
    best = std::min(best, point_segment_distance(cplx{}, poly[k], poly[k + 1]));
  }
  return best;
}

}  // namespace sleloop::geometry
