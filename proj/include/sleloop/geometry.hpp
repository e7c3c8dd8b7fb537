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

// Canonical ring domains U_a = H minus a closed disk around i, and the
// elementary planar geometry used to test sampled bubbles against them.

#include <optional>
#include <vector>

#include "sleloop/loewner.hpp"

namespace sleloop {

/// U_a: the upper half-plane minus the closed disk |z - center| <= radius,
/// with rho = e^a, center = i (rho^2 + 1)/(rho^2 - 1), radius = 2 rho/(rho^2 - 1).
/// The Moebius map (i + z)/(i - z) sends it onto the annulus 1 < |w| < rho.
struct RingDomainUa {
  double a = 0.0;
  double rho = 1.0;
  cplx center;
  double radius = 0.0;
};

/// A sampled boundary bubble encircling i.
struct BubbleSample {
  double r = 0.0;        // conformal radius at i of the bubble interior
  double a_star = 0.0;   // critical modulus: bubble in U_a iff a > a_star
  int winding = 0;       // winding of the closed-up trace about i
  std::optional<CurveTrace> trace;
};

namespace geometry {

RingDomainUa u_a(double a);

/// |(i + z)/(i - z)|; +inf at z = i. Throws DomainError for Im z < 0.
double mobius_abs(cplx z);

/// z in U_a, through the disk description.
bool contains(const RingDomainUa& dom, cplx z);

/// ln max_k mobius_abs(points_k); +inf if a point equals i.
double critical_modulus(const CurveTrace& trace);
double critical_modulus(const std::vector<cplx>& points);

/// Closes an open bubble trace through infinity: radially out to a
/// semicircle of radius 2 max|z|, along it inside the upper half-plane, and
/// back in to the first point.
std::vector<cplx> close_bubble_trace(const std::vector<cplx>& points,
                                     int arc_points = 64);

/// Signed winding number of the closed polyline (last point joined to the
/// first) around p. Throws DegenerateError if p lies within tol of an edge.
int winding_number(const std::vector<cplx>& closed, cplx p, double tol = 1e-12);

struct SandwichResult {
  bool pass = false;
  bool lower_ok = false;  // a_star >= ln(1/r) - tol
  bool upper_ok = false;  // a_star <= ln(4/r) + tol
};

/// Koebe-quarter sandwich e^{-a*} <= r <= 4 e^{-a*}, in log form with slack tol.
SandwichResult koebe_sandwich_check(double r, double a_star, double tol);

/// P(bubble avoids the half-disk of radius rho at 0) = (1 - rho^2)^2.
double halfdisk_restriction_bubble(double rho);

/// P(chordal SLE(8/3) from x avoids that half-disk) = (1 - rho^2/x^2)^{5/8}.
double halfdisk_restriction_chordal(double x, double rho);

/// Minimum |z| over a polyline (segments included).
double polyline_min_abs(const std::vector<cplx>& poly);

}  // namespace geometry
}  // namespace sleloop
