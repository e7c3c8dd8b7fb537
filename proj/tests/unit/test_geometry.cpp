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


// Ring domains, critical modulus, winding numbers, the Koebe sandwich and
// the restriction formulas.

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "sleloop/errors.hpp"
#include "sleloop/geometry.hpp"

using sleloop::cplx;
namespace geo = sleloop::geometry;
using std::numbers::pi;

namespace {

std::vector<cplx> circle(cplx c, double r, int n, bool ccw = true) {
  std::vector<cplx> out;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * pi * k / n;
    out.push_back(c + std::polar(r, ccw ? t : -t));
  }
  return out;
}

}  // namespace

TEST_CASE("U_a boundary is the level set |(i+z)/(i-z)| = e^a") {
  for (double a : {0.05, 0.5, 1.0, 3.0}) {
    const auto d = geo::u_a(a);
    for (int k = 0; k < 16; ++k) {
      const cplx z = d.center + std::polar(d.radius, 2.0 * pi * k / 16.0);
      CHECK(geo::mobius_abs(z) == doctest::Approx(std::exp(a)).epsilon(1e-10));
    }
    // top of the removed disk on the imaginary axis, found by root finding
    std::uintmax_t iters = 100;
    const auto [lo, hi] = boost::math::tools::toms748_solve(
        [&](double y) { return geo::mobius_abs(cplx(0.0, y)) - std::exp(a); }, 1.0 + 1e-12,
        1e6, boost::math::tools::eps_tolerance<double>(50), iters);
    CHECK(0.5 * (lo + hi) ==
          doctest::Approx(d.center.imag() + d.radius).epsilon(1e-12));
  }
}

TEST_CASE("containment agrees with the Moebius description") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> re(-4.0, 4.0), im(1e-3, 5.0);
  const auto d = geo::u_a(1.2);
  for (int k = 0; k < 2000; ++k) {
    const cplx z(re(rng), im(rng));
    const double m = geo::mobius_abs(z);
    if (std::fabs(m - d.rho) < 1e-9) continue;
    CHECK(geo::contains(d, z) == (m < d.rho));
  }
  CHECK(geo::mobius_abs(cplx(0.0, 1.0)) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(geo::mobius_abs(cplx(0.0, -1.0)), sleloop::DomainError);
  CHECK_THROWS_AS(geo::u_a(0.0), sleloop::DomainError);
}

TEST_CASE("critical modulus of a circle around i") {
  // max over |z - i| = c of |2i + (z - i)| / c is (2 + c) / c
  for (double c : {0.1, 0.5, 0.9}) {
    CHECK(geo::critical_modulus(circle(cplx(0.0, 1.0), c, 4096)) ==
          doctest::Approx(std::log((2.0 + c) / c)).epsilon(1e-6));
  }
  CHECK_THROWS_AS(geo::critical_modulus(std::vector<cplx>{}), sleloop::DomainError);
}

TEST_CASE("winding numbers") {
  const auto ccw = circle(cplx(0.0, 1.0), 0.5, 50);
  const auto cw = circle(cplx(0.0, 1.0), 0.5, 50, false);
  CHECK(geo::winding_number(ccw, cplx(0.0, 1.0)) == 1);
  CHECK(geo::winding_number(cw, cplx(0.0, 1.0)) == -1);
  CHECK(geo::winding_number(ccw, cplx(3.0, 1.0)) == 0);
  std::vector<cplx> twice = ccw;
  twice.insert(twice.end(), ccw.begin(), ccw.end());
  CHECK(geo::winding_number(twice, cplx(0.0, 1.0)) == 2);
  const std::vector<cplx> square{{-1, 0}, {1, 0}, {1, 2}, {-1, 2}};
  CHECK_THROWS_AS(geo::winding_number(square, cplx(1.0, 1.0)), sleloop::DegenerateError);
}

TEST_CASE("closing an open arc over i through infinity") {
  // arc from 2 over i to -2, closed by the big semicircle: i is enclosed
  // with the orientation of the arc.
  std::vector<cplx> arc;
  for (int k = 0; k <= 40; ++k) arc.push_back(std::polar(2.0, pi * k / 40.0));
  std::vector<cplx> low;  // arc below i: from -0.5 to 0.5
  for (int k = 0; k <= 40; ++k) low.push_back(std::polar(0.5, pi - pi * k / 40.0));
  const auto closed_low = geo::close_bubble_trace(low);
  CHECK(geo::winding_number(closed_low, cplx(0.0, 1.0)) == 1);
  const auto closed_high = geo::close_bubble_trace(arc);
  CHECK(geo::winding_number(closed_high, cplx(0.0, 1.0)) == 0);
}

TEST_CASE("Koebe sandwich in log form") {
  const double r = 0.1;
  CHECK(geo::koebe_sandwich_check(r, std::log(1.0 / r), 0.0).pass);
  CHECK(geo::koebe_sandwich_check(r, std::log(4.0 / r), 0.0).pass);
  const auto low = geo::koebe_sandwich_check(r, std::log(1.0 / r) - 0.1, 0.05);
  CHECK_FALSE(low.lower_ok);
  CHECK(low.upper_ok);
  const auto high = geo::koebe_sandwich_check(r, std::log(4.0 / r) + 0.1, 0.05);
  CHECK(high.lower_ok);
  CHECK_FALSE(high.upper_ok);
  CHECK_THROWS_AS(geo::koebe_sandwich_check(1.5, 1.0, 0.0), sleloop::DomainError);
}

TEST_CASE("restriction exponents for the half-disk") {
  for (double rho : {0.1, 0.3, 0.6}) {
    // Phi_D(z) = (z + rho^2/z)/(1 - rho^2) fixes i; in the local parameter
    // u = -1/z at infinity its derivative is 1 - rho^2.
    auto phi = [rho](cplx z) { return (z + rho * rho / z) / (1.0 - rho * rho); };
    CHECK(std::abs(phi(cplx(0.0, 1.0)) - cplx(0.0, 1.0)) < 1e-14);
    const double u = 1e-6;
    const cplx local = -1.0 / phi(cplx(-1.0 / u, 0.0));
    const double deriv = local.real() / u;
    CHECK(geo::halfdisk_restriction_bubble(rho) == doctest::Approx(deriv * deriv).epsilon(1e-9));
  }
  CHECK(geo::halfdisk_restriction_bubble(0.3) == doctest::Approx(0.8281));
  CHECK(geo::halfdisk_restriction_chordal(2.0, 0.3) ==
        doctest::Approx(std::pow(1.0 - 0.0225, 0.625)));
  CHECK(geo::halfdisk_restriction_chordal(-2.0, 0.3) ==
        doctest::Approx(geo::halfdisk_restriction_chordal(2.0, 0.3)));
  CHECK_THROWS_AS(geo::halfdisk_restriction_bubble(1.0), sleloop::DomainError);
  CHECK_THROWS_AS(geo::halfdisk_restriction_chordal(0.2, 0.3), sleloop::DomainError);
}

TEST_CASE("minimum modulus over a polyline includes segment interiors") {
  const std::vector<cplx> poly{{-1.0, 0.5}, {1.0, 0.5}, {1.0, 2.0}};
  CHECK(geo::polyline_min_abs(poly) == doctest::Approx(0.5));
}
