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


// Special functions against frozen high-precision values (30-digit
// evaluations of the defining products), Boost's Jacobi polynomials and
// Boost quadrature.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/jacobi.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sleloop/errors.hpp"
#include "sleloop/specfun.hpp"

namespace sf = sleloop::specfun;
using std::numbers::pi;

TEST_CASE("radius law matches frozen product values") {
  CHECK(sf::radius_cdf_product(0.01) == doctest::Approx(0.86125226499203438).epsilon(1e-14));
  CHECK(sf::radius_cdf_product(0.1) == doctest::Approx(0.40297153088178591).epsilon(1e-14));
  CHECK(sf::radius_cdf_product(0.5) == doctest::Approx(0.0012228426543341691).epsilon(1e-12));
  CHECK(std::fabs(sf::radius_cdf_product(0.9) - 2.6268231378242453e-28) < 1e-16);
  CHECK(sf::radius_cdf_product(std::exp(-3.0)) ==
        doctest::Approx(0.606344920236374).epsilon(1e-13));
}

TEST_CASE("product and series forms agree") {
  for (int k = 1; k <= 99; ++k) {
    const double q = k / 100.0;
    CHECK(std::fabs(sf::radius_cdf_product(q) - sf::radius_cdf_series(q)) <= 1e-12);
  }
}

TEST_CASE("Dedekind eta at i and the modular inversion") {
  CHECK(sf::dedekind_eta(1.0) == doctest::Approx(0.76822542232605666).epsilon(1e-14));
  for (double t : {0.1, 0.3, 0.5, 1.0, 2.0, 7.0, 10.0}) {
    CHECK(std::fabs(sf::dedekind_eta(1.0 / t) - std::sqrt(t) * sf::dedekind_eta(t)) <= 1e-12);
  }
  // e^{pi/4} eta(i)^3 is the law at r >= e^{-3 pi}.
  CHECK(sf::radius_cdf_eta(std::exp(-2.0 * pi)) ==
        doctest::Approx(0.994397704366936).epsilon(1e-13));
}

TEST_CASE("eta form is the product at q^{3/2}") {
  const sf::TruncationPolicy pol{1e-16, 5000};
  for (double q : {0.05, 0.3, 0.6, 0.9}) {
    CHECK(std::fabs(sf::radius_cdf_eta(q, pol) - sf::radius_cdf_product(std::pow(q, 1.5))) <=
          1e-12);
  }
}

TEST_CASE("modular form equals the direct product") {
  for (double a : {0.3, 0.5, 1.0, 2.0, 4.0}) {
    CHECK(std::fabs(sf::radius_cdf_modular(a) - sf::radius_cdf_product(std::exp(-a))) <= 1e-14);
  }
  CHECK(sf::radius_cdf_modular(0.3) == doctest::Approx(3.4737242957818676e-9).epsilon(1e-7));
}

TEST_CASE("survival of the lifetime: series, product and frozen values") {
  CHECK(sf::survival_tau(0.5) == doctest::Approx(0.99754730542101296).epsilon(1e-13));
  CHECK(sf::survival_tau(1.0) == doctest::Approx(0.87164900262237402).epsilon(1e-13));
  CHECK(sf::survival_tau(2.0) == doctest::Approx(0.39365507976362631).epsilon(1e-13));
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    CHECK(std::fabs(sf::survival_tau(t) - sf::survival_tau_product(t)) <= 1e-12);
  }
  // tau <-> r: P(tau > t) = P(r < e^{-3t/2}).
  CHECK(sf::survival_tau(2.0) + sf::radius_cdf_product(std::exp(-3.0)) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Jacobi recurrence matches Boost and the explicit sum") {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {-0.95, -0.4, 0.0, 0.3, 0.8, 1.0}) {
      const double boost_val = boost::math::jacobi(static_cast<unsigned>(n), 1.0, -1.0, x);
      CHECK(sf::jacobi_p(n, x) == doctest::Approx(boost_val).epsilon(1e-12));
      // P_n^{(1,-1)}(x) = sum_s C(n+1, n-s) C(n-1, s) ((x-1)/2)^s ((x+1)/2)^{n-s}
      double sum = 0.0;
      for (int s = 0; s <= n; ++s) {
        const double c1 = std::tgamma(n + 2.0) / (std::tgamma(n - s + 1.0) * std::tgamma(s + 2.0));
        double c2 = 0.0;  // C(n-1, s), zero for s > n-1 except C(-1, 0) = 1
        if (n == 0) {
          c2 = s == 0 ? 1.0 : 0.0;
        } else if (s <= n - 1) {
          c2 = std::tgamma(n + 0.0) / (std::tgamma(s + 1.0) * std::tgamma(n - s + 0.0));
        }
        sum += c1 * c2 * std::pow((x - 1.0) / 2.0, s) * std::pow((x + 1.0) / 2.0, n - s);
      }
      CHECK(sf::jacobi_p(n, x) == doctest::Approx(sum).epsilon(1e-11));
    }
  }
  CHECK_THROWS_AS(sf::jacobi_p(-1, 0.0), sleloop::DomainError);
  CHECK_THROWS_AS(sf::jacobi_p(2, 1.5), sleloop::DomainError);
}

TEST_CASE("eigenfunctions are orthogonal with the stated norms") {
  using boost::math::quadrature::gauss_kronrod;
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 5; ++m) {
      const double ip = gauss_kronrod<double, 61>::integrate(
          [&](double th) { return sf::eigenfunction(n, th) * sf::adjoint_eigenfunction(m, th); },
          0.0, pi, 10, 1e-13);
      if (n == m) {
        CHECK(ip == doctest::Approx(sf::eigen_norm(n)).epsilon(1e-9));
      } else {
        CHECK(std::fabs(ip) < 1e-9);
      }
    }
  }
  CHECK(sf::eigenfunction(3, 0.0) == doctest::Approx(4.0));
}

TEST_CASE("transition density integrates to the survival probability") {
  using boost::math::quadrature::gauss_kronrod;
  for (double t : {0.5, 1.0, 2.0}) {
    const double mass = gauss_kronrod<double, 61>::integrate(
        [&](double thp) { return sf::transition_density(t, 0.0, thp).value; }, 0.0, pi, 10,
        1e-12);
    CHECK(mass == doctest::Approx(sf::survival_tau(t)).epsilon(1e-8));
  }
  const auto d = sf::transition_density(1.0, 0.4, 2.0);
  CHECK(d.converged);
  CHECK_FALSE(d.negative);
  CHECK(d.value > 0.0);
  CHECK_THROWS_AS(sf::transition_density(1.0, -0.1, 1.0), sleloop::DomainError);
}

TEST_CASE("median conformal radius by root finding") {
  // The median of r solves prod(1 - q^{2n/3})^3 = 1/2; the survival series
  // must give 1/2 at tau = -2 ln(q)/3 as well.
  std::uintmax_t iters = 100;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      [](double q) { return sf::radius_cdf_product(q) - 0.5; }, 1e-6, 0.5,
      boost::math::tools::eps_tolerance<double>(50), iters);
  const double q = 0.5 * (lo + hi);
  CHECK(sf::survival_tau(-2.0 * std::log(q) / 3.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sf::radius_cdf_series(q) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("asymptotics at the stated arguments") {
  const double small_q = (1.0 - sf::radius_cdf_product(1e-4)) / sf::asymptotic_small_mass(1e-4);
  CHECK(small_q == doctest::Approx(1.0).epsilon(0.02));
  const double small_a = sf::radius_cdf_product(std::exp(-0.3)) / sf::asymptotic_small_a_tail(0.3);
  CHECK(small_a == doctest::Approx(1.0).epsilon(0.05));
  CHECK(sf::asymptotic_small_mass(1.0) == 3.0);
  CHECK(sf::asymptotic_small_mass(1e-6) == doctest::Approx(3e-4).epsilon(1e-12));
  CHECK(sf::asymptotic_small_a_tail(0.75 * pi * pi) ==
        doctest::Approx(std::pow(4.0 / pi, 1.5) * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("Koebe bounds") {
  const auto b3 = sf::bub_bounds(3.0);
  CHECK(b3.upper == doctest::Approx(sf::radius_cdf_product(std::exp(-3.0))));
  CHECK(b3.lower == doctest::Approx(sf::radius_cdf_product(4.0 * std::exp(-3.0))));
  CHECK(sf::bub_bounds(std::log(4.0)).lower == 0.0);
  const auto far = sf::bub_bounds(60.0);
  CHECK(far.lower == doctest::Approx(1.0));
  CHECK(far.upper == doctest::Approx(1.0));
  for (double a = 0.2; a < 12.0; a += 0.35) {
    const auto b = sf::bub_bounds(a);
    CHECK(b.lower <= b.upper);
  }
  CHECK_THROWS_AS(sf::bub_bounds(0.0), sleloop::DomainError);
}

TEST_CASE("domain and truncation errors") {
  CHECK_THROWS_AS(sf::radius_cdf_product(0.0), sleloop::DomainError);
  CHECK_THROWS_AS(sf::radius_cdf_product(1.0), sleloop::DomainError);
  CHECK_THROWS_AS(sf::dedekind_eta(-1.0), sleloop::DomainError);
  CHECK_THROWS_AS(sf::survival_tau(0.0), sleloop::DomainError);
  CHECK_THROWS_AS(sf::asymptotic_small_mass(1.5), sleloop::DomainError);
  const sf::TruncationPolicy short_policy{1e-16, 1};
  CHECK_THROWS_AS(sf::radius_cdf_product(0.5, short_policy), sleloop::CutoffError);
  CHECK_THROWS_AS((sf::TruncationPolicy{0.0, 10}.validate()), sleloop::DomainError);
}
