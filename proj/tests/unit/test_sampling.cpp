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


// Bubble and chordal samplers: half-disk tracking, reproducibility and
// small-sample agreement with the restriction formulas.

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "sleloop/errors.hpp"
#include "sleloop/geometry.hpp"
#include "sleloop/loewner.hpp"
#include "sleloop/sampling.hpp"
#include "sleloop/stats.hpp"

using sleloop::cplx;
namespace sp = sleloop::sampling;

TEST_CASE("arc tracker follows the slit maps and detects crossings") {
  sp::ArcTracker arc(0.3, 33, 0.25, 4096);
  REQUIRE(arc.size() == 33);
  CHECK(std::abs(arc.images().front() - cplx(0.3, 0.0)) < 1e-15);
  CHECK(std::abs(arc.images().back() - cplx(-0.3, 0.0)) < 1e-15);
  CHECK(arc.distance_to(1.0) == doctest::Approx(0.7));
  CHECK(arc.crossing_height(0.0) == doctest::Approx(0.3).epsilon(1e-2));

  // a slit well to the right moves the arc images by the exact slit map
  const auto before = arc.images();
  arc.step(1.0, 0.01);
  CHECK_FALSE(arc.crossed());
  CHECK(std::abs(arc.images()[16] - sleloop::loewner::slit_forward(before[16], 1.0, 0.01)) < 1e-14);

  const auto saved = arc.save();
  // a slit based under the arc enters the half-disk
  arc.step(0.0, 1e-6);
  CHECK(arc.crossed());
  arc.restore(saved);
  CHECK_FALSE(arc.crossed());

  // a tall slit next to the arc stays outside
  sp::ArcTracker other(0.3, 33, 0.25, 4096);
  other.step(0.31, 1.0);
  CHECK_FALSE(other.crossed());
  CHECK_THROWS_AS(sp::ArcTracker(0.0, 33, 0.25, 10), sleloop::DomainError);
}

TEST_CASE("bubbles are reproducible and satisfy the Koebe sandwich") {
  sp::BubbleOptions opt;
  const auto a = sp::sample_bubble(opt, 7, 3);
  const auto b = sp::sample_bubble(opt, 7, 3);
  CHECK(a.sample.r == b.sample.r);
  CHECK(a.sample.a_star == b.sample.a_star);
  CHECK(a.hits_halfdisk == b.hits_halfdisk);

  int good = 0;
  const int n = 40;
  for (int i = 0; i < n; ++i) {
    const auto s = sp::sample_bubble(opt, 11, i);
    CHECK(s.sample.r > 0.0);
    CHECK(s.sample.r < 1.0);
    CHECK(s.s_end >= s.s_start);
    if (sleloop::geometry::koebe_sandwich_check(s.sample.r, s.sample.a_star, 0.05).pass &&
        std::abs(s.sample.winding) == 1) {
      ++good;
    }
    // the crossing flag agrees with the sampled trace up to the arc radius
    if (!s.hits_halfdisk) CHECK(s.trace_min_abs > 0.3 * 0.9);
  }
  CHECK(good >= n - 2);
}

TEST_CASE("bubble options") {
  sp::BubbleOptions opt;
  opt.with_geometry = false;
  const auto s = sp::sample_bubble(opt, 7, 3);
  sp::BubbleOptions full;
  CHECK(s.sample.r == sp::sample_bubble(full, 7, 3).sample.r);
  CHECK(s.sample.a_star == 0.0);
  opt.keep_trace = true;
  CHECK_THROWS_AS(sp::sample_bubble(opt, 7, 3), sleloop::DomainError);

  sp::BubbleOptions keep;
  keep.keep_trace = true;
  const auto t = sp::sample_bubble(keep, 7, 3);
  REQUIRE(t.sample.trace.has_value());
  CHECK(t.driver.size() == t.steps + 1);
  t.driver.validate();
  CHECK(sleloop::geometry::critical_modulus(*t.sample.trace) == t.sample.a_star);

  sp::BubbleOptions bad;
  bad.dt = 0.0;
  CHECK_THROWS_AS(sp::sample_bubble(bad, 1, 0), sleloop::DomainError);
}

TEST_CASE("chordal avoidance of a half-disk, small sample") {
  sp::ChordalHitOptions opt;
  const std::size_t n = 300;
  const auto est = sp::chordal_avoidance(n, opt, 5);
  const double p = sleloop::geometry::halfdisk_restriction_chordal(opt.x, opt.rho);
  CHECK(std::fabs(est.value - p) <= 4.0 * sleloop::stats::binomial_sigma(p, n));
  CHECK(sp::chordal_hits_halfdisk(opt, 5, 17) == sp::chordal_hits_halfdisk(opt, 5, 17));
  // starting right next to the disk almost always hits it
  opt.x = 0.3001;
  CHECK(sp::chordal_avoidance(50, opt, 5).value < 0.2);
  opt.x = 0.2;
  CHECK_THROWS_AS(sp::chordal_hits_halfdisk(opt, 5, 0), sleloop::DomainError);
}

TEST_CASE("bubble half-disk avoidance, small sample") {
  sp::BubbleOptions opt;
  opt.with_geometry = false;
  const std::size_t n = 200;
  std::size_t avoid = 0;
  for (std::size_t i = 0; i < n; ++i) avoid += !sp::sample_bubble(opt, 23, i).hits_halfdisk;
  const double p = sleloop::geometry::halfdisk_restriction_bubble(opt.rho);
  CHECK(std::fabs(avoid / double(n) - p) <= 4.0 * sleloop::stats::binomial_sigma(p, n));
}
