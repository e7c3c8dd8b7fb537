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


// Support code: interval estimates, KS distance, seeding, the worker pool
// and number formatting.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sleloop/errors.hpp"
#include "sleloop/io.hpp"
#include "sleloop/parallel.hpp"
#include "sleloop/rng.hpp"
#include "sleloop/stats.hpp"

namespace st = sleloop::stats;

TEST_CASE("Wilson intervals") {
  const auto a = st::wilson(5, 10);
  CHECK(a.value == 0.5);
  CHECK(a.ci_low == doctest::Approx(0.236593090512564).epsilon(1e-12));
  CHECK(a.ci_high == doctest::Approx(0.7634069094874361).epsilon(1e-12));
  const auto b = st::wilson(81, 100);
  CHECK(b.ci_low == doctest::Approx(0.7222115462093562).epsilon(1e-12));
  CHECK(b.ci_high == doctest::Approx(0.8748524849023126).epsilon(1e-12));
  const auto c = st::wilson(0, 20);
  CHECK(c.ci_low == 0.0);
  CHECK(c.ci_high == doctest::Approx(0.16112515805281938).epsilon(1e-12));
  CHECK(c.contains(0.0));
  CHECK_THROWS_AS(st::wilson(0, 0), sleloop::EmptySampleError);
  CHECK_THROWS_AS(st::wilson(3, 2), sleloop::DomainError);
}

TEST_CASE("mean interval and binomial sigma") {
  const auto m = st::mean_interval({1.0, 2.0, 3.0, 4.0});
  CHECK(m.value == 2.5);
  const double half = st::kZ95 * std::sqrt(5.0 / 3.0) / 2.0;
  CHECK(m.ci_high - m.value == doctest::Approx(half));
  CHECK(st::binomial_sigma(0.5, 100) == doctest::Approx(0.05));
  CHECK_THROWS_AS(st::mean_interval({}), sleloop::EmptySampleError);
}

TEST_CASE("KS distance against a uniform law") {
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(st::ks_distance({0.1, 0.5, 0.9}, uniform) == doctest::Approx(0.9 - 2.0 / 3.0));
  CHECK(st::ks_distance({0.5}, uniform) == doctest::Approx(0.5));
  CHECK_THROWS_AS(st::ks_distance({}, uniform), sleloop::EmptySampleError);
}

TEST_CASE("path generators are keyed by seed and index") {
  auto a = sleloop::path_rng(1, 0);
  auto b = sleloop::path_rng(1, 0);
  auto c = sleloop::path_rng(1, 1);
  auto d = sleloop::path_rng(2, 0);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
  // reference output of the splitmix64 finaliser
  CHECK(sleloop::splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("parallel_for visits every index once and forwards exceptions") {
  for (unsigned workers : {1u, 4u}) {
    std::vector<std::atomic<int>> seen(1000);
    sleloop::parallel_for(seen.size(), [&](std::size_t i) { seen[i]++; }, workers);
    for (const auto& s : seen) CHECK(s.load() == 1);
    CHECK_THROWS_AS(sleloop::parallel_for(
                        100,
                        [](std::size_t i) {
                          if (i == 37) throw std::runtime_error("boom");
                        },
                        workers),
                    std::runtime_error);
  }
}

TEST_CASE("numbers round-trip through the text writers") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) {
    CHECK(std::stod(sleloop::io::format_number(x)) == x);
  }
  CHECK(sleloop::io::format_number(std::nan("")) == "nan");
  std::ostringstream os;
  sleloop::io::write_csv(os, {"a", "b"}, {{1.0, 0.5}}, {"note"});
  CHECK(os.str() == "# note\na,b\n1,0.5\n");
}
