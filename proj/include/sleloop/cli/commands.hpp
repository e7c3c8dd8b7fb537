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

// Experiment commands behind the sleloop tool. Each command runs one
// experiment, writes its tables (CSV and gnuplot .dat) into the output
// directory and returns a JSON report with a pass flag for --strict.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sleloop/cli/manifest.hpp"

namespace sleloop::cli {

struct CommonOptions {
  std::size_t paths = 0;
  double dt = 0.0;
  std::uint64_t seed = 1;
  double theta_cut = 0.1;
  std::filesystem::path out = ".";
};

struct Report {
  RunManifest manifest;
  nlohmann::ordered_json body = nlohmann::ordered_json::object();
  bool pass = true;  // every threshold of the command held

  nlohmann::ordered_json to_json() const;
};

/// Empirical law of r = exp(-3 tau / 2) against the product formula.
Report cmd_radius_cdf(const CommonOptions& opt);
/// Absorption frequency of the unconditioned angle process per start x.
Report cmd_schramm(const CommonOptions& opt, const std::vector<double>& xs);
/// Half-disk avoidance of bubbles and of chordal curves from each x.
Report cmd_restriction(const CommonOptions& opt, double rho,
                       const std::vector<double>& xs);
/// Loop mass for U_b against the analytic envelopes.
Report cmd_werner(const CommonOptions& opt, const std::vector<double>& bs);
/// Deterministic identity and bounds tables.
Report cmd_tables(const CommonOptions& opt);

/// Writes <command>.json (deterministic) and <command>.run.json (with wall
/// time) into opt.out.
void write_report(const Report& report, const std::filesystem::path& out,
                  double wall_time_s);

}  // namespace sleloop::cli
