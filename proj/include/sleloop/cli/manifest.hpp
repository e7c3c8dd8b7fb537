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

// Run manifest attached to every artifact a command writes. Outputs carry the
// manifest without wall time so identical manifests give identical bytes;
// wall time goes to a separate run.json.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace sleloop::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
  std::string command;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  double wall_time_s = 0.0;

  /// Deterministic part (no wall time).
  nlohmann::ordered_json to_json() const;
  /// Deterministic part plus wall time.
  nlohmann::ordered_json to_json_timed() const;
  /// One comment line "manifest {...}" for CSV/dat headers.
  std::vector<std::string> comment_lines() const;
};

}  // namespace sleloop::cli
