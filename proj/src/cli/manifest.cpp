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


#include "sleloop/cli/manifest.hpp"

namespace sleloop::cli {

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["params"] = params;
  j["seed"] = seed;
  j["version"] = version;
  return j;
}

nlohmann::ordered_json RunManifest::to_json_timed() const {
  auto j = to_json();
  j["wall_time_s"] = wall_time_s;
  return j;
}

std::vector<std::string> RunManifest::comment_lines() const {
  return {"manifest " + to_json().dump()};
}

}  // namespace sleloop::cli
