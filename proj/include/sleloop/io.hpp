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

// Plain-text writers for paths, drivers, traces and numeric tables. Every
// writer takes optional comment lines (e.g. a run manifest) emitted first
// with a "# " prefix. Numbers are printed with %.17g so files round-trip.

#include <ostream>
#include <string>
#include <vector>

#include "sleloop/diffusion.hpp"
#include "sleloop/loewner.hpp"

namespace sleloop::io {

using Row = std::vector<double>;

std::string format_number(double x);

/// CSV with a header row.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<Row>& rows,
               const std::vector<std::string>& comments = {});

/// Whitespace-separated columns for gnuplot; the header goes in a comment.
void write_dat(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<Row>& rows,
               const std::vector<std::string>& comments = {});

/// Columns s, v, theta.
void write_path_csv(std::ostream& os, const ThetaPath& path,
                    const std::vector<std::string>& comments = {});
/// Columns t_cap, U.
void write_driver_csv(std::ostream& os, const DrivingPath& driver,
                      const std::vector<std::string>& comments = {});
/// Columns t, re, im.
void write_trace_csv(std::ostream& os, const CurveTrace& trace,
                     const std::vector<std::string>& comments = {});

}  // namespace sleloop::io
