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

#include "sleloop/io.hpp"

#include <cmath>
#include <cstdio>

namespace sleloop::io {
namespace {

void emit_comments(std::ostream& os, const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << '\n';
}

void emit_rows(std::ostream& os, const std::vector<Row>& rows, char sep) {
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) os << sep;
      os << format_number(row[k]);
    }
    os << '\n';
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<Row>& rows, const std::vector<std::string>& comments) {
  emit_comments(os, comments);
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  emit_rows(os, rows, ',');
}

void write_dat(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<Row>& rows, const std::vector<std::string>& comments) {
  emit_comments(os, comments);
  os << "#";
  for (const auto& h : header) os << ' ' << h;
  os << '\n';
  emit_rows(os, rows, ' ');
}

void write_path_csv(std::ostream& os, const ThetaPath& path,
                    const std::vector<std::string>& comments) {
  std::vector<Row> rows;
  rows.reserve(path.values.size());
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    rows.push_back({path.time(k), path.values[k], std::acos(path.values[k])});
  }
  write_csv(os, {"s", "v", "theta"}, rows, comments);
}

void write_driver_csv(std::ostream& os, const DrivingPath& driver,
                      const std::vector<std::string>& comments) {
  std::vector<Row> rows;
  rows.reserve(driver.size());
  for (std::size_t k = 0; k < driver.size(); ++k) {
    rows.push_back({driver.times[k], driver.values[k]});
  }
  write_csv(os, {"t_cap", "U"}, rows, comments);
}

void write_trace_csv(std::ostream& os, const CurveTrace& trace,
                     const std::vector<std::string>& comments) {
  std::vector<Row> rows;
  rows.reserve(trace.points.size());
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    rows.push_back({trace.times[k], trace.points[k].real(), trace.points[k].imag()});
  }
  write_csv(os, {"t", "re", "im"}, rows, comments);
}

}  // namespace sleloop::io
