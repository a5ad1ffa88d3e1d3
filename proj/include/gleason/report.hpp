// Copyright 2026 The Gleason Toolkit Authors
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

#ifndef GLEASON_REPORT_HPP
#define GLEASON_REPORT_HPP

#include <cmath>
#include <string>

#include <json.hpp>

#include "gleason/hilbert.hpp"

namespace gleason {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// One verdict in the shared report schema
/// {check, parameters, max_residual, tolerance, pass, samples}; anything
/// check-specific goes under "details".
struct CheckReport {
  std::string check;
  Json parameters = Json::object();
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  long long samples = 0;
  Json details = Json::object();

  Json to_json() const {
    Json j;
    j["check"] = check;
    j["parameters"] = parameters;
    j["max_residual"] = finite_or_string(max_residual);
    j["tolerance"] = tolerance;
    j["pass"] = pass;
    j["samples"] = samples;
    if (!details.empty()) j["details"] = details;
    return j;
  }

  /// JSON has no infinities; they are written as strings.
  static Json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
  }
};

/// Row-major [[re, im], ...] rows of a complex matrix.
inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gleason

#endif  // GLEASON_REPORT_HPP
