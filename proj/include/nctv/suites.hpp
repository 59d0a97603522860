// Copyright 2026 The nctv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Verification suites behind the nctv command line tool. A suite turns a
// SuiteConfig into a Report: a flat, ordered list of check records plus an
// echo of the configuration. Markdown and CSV output are rendered from the
// JSON form of the report.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "nctv/ktheory.hpp"
#include "nctv/rational.hpp"

namespace nctv::suites {

using json = nlohmann::ordered_json;

/// Raised for unknown suite names and invalid configuration values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One --theta value: "formal", an exact fraction "p/q", or a float.
struct ThetaValue {
  enum class Kind { formal, rational, real };
  Kind kind = Kind::formal;
  Rational exact;      ///< set for rational
  double value = 0.0;  ///< set for rational and real
  std::string text;

  static ThetaValue parse(const std::string& text);
  static ThetaValue real_value(double v);
};

/// "all", or a comma separated list of orders with optional Z prefix: "6", "Z2,Z4".
std::vector<int> parse_group_selector(const std::string& text);

struct SuiteConfig {
  std::string suite;
  std::vector<int> groups{2, 3, 4, 6};
  std::vector<ThetaValue> thetas;  ///< empty: the suite default
  std::size_t grid_n = 2048;
  double grid_l = 12.0;
  std::optional<double> tol;  ///< overrides every numeric tolerance
  int jobs = 1;
  long bound = 2;  ///< trace-points coefficient bound

  /// Thetas after applying the suite default.
  std::vector<ThetaValue> effective_thetas() const;
  /// Throws ConfigError.
  void validate() const;
  json to_json() const;
};

/// Suite names in a fixed order.
const std::vector<std::string>& suite_names();

/// NCTV_DEFAULT_JOBS if set to a positive integer, else 1.
int default_jobs();

struct Check {
  std::string id;
  std::string anchor;
  bool passed = false;
  bool informational = false;  ///< reported, not part of the overall status
  json measured;
  json expected;
  json tolerance;  ///< null for exact checks
};

struct Report {
  SuiteConfig config;
  std::vector<Check> checks;
  std::vector<ktheory::TracePoint> points;  ///< trace-points only
  double wall_seconds = 0.0;                ///< not serialized

  bool passed() const;
  json to_json() const;
};

Report run_suite(const SuiteConfig& config);

std::string render_json(const json& report);
std::string render_markdown(const json& report);
/// Trace points as a,b,value rows if present, otherwise the check table.
std::string render_csv(const json& report);

}  // namespace nctv::suites
