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

// nctv: runs a verification suite and writes its report.
//
// Exit status: 0 if every check passes, 1 if a check fails, 2 for usage and
// configuration errors.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nctv/suites.hpp"
#include "nctv/walters.hpp"

namespace {

constexpr int kUsage = 2;

int write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "nctv: cannot write " << path << "\n";
    return kUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace nctv::suites;
  CLI::App app{"Exact and numerical checks for crossed products of rotation algebras by finite cyclic groups."};
  app.set_version_flag("--version", "nctv 1.0.0");

  std::string suite, group = "all", format = "json", out_path, samples_path;
  std::vector<std::string> thetas;
  SuiteConfig config;
  double tol = 0;
  config.jobs = default_jobs();

  app.add_option("--suite", suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  app.add_option("--group", group, "Groups: all, or a list such as Z2,Z6")->capture_default_str();
  app.add_option("--theta", thetas, "theta value: formal, p/q or a float (repeatable)")->take_all();
  app.add_option("--grid-n", config.grid_n, "Grid points for the walters suite")->capture_default_str();
  app.add_option("--grid-l", config.grid_l, "Grid half width for the walters suite")->capture_default_str();
  auto* tol_opt = app.add_option("--tol", tol, "Override every numeric tolerance");
  app.add_option("--jobs", config.jobs, "Parallel tasks (default from NCTV_DEFAULT_JOBS, else 1)")
      ->capture_default_str();
  app.add_option("--bound", config.bound, "Coefficient bound for trace-points")->capture_default_str();
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "md", "csv"}))
      ->capture_default_str();
  app.add_option("--samples", samples_path, "walters: write the sampled test vector at the first theta as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    config.suite = suite;
    config.groups = parse_group_selector(group);
    for (const auto& t : thetas) config.thetas.push_back(ThetaValue::parse(t));
    if (*tol_opt) config.tol = tol;
    config.validate();
    if (!samples_path.empty() && suite != "walters") throw ConfigError("--samples applies to the walters suite only");
  } catch (const ConfigError& e) {
    std::cerr << "nctv: " << e.what() << "\n";
    return kUsage;
  }

  Report report;
  try {
    report = run_suite(config);
  } catch (const ConfigError& e) {
    std::cerr << "nctv: " << e.what() << "\n";
    return kUsage;
  }

  if (!samples_path.empty()) {
    const auto grid = nctv::walters::Grid::make(config.grid_n, config.grid_l);
    const auto xi = nctv::walters::sample_gaussian(grid, config.effective_thetas().front().value, 0.2, 1);
    std::ofstream s(samples_path, std::ios::binary);
    nctv::walters::write_samples_csv(s, xi);
    if (!s) {
      std::cerr << "nctv: cannot write " << samples_path << "\n";
      return kUsage;
    }
  }

  const json j = report.to_json();
  const std::string text = format == "md" ? render_markdown(j) : format == "csv" ? render_csv(j) : render_json(j);
  if (const int rc = write_output(out_path, text); rc != 0) return rc;
  std::cerr << "nctv: " << suite << " " << j.at("status").get<std::string>() << " ("
            << j.at("summary").at("checks") << " checks, " << report.wall_seconds << " s)\n";
  return report.passed() ? 0 : 1;
}
