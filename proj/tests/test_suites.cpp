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

#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "nctv/suites.hpp"

using namespace nctv;
using namespace nctv::suites;

namespace {

SuiteConfig make(const std::string& suite) {
  SuiteConfig c;
  c.suite = suite;
  return c;
}

const Check* find(const Report& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("theta parsing") {
  CHECK(ThetaValue::parse("formal").kind == ThetaValue::Kind::formal);
  const auto r = ThetaValue::parse("2/4");
  CHECK(r.kind == ThetaValue::Kind::rational);
  CHECK(r.exact == make_rational(1, 2));
  CHECK(r.text == "1/2");
  CHECK(r.value == 0.5);
  const auto f = ThetaValue::parse("0.37");
  CHECK(f.kind == ThetaValue::Kind::real);
  CHECK(f.value == 0.37);
  CHECK(f.text == "0.37");
  CHECK(ThetaValue::real_value(1 / std::sqrt(2.0)).text == "0.7071067811865475");
  for (const char* bad : {"", "abc", "0.3x", "1/0", "nan", "inf"}) CHECK_THROWS_AS(ThetaValue::parse(bad), ConfigError);
}

TEST_CASE("group selector") {
  CHECK(parse_group_selector("all") == std::vector<int>{2, 3, 4, 6});
  CHECK(parse_group_selector("Z6") == std::vector<int>{6});
  CHECK(parse_group_selector("6,z2,Z6") == std::vector<int>{2, 6});
  CHECK_THROWS_AS(parse_group_selector("Z5"), ConfigError);
  CHECK_THROWS_AS(parse_group_selector(""), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(make("nope").validate(), ConfigError);
  auto w = make("walters");
  w.thetas = {ThetaValue::parse("formal")};
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.thetas = {ThetaValue::parse("1.5")};
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.thetas = {ThetaValue::parse("0")};
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.thetas = {ThetaValue::parse("1")};
  CHECK_NOTHROW(w.validate());
  w.grid_n = 3000;
  CHECK_THROWS_AS(w.validate(), ConfigError);
  w.grid_n = 2048;
  w.grid_l = 4;
  CHECK_THROWS_AS(w.validate(), ConfigError);
  auto s = make("symbolic");
  s.thetas = {ThetaValue::parse("0.5")};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.thetas = {ThetaValue::parse("1/2")};
  CHECK_NOTHROW(s.validate());
  s.jobs = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  auto k = make("ktheory");
  k.thetas = {ThetaValue::parse("1/2")};
  CHECK_THROWS_AS(k.validate(), ConfigError);
  auto t = make("trace-points");
  CHECK_THROWS_AS(t.validate(), ConfigError);  // four groups
  t.groups = {2};
  CHECK_NOTHROW(t.validate());
  t.thetas = {ThetaValue::parse("1")};
  CHECK_THROWS_AS(t.validate(), ConfigError);
  auto tol = make("ktheory");
  tol.tol = -1.0;
  CHECK_THROWS_AS(tol.validate(), ConfigError);
  CHECK_THROWS_AS(run_suite(make("nope")), ConfigError);
}

TEST_CASE("default jobs from the environment") {
  ::setenv("NCTV_DEFAULT_JOBS", "3", 1);
  CHECK(default_jobs() == 3);
  ::setenv("NCTV_DEFAULT_JOBS", "zero", 1);
  CHECK(default_jobs() == 1);
  ::unsetenv("NCTV_DEFAULT_JOBS");
  CHECK(default_jobs() == 1);
}

TEST_CASE("symbolic suite for Z6") {
  auto c = make("symbolic");
  c.groups = {6};
  const Report r = run_suite(c);
  CHECK(r.passed());
  const Check* p0 = find(r, "symbolic/Z6/theta=formal/projection/p0");
  REQUIRE(p0 != nullptr);
  CHECK(p0->measured["trace"] == "1/6");
  CHECK(p0->measured["idempotent"] == true);
  const Check* cocycle = find(r, "symbolic/Z6/theta=formal/cocycle/identity");
  REQUIRE(cocycle != nullptr);
  CHECK(cocycle->measured["samples"] == 1000);
  CHECK(cocycle->passed);
}

TEST_CASE("symbolic suite for Z3 fails only on the order-3 word u^2t") {
  auto c = make("symbolic");
  c.groups = {3};
  const Report r = run_suite(c);
  CHECK_FALSE(r.passed());
  std::vector<std::string> failed;
  for (const auto& chk : r.checks) {
    if (!chk.passed) failed.push_back(chk.id);
    if (chk.informational) CHECK(chk.passed);
  }
  CHECK(failed == std::vector<std::string>{"symbolic/Z3/theta=formal/projection/r0",
                                           "symbolic/Z3/theta=formal/projection/r1",
                                           "symbolic/Z3/theta=formal/unitary/U^2T"});
  // at theta = 1/2 the word has order 3 and the projections are genuine
  c.thetas = {ThetaValue::parse("1/2")};
  CHECK(run_suite(c).passed());
}

TEST_CASE("ktheory suite") {
  const Report r = run_suite(make("ktheory"));
  CHECK(r.passed());
  const Check* z4 = find(r, "ktheory/Z4/ranks");
  REQUIRE(z4 != nullptr);
  CHECK(z4->measured == json{{"k0", 9}, {"k1", 0}});
  CHECK(find(r, "ktheory/Z6/maximal-subgroups")->measured["orders"] == json{6, 3, 2});
  CHECK(find(r, "ktheory/iso/20") != nullptr);
  CHECK(find(r, "ktheory/iso/21") == nullptr);
  CHECK(find(r, "ktheory/highdim/d=6/flip")->measured == json{{"k0", 96}, {"k1", 0}});
}

TEST_CASE("fiber suite") {
  auto c = make("fiber");
  c.groups = {2, 4};
  const Report r = run_suite(c);
  CHECK(r.passed());
  CHECK_FALSE(r.checks.empty());
}

TEST_CASE("walters suite on a coarse grid") {
  auto c = make("walters");
  c.groups = {4, 6};
  c.thetas = {ThetaValue::parse("0.5")};
  c.grid_n = 1024;
  const Report r = run_suite(c);
  CHECK(r.passed());
  CHECK(find(r, "walters/theta=0.5/Z6/inner-identity") != nullptr);
  CHECK(find(r, "walters/theta=0.5/Z3/order") == nullptr);
  CHECK(find(r, "walters/theta=0.5/Z2-equals-Z4-squared") != nullptr);
  // a tolerance override applies to every numeric check
  c.tol = 1e-30;
  CHECK_FALSE(run_suite(c).passed());
}

TEST_CASE("trace points") {
  auto c = make("trace-points");
  c.groups = {2};
  c.thetas = {ThetaValue::parse("0.6180339887498949")};
  c.bound = 2;
  const Report r = run_suite(c);
  CHECK(r.passed());
  auto has = [&](long a, long b, double v) {
    for (const auto& p : r.points) {
      if (p.a == a && p.b == b) return std::abs(p.value - v) < 1e-15;
    }
    return false;
  };
  CHECK(has(0, 0, 0));
  CHECK(has(1, 0, 0.5));
  CHECK(has(0, 1, 0.30901699437494745));
  const std::string csv = render_csv(r.to_json());
  CHECK(csv.rfind("a,b,value\n0,0,", 0) == 0);

  c.groups = {6};
  c.thetas = {ThetaValue::parse("0.3")};
  c.bound = 1;
  const Report z6 = run_suite(c);
  std::vector<std::pair<long, long>> ab;
  for (const auto& p : z6.points) ab.emplace_back(p.a, p.b);
  CHECK(ab == std::vector<std::pair<long, long>>{{0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}});
}

TEST_CASE("report serialization") {
  auto c = make("ktheory");
  c.groups = {2};
  const json j = run_suite(c).to_json();
  CHECK(j["schema"] == 1);
  CHECK(j["suite"] == "ktheory");
  CHECK(j["status"] == "pass");
  CHECK(j["config"]["groups"] == json{"Z2"});
  CHECK_FALSE(j.contains("wall_seconds"));
  CHECK(j["summary"]["checks"] == j["checks"].size());
  for (const auto& chk : j["checks"]) {
    for (const char* key : {"id", "anchor", "status", "measured", "expected", "tolerance"}) CHECK(chk.contains(key));
  }
  const std::string md = render_markdown(j);
  CHECK(md.find("Status: **pass**") != std::string::npos);
  CHECK(md.find("| ktheory/Z2/ranks |") != std::string::npos);
  const std::string csv = render_csv(j);
  CHECK(csv.rfind("id,anchor,status,informational,measured,expected,tolerance\n", 0) == 0);
  CHECK(csv.find("\"{\"\"k0\"\":6,\"\"k1\"\":0}\"") != std::string::npos);
}

TEST_CASE("order-stable aggregation across job counts") {
  for (const char* suite : {"symbolic", "ktheory", "fiber"}) {
    auto c = make(suite);
    c.jobs = 1;
    json a = run_suite(c).to_json();
    c.jobs = 4;
    json b = run_suite(c).to_json();
    a["config"].erase("jobs");
    b["config"].erase("jobs");
    CHECK_MESSAGE(render_json(a) == render_json(b), suite);
    c.jobs = 4;
    CHECK(render_json(run_suite(c).to_json()) == render_json(run_suite(c).to_json()));
  }
}
