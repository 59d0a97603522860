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

#include "nctv/suites.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "nctv/grp.hpp"
#include "nctv/tga.hpp"
#include "nctv/walters.hpp"

namespace nctv::suites {

namespace {

using grp::FiniteGroupTag;
using Task = std::function<std::vector<Check>()>;

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string group_name(int k) { return "Z" + std::to_string(k); }

// Runs the tasks on up to `jobs` threads; results keep task order.
std::vector<Check> run_tasks(const std::vector<Task>& tasks, int jobs) {
  std::vector<std::vector<Check>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), tasks.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Check> out;
  for (auto& r : results) {
    for (auto& c : r) out.push_back(std::move(c));
  }
  return out;
}

Check exact_check(std::string id, std::string anchor, json measured, json expected) {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.passed = measured == expected;
  c.measured = std::move(measured);
  c.expected = std::move(expected);
  return c;
}

// measured <= tolerance
Check bound_check(std::string id, std::string anchor, double measured, double tolerance) {
  Check c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.passed = std::isfinite(measured) && measured < tolerance;
  c.measured = measured;
  c.expected = 0.0;
  c.tolerance = tolerance;
  return c;
}

// ---------------------------------------------------------------------------
// symbolic

grp::GroupElement random_element(const FiniteGroupTag& f, std::mt19937_64& rng) {
  grp::GroupElement g;
  g.translation = {static_cast<grp::Int>(rng() % 11) - 5, static_cast<grp::Int>(rng() % 11) - 5};
  g.point = f.power(static_cast<int>(rng() % static_cast<std::uint64_t>(f.order())));
  return g;
}

std::vector<Check> cocycle_checks(int k, const tga::CocycleSpec& omega, const std::string& prefix) {
  constexpr int samples = 1000;
  const auto f = FiniteGroupTag::cyclic(k);
  std::mt19937_64 rng(0x6e637476ULL + static_cast<std::uint64_t>(k));
  long identity_failures = 0, invariance_failures = 0;
  for (int i = 0; i < samples; ++i) {
    const auto r = random_element(f, rng), s = random_element(f, rng), t = random_element(f, rng);
    if (!(omega.omega(s, t) * omega.omega(r, grp::group_mul(s, t)) ==
          omega.omega(r, s) * omega.omega(grp::group_mul(r, s), t))) {
      ++identity_failures;
    }
    const auto& n = f.power(i % k);
    if (!(omega.omega(n * r.translation, n * s.translation) == omega.omega(r.translation, s.translation))) {
      ++invariance_failures;
    }
  }
  return {exact_check(prefix + "cocycle/identity", "cocycle identity on random triples",
                      json{{"samples", samples}, {"failures", identity_failures}},
                      json{{"samples", samples}, {"failures", 0}}),
          exact_check(prefix + "cocycle/invariance", "cocycle invariance under the point group",
                      json{{"samples", samples}, {"failures", invariance_failures}},
                      json{{"samples", samples}, {"failures", 0}})};
}

std::string trace_text(const tga::PhaseScalar& c) {
  Rational r;
  return c.as_rational(r) ? to_string(r) : c.render();
}

json projection_record(bool self_adjoint, bool idempotent, const std::string& trace) {
  return json{{"self_adjoint", self_adjoint}, {"idempotent", idempotent}, {"trace", trace}};
}

std::vector<Check> projection_checks(const std::vector<tga::ProjectionSpec>& family, const tga::AlgebraPtr& alg,
                                     const std::optional<Rational>& value, const std::string& prefix,
                                     const std::string& anchor, bool informational) {
  std::vector<Check> out;
  for (auto p : family) {
    if (value) p.base = p.base.specialized(*value);
    const auto e = tga::build(p, alg);
    const bool sa = e == e.adjoint();
    const bool id = e * e == e;
    Check c = exact_check(prefix + "projection/" + p.name, anchor, projection_record(sa, id, trace_text(e.trace())),
                          projection_record(true, true, to_string(p.expected_trace)));
    c.informational = informational;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> unitary_checks(const std::vector<tga::NamedUnitary>& unitaries, const tga::AlgebraPtr& alg,
                                  const std::optional<Rational>& value, const std::string& prefix,
                                  const std::string& anchor, bool informational) {
  std::vector<Check> out;
  for (const auto& u : unitaries) {
    const tga::Word w = value ? u.word.specialized(*value) : u.word;
    int order = 0;
    try {
      order = tga::unitary_order(tga::evaluate_word(w, alg));
    } catch (const std::domain_error&) {
      order = 0;
    }
    Check c = exact_check(prefix + "unitary/" + u.name, anchor, order, u.expected_order);
    c.informational = informational;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> symbolic_group(int k, const ThetaValue& theta) {
  const std::optional<Rational> value =
      theta.kind == ThetaValue::Kind::rational ? std::optional<Rational>(theta.exact) : std::nullopt;
  const auto cocycle = value ? tga::CocycleSpec::rational(*value) : tga::CocycleSpec::formal();
  const auto alg = tga::make_algebra(FiniteGroupTag::cyclic(k), cocycle);
  const std::string prefix = "symbolic/" + group_name(k) + "/theta=" + theta.text + "/";
  std::vector<Check> out;
  for (const auto& r : tga::check_generator_relations(alg)) {
    out.push_back(exact_check(prefix + "relation/" + r.name, "generator relations", r.holds ? "0" : r.residual, "0"));
  }
  for (auto& c : projection_checks(tga::projection_family(k), alg, value, prefix, "generator projections", false)) {
    out.push_back(std::move(c));
  }
  for (auto& c : unitary_checks(tga::corrected_unitaries(k), alg, value, prefix, "corrected unitaries", false)) {
    out.push_back(std::move(c));
  }
  const std::string amended = prefix + "amended/";
  for (auto& c : unitary_checks(tga::amended_unitaries(k), alg, value, amended, "amended order-3 unitary", true)) {
    out.push_back(std::move(c));
  }
  for (auto& c : projection_checks(tga::amended_projections(k), alg, value, amended,
                                   "projections on the amended unitary", true)) {
    out.push_back(std::move(c));
  }
  for (auto& c : cocycle_checks(k, cocycle, prefix)) out.push_back(std::move(c));
  return out;
}

std::vector<Task> symbolic_tasks(const SuiteConfig& config) {
  std::vector<Task> tasks;
  for (const auto& theta : config.effective_thetas()) {
    for (int k : config.groups) tasks.emplace_back([k, theta] { return symbolic_group(k, theta); });
  }
  return tasks;
}

// ---------------------------------------------------------------------------
// ktheory

const std::map<int, std::vector<int>>& expected_subgroup_orders() {
  static const std::map<int, std::vector<int>> table{
      {2, {2, 2, 2, 2}}, {3, {3, 3, 3}}, {4, {4, 4, 2}}, {6, {6, 3, 2}}};
  return table;
}

const std::map<int, long>& expected_k0() {
  static const std::map<int, long> table{{2, 6}, {3, 8}, {4, 9}, {6, 10}};
  return table;
}

json ranks_json(const ktheory::KRanks& r) { return json{{"k0", r.k0}, {"k1", r.k1}}; }

std::vector<Check> ktheory_group(int k) {
  const auto f = FiniteGroupTag::cyclic(k);
  const std::string prefix = "ktheory/" + group_name(k) + "/";
  std::vector<Check> out;
  out.push_back(exact_check(prefix + "ranks", "K-theory ranks from torsion classes", ranks_json(ktheory::k_ranks(f)),
                            ranks_json({expected_k0().at(k), 0})));
  json orders = json::array(), labels = json::array();
  for (const auto& s : grp::maximal_finite_subgroups(f)) {
    orders.push_back(s.order);
    labels.push_back(s.generator.label);
  }
  Check sub = exact_check(prefix + "maximal-subgroups", "maximal finite subgroup classes", orders,
                          expected_subgroup_orders().at(k));
  sub.measured = json{{"orders", orders}, {"generators", labels}};
  sub.expected = json{{"orders", expected_subgroup_orders().at(k)}, {"generators", labels}};
  out.push_back(std::move(sub));
  const Rational inv = make_rational(1, k);
  const auto expected_image = ktheory::TraceSubgroup::generated_by({{inv, Rational(0)}, {Rational(0), inv}});
  const auto image = ktheory::trace_image(k);
  Check tr = exact_check(prefix + "trace-image", "trace image of K0", image.render(), expected_image.render());
  tr.passed = image == expected_image;
  out.push_back(std::move(tr));
  out.push_back(exact_check(prefix + "partition-rank", "rank from maximal subgroup partition data",
                            ktheory::rational_structure_rank(ktheory::partition_data(f)), expected_k0().at(k)));
  return out;
}

std::vector<Check> ktheory_iso() {
  std::vector<Check> out;
  const auto table = ktheory::iso_reference_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& c = table[i];
    char id[32];
    std::snprintf(id, sizeof id, "ktheory/iso/%02zu", i + 1);
    Check chk = exact_check(id, "isomorphism classification of the crossed products",
                            ktheory::iso_decide(c.k1, c.theta1, c.k2, c.theta2), c.expected);
    chk.anchor += ": (" + std::to_string(c.k1) + ", " + c.theta1.render() + ") vs (" + std::to_string(c.k2) + ", " +
                  c.theta2.render() + ")";
    out.push_back(std::move(chk));
  }
  return out;
}

std::vector<Check> ktheory_rational() {
  // Z6 data: six characters of the order-6 subgroup, three of order 3, two of order 2
  const std::vector<std::vector<long>> data{{1, 1, 1, 1, 1, 1}, {2, 2, 2}, {3, 3}};
  return {exact_check("ktheory/rational-structure/Z6", "rank of the rational structure map",
                      ktheory::rational_structure_rank(data), 10)};
}

std::vector<Check> ktheory_highdim() {
  std::vector<Check> out;
  for (int d = 1; d <= 6; ++d) {
    const auto r = ktheory::highdim_k_ranks(d);
    const long half = 1L << (d - 1);
    const std::string prefix = "ktheory/highdim/d=" + std::to_string(d) + "/";
    out.push_back(exact_check(prefix + "torus", "ranks of the d-dimensional torus", ranks_json(r.torus),
                              ranks_json({half, half})));
    out.push_back(exact_check(prefix + "flip", "ranks of the flip crossed product", ranks_json(r.flip),
                              ranks_json({3 * half, 0})));
    out.push_back(exact_check(prefix + "involution-classes", "conjugacy classes of involutions",
                              r.involution_classes, 1L << d));
    out.push_back(exact_check(prefix + "decomposition", "rank decomposition 1 + 2^d + (2^(d-1) - 1)",
                              r.decomposition_holds, true));
    if (d == 2) {
      out.push_back(exact_check(prefix + "matches-Z2", "flip in dimension two agrees with Z2", r.d2_matches_z2, true));
    }
  }
  return out;
}

std::vector<Task> ktheory_tasks(const SuiteConfig& config) {
  std::vector<Task> tasks;
  for (int k : config.groups) tasks.emplace_back([k] { return ktheory_group(k); });
  tasks.emplace_back(ktheory_iso);
  tasks.emplace_back(ktheory_rational);
  tasks.emplace_back(ktheory_highdim);
  return tasks;
}

// ---------------------------------------------------------------------------
// walters

struct Tolerances {
  double order = 1e-4;
  double square = 1e-6;
  double covariance = 1e-5;
  double inner_identity = 1e-5;
  double inner_norm = 1e-8;
  double imprimitivity = 1e-4;
  double green_julg = 1e-5;
  double hermiticity = 1e-8;
  double refinement_floor = 1e-13;

  explicit Tolerances(const std::optional<double>& all) {
    if (!all) return;
    order = square = covariance = inner_identity = inner_norm = imprimitivity = green_julg = hermiticity = *all;
  }
};

struct WaltersProbe {
  std::vector<double> order;
  std::vector<double> covariance_u;
  std::vector<double> covariance_v;

  double covariance(std::size_t i) const { return std::max(covariance_u[i], covariance_v[i]); }
};

WaltersProbe walters_probe(const walters::Grid& grid, double theta, const std::vector<int>& groups) {
  const auto xi = walters::sample_gaussian(grid, theta, 0.2, 1);
  const auto eta = walters::sample_gaussian(grid, theta, -0.3, 1);
  WaltersProbe p;
  for (int k : groups) {
    p.order.push_back(walters::order_residual(k, xi));
    const auto r = walters::relation_residuals(k, xi, eta, 0, 0);
    p.covariance_u.push_back(r.covariance_u);
    p.covariance_v.push_back(r.covariance_v);
  }
  return p;
}

std::vector<Check> walters_theta(const SuiteConfig& config, const ThetaValue& theta) {
  const Tolerances tol(config.tol);
  const auto grid = walters::Grid::make(config.grid_n, config.grid_l);
  const double th = theta.value;
  const auto xi = walters::sample_gaussian(grid, th, 0.2, 1);
  const auto eta = walters::sample_gaussian(grid, th, -0.3, 1);
  const auto unit = walters::sample_gaussian(grid, th, 0, 1);
  const std::string prefix = "walters/theta=" + theta.text + "/";
  const auto has = [&](int k) { return std::count(config.groups.begin(), config.groups.end(), k) > 0; };
  std::vector<Check> out;

  out.push_back(bound_check(prefix + "inner-norm", "right inner product at the identity equals theta",
                            std::abs(walters::inner_right(xi, xi, 0, 0) - th), tol.inner_norm));
  out.push_back(bound_check(prefix + "hermiticity", "adjoint symmetry of the right inner product",
                            walters::hermiticity_residual(xi, eta, 3), tol.hermiticity));

  const WaltersProbe fine = walters_probe(grid, th, config.groups);
  const auto coarse_grid = walters::Grid::make(config.grid_n / 2, config.grid_l);
  const WaltersProbe coarse = walters_probe(coarse_grid, th, config.groups);
  for (std::size_t i = 0; i < config.groups.size(); ++i) {
    const int k = config.groups[i];
    const std::string g = prefix + group_name(k) + "/";
    out.push_back(bound_check(g + "order", "transform has the order of the group", fine.order[i], tol.order));
    out.push_back(bound_check(g + "covariance-u", "covariance of the transform with u", fine.covariance_u[i],
                              tol.covariance));
    out.push_back(bound_check(g + "covariance-v", "covariance of the transform with v", fine.covariance_v[i],
                              tol.covariance));
    const double k_gj = walters::bimodule_residuals(xi, eta, xi, 0, k).green_julg;
    out.push_back(bound_check(g + "green-julg", "right action of the crossed product is associative", k_gj,
                              tol.green_julg));
    // fine <= 1.1 coarse, up to the noise floor
    const double growth = std::max(fine.order[i] - 1.1 * coarse.order[i],
                                   fine.covariance(i) - 1.1 * coarse.covariance(i));
    Check refine = bound_check(g + "refinement", "residuals do not grow when the grid is refined", growth,
                               tol.refinement_floor);
    refine.passed = std::isfinite(growth) && growth <= tol.refinement_floor;
    out.push_back(std::move(refine));
  }
  if (has(3) || has(6)) {
    out.push_back(bound_check(prefix + "Z3-equals-Z6-squared", "order-3 transform is the square of the order-6 one",
                              walters::distance(walters::transform_w(3, xi), walters::transform_w3_via_w6(xi)),
                              tol.square));
  }
  if (has(2) || has(4)) {
    out.push_back(bound_check(prefix + "Z2-equals-Z4-squared", "reflection is the square of the order-4 transform",
                              walters::distance(walters::transform_w(4, walters::transform_w(4, xi)),
                                                walters::transform_w(2, xi)),
                              tol.square));
  }
  if (has(6)) {
    double worst = 0;
    for (long kk = -2; kk <= 2; ++kk) {
      for (long ll = -2; ll <= 2; ++ll) {
        worst = std::max(worst, *walters::relation_residuals(6, xi, eta, kk, ll).inner_identity);
      }
    }
    out.push_back(bound_check(prefix + "Z6/inner-identity", "order-6 transform preserves the right inner product",
                              worst, tol.inner_identity));
    out.push_back(bound_check(prefix + "Z6/inverse", "printed inverse of the order-6 transform",
                              walters::distance(walters::transform_w(6, walters::transform_w(6, xi, true)), xi),
                              tol.square));
  }
  const auto b = walters::bimodule_residuals(unit, unit, unit, 6, 6);
  out.push_back(bound_check(prefix + "imprimitivity", "imprimitivity identity truncated to window 6",
                            b.imprimitivity, tol.imprimitivity));
  Check tail = bound_check(prefix + "imprimitivity-tail", "largest coefficient on the window boundary",
                           b.tail_estimate, 1.0);
  tail.informational = true;
  tail.tolerance = nullptr;
  tail.expected = nullptr;
  tail.passed = true;
  out.push_back(std::move(tail));
  return out;
}

std::vector<Task> walters_tasks(const SuiteConfig& config) {
  std::vector<Task> tasks;
  for (const auto& theta : config.effective_thetas()) {
    tasks.emplace_back([&config, theta] { return walters_theta(config, theta); });
  }
  return tasks;
}

// ---------------------------------------------------------------------------
// fiber

std::vector<Task> fiber_tasks(const SuiteConfig& config) {
  std::vector<Task> tasks;
  for (int k : config.groups) {
    tasks.emplace_back([k] {
      std::vector<Check> out;
      for (const auto& f : tga::fiber_one_identification(k)) {
        Check c;
        c.id = "fiber/" + group_name(k) + "/" + f.kind + "/" + f.name;
        c.anchor = f.kind == "theta-zero" ? "untwisted fiber at theta = 0" : "identification of the fiber at theta = 1";
        c.passed = f.passed;
        c.informational = f.name.find("amended") != std::string::npos;
        c.measured = f.detail;
        c.expected = nullptr;
        out.push_back(std::move(c));
      }
      return out;
    });
  }
  return tasks;
}

// ---------------------------------------------------------------------------
// trace-points

std::vector<Check> trace_point_checks(const std::vector<ktheory::TracePoint>& points, int k, long bound) {
  const std::string prefix = "trace-points/" + group_name(k) + "/";
  const bool origin = std::any_of(points.begin(), points.end(), [](const auto& p) { return p.a == 0 && p.b == 0; });
  const bool sorted = std::is_sorted(points.begin(), points.end(),
                                     [](const auto& x, const auto& y) { return x.value < y.value; });
  const bool in_range = std::all_of(points.begin(), points.end(), [&](const auto& p) {
    return p.value >= 0 && p.value <= 1 && std::labs(p.a) <= bound && std::labs(p.b) <= bound;
  });
  return {exact_check(prefix + "origin", "zero lies in the trace image", origin, true),
          exact_check(prefix + "sorted", "points sorted by value", sorted, true),
          exact_check(prefix + "range", "points inside [0, 1] within the coefficient bound", in_range, true)};
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

// ---------------------------------------------------------------------------

ThetaValue ThetaValue::parse(const std::string& text) {
  ThetaValue t;
  t.text = text;
  if (text == "formal") return t;
  if (text.find('/') != std::string::npos) {
    try {
      t.exact = parse_rational(text);
    } catch (const std::exception&) {
      throw ConfigError("invalid theta '" + text + "'");
    }
    t.kind = Kind::rational;
    t.value = t.exact.get_d();
    t.text = to_string(t.exact);
    return t;
  }
  double v = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
  if (r.ec != std::errc() || r.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("invalid theta '" + text + "' (expected formal, p/q or a number)");
  }
  return real_value(v);
}

ThetaValue ThetaValue::real_value(double v) {
  ThetaValue t;
  t.kind = Kind::real;
  t.value = v;
  t.text = shortest(v);
  return t;
}

std::vector<int> parse_group_selector(const std::string& text) {
  if (text == "all") return {2, 3, 4, 6};
  std::set<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::string s = item;
    if (!s.empty() && (s[0] == 'Z' || s[0] == 'z')) s.erase(0, 1);
    if (s == "2" || s == "3" || s == "4" || s == "6") {
      out.insert(std::stoi(s));
    } else {
      throw ConfigError("invalid group '" + item + "' (expected Z2, Z3, Z4, Z6 or all)");
    }
  }
  if (out.empty()) throw ConfigError("empty group selector");
  return {out.begin(), out.end()};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"symbolic", "ktheory", "walters", "fiber", "trace-points"};
  return names;
}

int default_jobs() {
  const char* env = std::getenv("NCTV_DEFAULT_JOBS");
  if (env == nullptr) return 1;
  int v = 0;
  const std::string s(env);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v < 1) return 1;
  return v;
}

std::vector<ThetaValue> SuiteConfig::effective_thetas() const {
  if (!thetas.empty()) return thetas;
  if (suite == "symbolic") return {ThetaValue::parse("formal")};
  if (suite == "walters") {
    return {ThetaValue::real_value(0.37), ThetaValue::real_value(0.5), ThetaValue::real_value(1 / std::sqrt(2.0)),
            ThetaValue::real_value(0.93)};
  }
  if (suite == "trace-points") return {ThetaValue::real_value(0.6180339887498949)};
  return {};
}

void SuiteConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ConfigError("unknown suite '" + suite + "'");
  }
  if (groups.empty()) throw ConfigError("no groups selected");
  for (int k : groups) {
    if (k != 2 && k != 3 && k != 4 && k != 6) throw ConfigError("unsupported group order " + std::to_string(k));
  }
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (tol && !(*tol > 0)) throw ConfigError("tolerance must be positive");
  if (bound < 0) throw ConfigError("bound must be non-negative");
  using Kind = ThetaValue::Kind;
  if (suite == "ktheory" || suite == "fiber") {
    if (!thetas.empty()) throw ConfigError(suite + " suite does not take theta values");
  }
  if (suite == "symbolic") {
    for (const auto& t : thetas) {
      if (t.kind == Kind::real) throw ConfigError("symbolic suite needs formal or p/q theta, got " + t.text);
    }
  }
  if (suite == "walters" || suite == "trace-points") {
    for (const auto& t : thetas) {
      if (t.kind == Kind::formal) throw ConfigError(suite + " suite needs numeric theta values");
      if (!(t.value > 0 && t.value <= 1)) throw ConfigError("theta " + t.text + " outside (0, 1]");
    }
  }
  if (suite == "walters") {
    if (!is_power_of_two(grid_n) || grid_n < 512) throw ConfigError("grid N must be a power of two >= 512");
    if (!(grid_l >= 8)) throw ConfigError("grid L must be at least 8");
  }
  if (suite == "trace-points") {
    if (groups.size() != 1) throw ConfigError("trace-points suite needs exactly one group");
    const auto t = effective_thetas();
    if (t.size() != 1) throw ConfigError("trace-points suite needs exactly one theta");
    if (!(t[0].value < 1)) throw ConfigError("trace-points theta must lie in (0, 1)");
  }
}

json SuiteConfig::to_json() const {
  json j;
  j["suite"] = suite;
  json g = json::array();
  for (int k : groups) g.push_back(group_name(k));
  j["groups"] = g;
  json t = json::array();
  for (const auto& v : effective_thetas()) t.push_back(v.text);
  j["theta"] = t;
  if (suite == "walters") {
    j["grid_n"] = grid_n;
    j["grid_l"] = grid_l;
  }
  j["tol"] = tol ? json(*tol) : json(nullptr);
  j["jobs"] = jobs;
  if (suite == "trace-points") j["bound"] = bound;
  return j;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.informational || c.passed; });
}

json Report::to_json() const {
  json j;
  j["schema"] = 1;
  j["suite"] = config.suite;
  j["config"] = config.to_json();
  j["status"] = passed() ? "pass" : "fail";
  long pass = 0, fail = 0, info = 0;
  json list = json::array();
  for (const auto& c : checks) {
    if (c.informational) {
      ++info;
    } else if (c.passed) {
      ++pass;
    } else {
      ++fail;
    }
    json r;
    r["id"] = c.id;
    r["anchor"] = c.anchor;
    r["status"] = c.passed ? "pass" : "fail";
    if (c.informational) r["informational"] = true;
    r["measured"] = c.measured;
    r["expected"] = c.expected;
    r["tolerance"] = c.tolerance;
    list.push_back(std::move(r));
  }
  j["summary"] = json{{"checks", checks.size()}, {"passed", pass}, {"failed", fail}, {"informational", info}};
  j["checks"] = std::move(list);
  if (config.suite == "trace-points") {
    json pts = json::array();
    for (const auto& p : points) pts.push_back(json{{"a", p.a}, {"b", p.b}, {"value", p.value}});
    j["points"] = std::move(pts);
  }
  return j;
}

Report run_suite(const SuiteConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.config = config;
  std::vector<Task> tasks;
  if (config.suite == "symbolic") {
    tasks = symbolic_tasks(config);
  } else if (config.suite == "ktheory") {
    tasks = ktheory_tasks(config);
  } else if (config.suite == "walters") {
    tasks = walters_tasks(config);
  } else if (config.suite == "fiber") {
    tasks = fiber_tasks(config);
  } else {
    const int k = config.groups.front();
    report.points = ktheory::trace_points(k, config.effective_thetas().front().value, config.bound);
    tasks.emplace_back([&report, &config, k] { return trace_point_checks(report.points, k, config.bound); });
  }
  report.checks = run_tasks(tasks, config.jobs);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else out += c;
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_markdown(const json& report) {
  std::ostringstream out;
  out << "# nctv " << report.at("suite").get<std::string>() << " report\n\n";
  out << "Status: **" << report.at("status").get<std::string>() << "**\n\n";
  const auto& s = report.at("summary");
  out << "Checks: " << s.at("checks") << ", passed " << s.at("passed") << ", failed " << s.at("failed")
      << ", informational " << s.at("informational") << "\n\n";
  out << "## Configuration\n\n| key | value |\n|---|---|\n";
  for (const auto& [key, value] : report.at("config").items()) out << "| " << key << " | " << md_escape(cell(value)) << " |\n";
  out << "\n## Checks\n\n| id | description | status | measured | expected | tolerance |\n|---|---|---|---|---|---|\n";
  for (const auto& c : report.at("checks")) {
    std::string status = c.at("status").get<std::string>();
    if (c.contains("informational")) status += " (info)";
    out << "| " << md_escape(cell(c.at("id"))) << " | " << md_escape(cell(c.at("anchor"))) << " | " << status << " | "
        << md_escape(cell(c.at("measured"))) << " | " << md_escape(cell(c.at("expected"))) << " | "
        << md_escape(cell(c.at("tolerance"))) << " |\n";
  }
  if (report.contains("points")) {
    out << "\n## Trace points\n\n| a | b | value |\n|---|---|---|\n";
    for (const auto& p : report.at("points")) {
      out << "| " << p.at("a") << " | " << p.at("b") << " | " << cell(p.at("value")) << " |\n";
    }
  }
  return out.str();
}

std::string render_csv(const json& report) {
  std::ostringstream out;
  if (report.contains("points")) {
    out << "a,b,value\n";
    for (const auto& p : report.at("points")) out << p.at("a") << ',' << p.at("b") << ',' << cell(p.at("value")) << '\n';
    return out.str();
  }
  out << "id,anchor,status,informational,measured,expected,tolerance\n";
  for (const auto& c : report.at("checks")) {
    out << csv_field(cell(c.at("id"))) << ',' << csv_field(cell(c.at("anchor"))) << ',' << cell(c.at("status")) << ','
        << (c.contains("informational") ? "true" : "false") << ',' << csv_field(cell(c.at("measured"))) << ','
        << csv_field(cell(c.at("expected"))) << ',' << csv_field(cell(c.at("tolerance"))) << '\n';
  }
  return out.str();
}

}  // namespace nctv::suites
