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

#include "nctv/ktheory.hpp"

#include <algorithm>
#include <stdexcept>

#include "nctv/tga.hpp"

namespace nctv::ktheory {

namespace {

void require_rotation(int k) {
  if (k != 2 && k != 3 && k != 4 && k != 6) throw std::invalid_argument("k must be 2, 3, 4 or 6");
}

Rational abs(const Rational& r) { return sgn(r) < 0 ? Rational(-r) : r; }

// Euclid on the theta coordinate; vectors with vanishing theta part drop out
// into `flat`.
Affine reduce_theta(std::vector<Affine> vs, std::vector<Rational>& flat) {
  Affine pivot{Rational(0), Rational(0)};
  for (auto& v : vs) {
    if (sgn(v.theta) == 0) {
      flat.push_back(v.constant);
      continue;
    }
    Affine w = v;
    while (sgn(w.theta) != 0) {
      if (sgn(pivot.theta) != 0) {
        const Rational q(floor(Rational(pivot.theta / w.theta)));
        pivot = pivot - q * w;
      }
      std::swap(pivot, w);
    }
    if (sgn(w.constant) != 0) flat.push_back(w.constant);
  }
  if (sgn(pivot.theta) < 0) pivot = Rational(-1) * pivot;
  return pivot;
}

}  // namespace

std::string Affine::render() const {
  if (sgn(theta) == 0) return to_string(constant);
  const std::string t = theta == 1 ? "theta" : to_string(theta) + "*theta";
  if (sgn(constant) == 0) return t;
  return to_string(constant) + " + " + t;
}

KRanks k_ranks(const FiniteGroupTag& group) {
  if (group.kind() != grp::GroupKind::rotation) throw std::invalid_argument("k_ranks: rotation groups only");
  long rank = 2;
  for (const auto& s : grp::maximal_finite_subgroups(group)) rank += s.order - 1;
  return {rank, 0};
}

K0Summary k0_summary(int k) {
  require_rotation(k);
  K0Summary s;
  s.k = k;
  s.ranks = k_ranks(FiniteGroupTag::cyclic(k));
  for (const auto& p : tga::projection_family(k)) {
    s.basis_labels.push_back("[" + p.name + "]");
    s.trace_vector.push_back({p.expected_trace, Rational(0)});
  }
  // module class: trace theta / k
  s.basis_labels.push_back("[E]");
  s.trace_vector.push_back({Rational(0), make_rational(1, k)});
  return s;
}

TraceSubgroup TraceSubgroup::generated_by(const std::vector<Affine>& values) {
  std::vector<Rational> flat;
  const Affine pivot = reduce_theta(values, flat);
  TraceSubgroup g;
  g.a = 0;
  for (const auto& r : flat) g.a = rational_gcd(g.a, r);
  g.a = abs(g.a);
  g.b = pivot.theta;
  g.c = sgn(g.a) == 0 ? pivot.constant : Rational(pivot.constant - g.a * Rational(floor(Rational(pivot.constant / g.a))));
  return g;
}

bool TraceSubgroup::contains(const Affine& x) const {
  Rational r = x.constant;
  if (sgn(b) == 0) {
    if (sgn(x.theta) != 0) return false;
  } else {
    const Rational n = x.theta / b;
    if (!is_integer(n)) return false;
    r -= n * c;
  }
  if (sgn(a) == 0) return sgn(r) == 0;
  return is_integer(Rational(r / a));
}

std::string TraceSubgroup::render() const {
  std::string out = to_string(a) + " Z + ";
  if (sgn(c) != 0) return out + "(" + to_string(c) + " + " + to_string(b) + "*theta) Z";
  return out + to_string(b) + "*theta Z";
}

TraceSubgroup trace_image(int k) { return TraceSubgroup::generated_by(k0_summary(k).trace_vector); }

bool iso_decide(int k1, const Affine& theta1, int k2, const Affine& theta2) {
  require_rotation(k1);
  require_rotation(k2);
  if (sgn(theta1.theta) == 0 || sgn(theta2.theta) == 0) {
    throw std::domain_error("iso_decide: theta must be irrational (non-zero theta coefficient)");
  }
  if (k1 != k2) return false;
  if (theta1.theta == theta2.theta) return is_integer(Rational(theta1.constant - theta2.constant));
  if (theta1.theta == -theta2.theta) return is_integer(Rational(theta1.constant + theta2.constant));
  return false;
}

std::vector<IsoCase> iso_reference_table() {
  const Affine t{Rational(0), Rational(1)};
  auto aff = [](long c, long s) { return Affine{Rational(c), Rational(s)}; };
  const Affine half_shift{make_rational(1, 2), Rational(1)};
  return {
      {2, t, 2, aff(1, -1), true},
      {2, t, 3, t, false},
      {4, aff(7, 1), 4, t, true},
      {2, t, 2, t, true},
      {3, t, 3, aff(-2, 1), true},
      {3, t, 3, aff(1, -1), true},
      {4, t, 4, aff(0, -1), true},
      {6, t, 6, aff(5, -1), true},
      {6, aff(-3, 1), 6, aff(4, -1), true},
      {2, t, 4, t, false},
      {3, t, 6, t, false},
      {4, t, 6, aff(1, -1), false},
      {2, t, 2, aff(0, 2), false},
      {2, aff(0, 2), 2, aff(1, -2), true},
      {4, t, 4, half_shift, false},
      {6, half_shift, 6, Affine{make_rational(-1, 2), Rational(-1)}, true},
      {6, half_shift, 6, aff(0, -1), false},
      {3, Affine{make_rational(1, 3), Rational(1)}, 3, Affine{make_rational(-2, 3), Rational(1)}, true},
      {2, Affine{Rational(0), make_rational(1, 2)}, 2, t, false},
      {6, t, 2, t, false},
  };
}

long rational_structure_rank(const std::vector<std::vector<long>>& partitions) {
  if (partitions.empty()) throw std::invalid_argument("rational_structure_rank: no points");
  long total = -1;
  long rank = 2;
  for (const auto& blocks : partitions) {
    if (blocks.empty()) throw std::invalid_argument("rational_structure_rank: point without blocks");
    long sum = 0;
    for (long b : blocks) {
      if (b <= 0) throw std::invalid_argument("rational_structure_rank: block sizes must be positive");
      sum += b;
    }
    if (total >= 0 && sum != total) throw std::invalid_argument("rational_structure_rank: inconsistent totals");
    total = sum;
    rank += static_cast<long>(blocks.size()) - 1;
  }
  return rank;
}

std::vector<std::vector<long>> partition_data(const FiniteGroupTag& group) {
  std::vector<std::vector<long>> out;
  for (const auto& s : grp::maximal_finite_subgroups(group)) {
    out.emplace_back(static_cast<std::size_t>(s.order), group.order() / s.order);
  }
  return out;
}

HighDimRanks highdim_k_ranks(int d) {
  if (d < 1 || d > 30) throw std::invalid_argument("highdim_k_ranks: d must be in [1, 30]");
  HighDimRanks r;
  r.d = d;
  const long half = 1L << (d - 1);
  r.torus = {half, half};
  r.flip = {3 * half, 0};
  r.involution_classes = static_cast<long>(grp::torsion_classes(FiniteGroupTag::flip(d)).size());
  r.decomposition_holds = 1 + r.involution_classes + (half - 1) == r.flip.k0;
  if (d == 2) r.d2_matches_z2 = r.flip == k_ranks(FiniteGroupTag::cyclic(2));
  return r;
}

std::vector<TracePoint> trace_points(int k, double theta, long bound) {
  require_rotation(k);
  if (bound < 0) throw std::invalid_argument("trace_points: bound must be non-negative");
  std::vector<TracePoint> out;
  for (long a = -bound; a <= bound; ++a) {
    for (long b = -bound; b <= bound; ++b) {
      const double v = (static_cast<double>(a) + static_cast<double>(b) * theta) / k;
      if (v >= 0.0 && v <= 1.0) out.push_back({a, b, v});
    }
  }
  std::sort(out.begin(), out.end(), [](const TracePoint& x, const TracePoint& y) {
    if (x.value != y.value) return x.value < y.value;
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  return out;
}

}  // namespace nctv::ktheory
