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

#pragma once
// K-theory bookkeeping for A_theta x| Z_k: ranks from the maximal finite
// subgroups, trace vectors and the subgroup they generate, the isomorphism
// criterion, and ranks for the flip action on higher-dimensional tori.

#include <string>
#include <vector>

#include "nctv/grp.hpp"
#include "nctv/rational.hpp"

namespace nctv::ktheory {

using grp::FiniteGroupTag;

/// constant + theta * theta_coefficient, theta formal.
struct Affine {
  Rational constant;
  Rational theta;

  double eval(double t) const { return constant.get_d() + theta.get_d() * t; }
  std::string render() const;
  friend Affine operator+(const Affine& x, const Affine& y) { return {x.constant + y.constant, x.theta + y.theta}; }
  friend Affine operator-(const Affine& x, const Affine& y) { return {x.constant - y.constant, x.theta - y.theta}; }
  friend Affine operator*(const Rational& c, const Affine& x) { return {c * x.constant, c * x.theta}; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

struct KRanks {
  long k0 = 0;
  long k1 = 0;
  friend bool operator==(const KRanks&, const KRanks&) = default;
};

/// rank K_0 = 2 + sum over maximal finite subgroups of (order - 1), K_1 = 0.
/// Throws std::invalid_argument for anything but Z_2, Z_3, Z_4, Z_6.
KRanks k_ranks(const FiniteGroupTag& group);

struct K0Summary {
  int k = 0;
  KRanks ranks;
  std::vector<std::string> basis_labels;  ///< "[1]", "[p0]", ..., "[E]"
  std::vector<Affine> trace_vector;       ///< last entry theta / k for [E]
};

K0Summary k0_summary(int k);

/// a Z (1, 0) + Z (c, b) inside Q + Q theta, with a, b >= 0 and 0 <= c < a
/// (Hermite normal form). The subgroup is a Z + b theta Z exactly when c = 0.
struct TraceSubgroup {
  Rational a;
  Rational b;
  Rational c;

  static TraceSubgroup generated_by(const std::vector<Affine>& values);
  bool contains(const Affine& x) const;
  std::string render() const;
  friend bool operator==(const TraceSubgroup&, const TraceSubgroup&) = default;
};

TraceSubgroup trace_image(int k);

/// Whether A_theta1 x| Z_k1 and A_theta2 x| Z_k2 are isomorphic: k1 = k2 and
/// theta2 = +-theta1 mod Z. Throws std::domain_error when either theta is
/// rational (zero theta coefficient) and std::invalid_argument for k outside
/// {2, 3, 4, 6}.
bool iso_decide(int k1, const Affine& theta1, int k2, const Affine& theta2);

struct IsoCase {
  int k1;
  Affine theta1;
  int k2;
  Affine theta2;
  bool expected;
};

/// Reference table of 20 cases.
std::vector<IsoCase> iso_reference_table();

/// 2 + sum_i (blocks_i - 1). Throws std::invalid_argument on empty input,
/// non-positive blocks, or points whose block sizes have different totals.
long rational_structure_rank(const std::vector<std::vector<long>>& partitions);

/// One point per maximal finite subgroup of order n, carrying n blocks of
/// size k / n.
std::vector<std::vector<long>> partition_data(const FiniteGroupTag& group);

struct HighDimRanks {
  int d = 0;
  KRanks torus;
  KRanks flip;
  long involution_classes = 0;  ///< torsion classes of Z^d x| Z_2 from grp
  bool decomposition_holds = false;  ///< 1 + 2^d + (2^{d-1} - 1) = 3 * 2^{d-1}
  bool d2_matches_z2 = true;         ///< only checked for d = 2
};

/// Throws std::invalid_argument unless 1 <= d <= 30.
HighDimRanks highdim_k_ranks(int d);

struct TracePoint {
  long a;
  long b;
  double value;
};

/// Points (a + b theta) / k in [0, 1] with |a|, |b| <= bound, sorted by value.
std::vector<TracePoint> trace_points(int k, double theta, long bound);

}  // namespace nctv::ktheory
