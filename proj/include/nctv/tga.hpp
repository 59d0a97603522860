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
// Twisted group algebras C*(Z^d x| F, omega) restricted to finitely supported
// elements: convolution, involution, canonical trace, generators, relation
// tables, and the explicit projections and unitaries built from them.

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nctv/coeff.hpp"
#include "nctv/grp.hpp"
#include "nctv/rational.hpp"

namespace nctv::tga {

using coeff::PhaseScalar;
using grp::FiniteGroupTag;
using grp::GroupElement;
using grp::IntVector;

enum class ThetaMode { formal, rational, numeric };

/// The 2-cocycle omega(x, y) = e(<Theta x, y> / 2) on Z^d with
/// Theta = C + theta * S for rational skew matrices C, S. For d = 2 and a
/// formal parameter, C = 0 and S = [[0, 1], [-1, 0]], which gives
/// omega((n, m), (n', m')) = e(theta (n' m - n m') / 2).
class CocycleSpec {
 public:
  /// d = 2, theta kept symbolic.
  static CocycleSpec formal();
  /// d = 2, theta = value folded into the constant part.
  static CocycleSpec rational(const Rational& value);
  /// d = 2, symbolic algebra with a default evaluation point.
  static CocycleSpec numeric(double value);
  /// Constant skew matrix Theta (d x d, rational). Throws std::invalid_argument
  /// unless Theta is square and skew-symmetric.
  static CocycleSpec skew(const std::vector<std::vector<Rational>>& theta);
  static CocycleSpec untwisted(int d);

  int dimension() const { return d_; }
  ThetaMode mode() const { return mode_; }
  double numeric_value() const { return numeric_; }
  /// The phase e(scale * Theta_{jk}).
  PhaseScalar theta_phase(int j, int k, const Rational& scale = Rational(1)) const;

  PhaseScalar omega(const IntVector& x, const IntVector& y) const;
  /// Extension to the semidirect product: omega((m, N), (m', N')) = omega(m, N m').
  PhaseScalar omega(const GroupElement& g, const GroupElement& h) const;
  /// Substitutes theta := value exactly.
  CocycleSpec specialized(const Rational& value) const;
  std::string describe() const;

  friend bool operator==(const CocycleSpec& a, const CocycleSpec& b) {
    return a.d_ == b.d_ && a.c_ == b.c_ && a.s_ == b.s_;
  }

 private:
  int d_ = 2;
  ThetaMode mode_ = ThetaMode::formal;
  double numeric_ = 0.0;
  std::vector<Rational> c_;  // d x d row-major
  std::vector<Rational> s_;
};

class AlgebraElement;
class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Throws std::invalid_argument if the dimensions disagree or a rotation
/// group is paired with d != 2.
AlgebraPtr make_algebra(const FiniteGroupTag& group, const CocycleSpec& cocycle);

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  Algebra(FiniteGroupTag group, CocycleSpec cocycle);

  const FiniteGroupTag& group() const { return group_; }
  const CocycleSpec& cocycle() const { return cocycle_; }
  int dimension() const { return group_.dimension(); }

  AlgebraElement zero() const;
  AlgebraElement one() const;
  AlgebraElement scalar(const PhaseScalar& c) const;
  AlgebraElement delta(const GroupElement& g, const PhaseScalar& c = PhaseScalar(1)) const;
  /// Translation generator u_k (k = 0 is u, k = 1 is v when d = 2).
  AlgebraElement u(int k = 0) const;
  AlgebraElement v() const;
  AlgebraElement t() const;
  /// u_0, ..., u_{d-1}, t.
  std::vector<AlgebraElement> generators() const;
  AlgebraPtr specialized(const Rational& value) const;
  /// Same group, trivial cocycle.
  AlgebraPtr untwisted() const;

  bool same_as(const Algebra& other) const {
    return this == &other || (group_ == other.group_ && cocycle_ == other.cocycle_);
  }

 private:
  FiniteGroupTag group_;
  CocycleSpec cocycle_;
};

/// Finitely supported function on Z^d x| F with PhaseScalar values.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraPtr algebra, std::map<GroupElement, PhaseScalar> terms);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::map<GroupElement, PhaseScalar>& terms() const { return terms_; }
  PhaseScalar coefficient(const GroupElement& g) const;
  bool is_zero() const { return terms_.empty(); }

  AlgebraElement adjoint() const;
  /// Coefficient at the identity.
  PhaseScalar trace() const;
  /// Non-negative powers only.
  AlgebraElement pow(int j) const;
  /// Exact substitution theta := value into a new algebra.
  AlgebraElement specialize(const Rational& value) const;
  std::map<GroupElement, std::complex<double>> evaluate(double theta) const;
  std::map<GroupElement, std::complex<double>> evaluate() const;
  /// sum of c * u^a v^b t^j over the support, in the monomial basis.
  std::string render() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  AlgebraElement operator-() const;
  /// Twisted convolution. Throws std::invalid_argument on cocycle mismatch.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const PhaseScalar& c, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  void add(const GroupElement& g, const PhaseScalar& c);

  AlgebraPtr algebra_;
  std::map<GroupElement, PhaseScalar> terms_;
};

bool is_projection(const AlgebraElement& a);
/// Least j <= cap with a^j = 1, or 0 if none. Throws std::domain_error when a
/// is not unitary.
int unitary_order(const AlgebraElement& a, int cap = 12);
/// (1/n) sum_{i<n} (c x)^i.
AlgebraElement spectral_sum(const AlgebraElement& x, const PhaseScalar& c, int n);

// ---------------------------------------------------------------------------
// Words in the generators

/// generator -1 is t; 0..d-1 are the translation generators.
struct Letter {
  int generator = -1;
  int exponent = 1;
};

struct Word {
  PhaseScalar coefficient{1};
  std::vector<Letter> letters;

  /// Parses space-separated letters "u", "v", "t", "u3" with optional "^e",
  /// e.g. "u^-1 v" or "u t^2". "1" is the empty word.
  static Word parse(const std::string& text, const PhaseScalar& coefficient = PhaseScalar(1));
  Word specialized(const Rational& value) const;
  std::string render(int dimension) const;
};

/// Product of the images of the letters; negative exponents use adjoints,
/// so the images must be unitary. `images` lists u_0, ..., u_{d-1}, t.
AlgebraElement evaluate_word(const Word& w, const AlgebraPtr& algebra,
                             const std::vector<AlgebraElement>& images);
AlgebraElement evaluate_word(const Word& w, const AlgebraPtr& algebra);

struct Relation {
  std::string name;
  Word lhs;
  Word rhs;
};

/// Defining relations of the twisted algebra. Rotation groups: t^k = 1,
/// vu = e(theta) uv and the conjugation table for t. Flip: t^2 = 1,
/// t u_k t^-1 = u_k^-1 and u_k u_j = e(Theta_jk) u_j u_k for j < k.
std::vector<Relation> generator_relations(const FiniteGroupTag& group, const CocycleSpec& cocycle);

struct RelationCheck {
  std::string name;
  bool holds = false;
  std::string residual;  ///< render of lhs - rhs
};

std::vector<RelationCheck> check_generator_relations(const AlgebraPtr& algebra);

/// Order-k unitaries whose images at theta = 1 are the generators of the
/// maximal finite subgroups.
struct NamedUnitary {
  std::string name;
  Word word;
  int expected_order = 0;
  Word fiber_one_image;  ///< untwisted word
};

/// k in {2, 3, 4, 6}.
std::vector<NamedUnitary> corrected_unitaries(int k);
/// Z_3 only (empty otherwise): e((1 + 2 theta)/3) U^2 T, whose cube is 1 for
/// every theta. The unscaled U^2 T cubes to e(-2 theta).
std::vector<NamedUnitary> amended_unitaries(int k);

/// (1/period) sum_i (root * base)^i.
struct ProjectionSpec {
  std::string name;
  std::string formula;
  PhaseScalar root;
  Word base;
  int period = 1;
  Rational expected_trace;
};

/// The twisted projection basis for F = Z_k.
std::vector<ProjectionSpec> projection_family(int k);
/// The corresponding untwisted basis of C*(Z^2 x| Z_k), same names.
std::vector<ProjectionSpec> untwisted_projection_family(int k);
/// Z_3 only (empty otherwise): r0, r1 rebuilt on the amended unitary.
std::vector<ProjectionSpec> amended_projections(int k);
AlgebraElement build(const ProjectionSpec& p, const AlgebraPtr& algebra);

struct ProjectionCheck {
  std::string name;
  std::string formula;
  bool self_adjoint = false;
  bool idempotent = false;
  PhaseScalar trace;
  Rational expected_trace;
  bool trace_matches = false;
  bool passed() const { return self_adjoint && idempotent && trace_matches; }
};

std::vector<ProjectionCheck> check_projections(int k, const std::vector<ProjectionSpec>& family);
std::vector<ProjectionCheck> check_projection_family(int k);

struct UnitaryCheck {
  std::string name;
  int expected_order = 0;
  int order = 0;  ///< 0 if not unitary or above the cap
  bool passed() const { return order == expected_order; }
};

std::vector<UnitaryCheck> check_unitaries(int k, const std::vector<NamedUnitary>& unitaries);
std::vector<UnitaryCheck> check_unitary_orders(int k);

/// Sign map from the theta = 1 algebra to the untwisted one:
/// delta_g -> (-1)^{ab + a + b} delta_g for g = ((a, b), N). It sends
/// u -> -u, v -> -v, t -> t. Throws std::invalid_argument unless the input
/// lives over the d = 2 cocycle at theta = 1.
AlgebraElement fiber_one_map(const AlgebraElement& a);

struct FiberCheck {
  std::string kind;  ///< relation | homomorphism | unitary | projection | theta-zero
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Checks, for F = Z_k, that theta = 1 with u -> -u, v -> -v, t -> t turns
/// every relation into the untwisted one, that the sign map is multiplicative
/// on a window, that corrected unitaries and projections land on their
/// untwisted counterparts, and that theta = 0 is the untwisted algebra.
std::vector<FiberCheck> fiber_one_identification(int k);

}  // namespace nctv::tga
