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

// Semidirect products Z^d x| F for finite cyclic F acting linearly, torsion
// classification through Smith normal form, and conjugacy classes of
// maximal finite subgroups.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nctv::grp {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

/// Small dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_identity() const;
  /// Inverse of a matrix with determinant +-1. Throws std::domain_error otherwise.
  IntMatrix inverse() const;
  Int determinant() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// The generator of Z_k inside SL_2(Z) for k in {2, 3, 4, 6}.
IntMatrix generator_matrix(int k);

enum class GroupKind { rotation, flip };

/// A finite cyclic group F acting on Z^d: either one of the rotation groups
/// Z_2, Z_3, Z_4, Z_6 in SL_2(Z) or the flip n -> -n on Z^d.
class FiniteGroupTag {
 public:
  static FiniteGroupTag cyclic(int k);
  static FiniteGroupTag flip(int d);

  GroupKind kind() const { return kind_; }
  int order() const { return static_cast<int>(powers_.size()); }
  int dimension() const { return static_cast<int>(powers_.front().rows()); }
  const IntMatrix& generator() const { return powers_[1]; }
  /// generator^j, j taken modulo the order.
  const IntMatrix& power(int j) const;
  /// Exponent j with generator^j == n, or -1.
  int power_index(const IntMatrix& n) const;
  /// "Z2", "Z3", "Z4", "Z6" or "flip<d>".
  std::string name() const;

  friend bool operator==(const FiniteGroupTag& a, const FiniteGroupTag& b) {
    return a.kind_ == b.kind_ && a.powers_ == b.powers_;
  }

 private:
  FiniteGroupTag(GroupKind kind, IntMatrix generator);

  GroupKind kind_ = GroupKind::rotation;
  std::vector<IntMatrix> powers_;
};

/// (m, N) in Z^d x| F with (m, N)(m', N') = (m + N m', N N').
struct GroupElement {
  IntVector translation;
  IntMatrix point;

  static GroupElement identity(std::size_t d);
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Throws std::invalid_argument on dimension mismatch.
GroupElement group_mul(const GroupElement& g, const GroupElement& h);
GroupElement group_inverse(const GroupElement& g);
GroupElement group_pow(const GroupElement& g, int j);

/// Least j in [1, cap] with g^j = 1; nullopt means infinite order (or
/// order beyond the cap, which cannot happen for the supported groups).
std::optional<int> element_order(const GroupElement& g, int cap = 12);

/// Monomial label such as "t", "ut", "u^2t^2", "uvt" (d = 2) or "u1u3t".
std::string word_label(const IntVector& m, int power, std::size_t dim);

/// Z^d-conjugacy class of a torsion element (m, N) with N != 1. Two elements
/// with the same point part are conjugate by translations iff their
/// translation parts agree modulo (1 - N) Z^d.
struct TorsionClass {
  int power = 0;             ///< N = generator^power
  IntMatrix point;
  IntVector residue;         ///< Smith coordinates, entry i in [0, d_i)
  IntVector representative;  ///< a short translation vector in the class
  int order = 0;
  std::string label;

  friend bool operator==(const TorsionClass& a, const TorsionClass& b) {
    return a.power == b.power && a.residue == b.residue;
  }
  friend auto operator<=>(const TorsionClass& a, const TorsionClass& b) {
    if (auto c = a.power <=> b.power; c != 0) return c;
    return a.residue <=> b.residue;
  }
};

/// Classifies (m, N) for every non-identity power N: one entry per element of
/// Z^d / (1 - N) Z^d, ordered by (power, residue).
std::vector<TorsionClass> torsion_classes(const FiniteGroupTag& f);

/// Z^d-conjugacy class of a torsion element with non-identity point part.
TorsionClass classify(const FiniteGroupTag& f, const GroupElement& g);

/// Conjugacy in the full group Z^d x| F (translations and F).
bool conjugate_in_group(const FiniteGroupTag& f, const TorsionClass& a, const TorsionClass& b);

/// Conjugacy class of a finite (hence cyclic) subgroup, given by a generator.
struct SubgroupClass {
  TorsionClass generator;
  int order = 0;
  /// Z^d-classes of generator^j for 1 <= j < order.
  std::vector<TorsionClass> power_classes;

  /// True if some power of the generator is conjugate to `c` in the full group.
  bool contains(const FiniteGroupTag& f, const TorsionClass& c) const;
};

/// Maximal finite subgroups up to conjugacy, sorted by descending order, then
/// by generator (power, residue).
std::vector<SubgroupClass> maximal_finite_subgroups(const FiniteGroupTag& f);

}  // namespace nctv::grp
