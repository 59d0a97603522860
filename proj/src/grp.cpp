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

#include "nctv/grp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "nctv/rational.hpp"

namespace nctv::grp {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

namespace {

std::vector<std::vector<Rational>> to_rational(const IntMatrix& m) {
  std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rational(static_cast<long>(m(i, j)));
  }
  return a;
}

Int to_int(const Rational& r) {
  if (!is_integer(r) || !r.get_num().fits_slong_p()) {
    throw std::domain_error("matrix entry is not a machine integer");
  }
  return static_cast<Int>(r.get_num().get_si());
}

}  // namespace

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  auto a = to_rational(*this);
  Rational det = 1;
  const std::size_t n = rows_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return to_int(det);
}

IntMatrix IntMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  const Int det = determinant();
  if (det != 1 && det != -1) throw std::domain_error("matrix is not unimodular");
  const std::size_t n = rows_;
  auto a = to_rational(*this);
  auto inv = to_rational(identity(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (sgn(a[p][c]) == 0) ++p;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Rational pivot = a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] /= pivot;
      inv[c][k] /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = to_int(inv[i][j]);
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector out(a.rows_, 0);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

// ---------------------------------------------------------------------------
// Smith normal form

IntVector SmithForm::diagonal() const {
  IntVector d(std::min(D.rows(), D.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
  return d;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] += q * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, Int q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += q * m(src, j);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, Int q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) += q * m(i, src);
}

Int abs_int(Int x) { return x < 0 ? -x : x; }

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm s{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
  IntMatrix& d = s.D;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // pivot: smallest nonzero absolute value in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) != 0 && (pi == rows || abs_int(d(i, j)) < abs_int(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == rows) return s;  // trailing block is zero
      swap_rows(d, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(d, t, pj);
      swap_cols(s.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Int q = d(i, t) / d(t, t);
        if (q != 0) {
          add_row(d, i, t, -q);
          add_row(s.U, i, t, -q);
        }
        clean = clean && d(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Int q = d(t, j) / d(t, t);
        if (q != 0) {
          add_col(d, j, t, -q);
          add_col(s.V, j, t, -q);
        }
        clean = clean && d(t, j) == 0;
      }
      if (!clean) continue;

      // enforce d_t | every entry of the trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, t, i, 1);
            add_row(s.U, t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) s.U(t, j) = -s.U(t, j);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Groups

IntMatrix generator_matrix(int k) {
  switch (k) {
    case 2: return {{-1, 0}, {0, -1}};
    case 3: return {{-1, -1}, {1, 0}};
    case 4: return {{0, -1}, {1, 0}};
    case 6: return {{0, -1}, {1, 1}};
    default: throw std::invalid_argument("unsupported group order " + std::to_string(k));
  }
}

FiniteGroupTag::FiniteGroupTag(GroupKind kind, IntMatrix generator) : kind_(kind) {
  const std::size_t d = generator.rows();
  powers_.push_back(IntMatrix::identity(d));
  IntMatrix p = generator;
  while (!p.is_identity()) {
    if (powers_.size() > 12) throw std::invalid_argument("generator has infinite or large order");
    powers_.push_back(p);
    p = p * generator;
  }
}

FiniteGroupTag FiniteGroupTag::cyclic(int k) {
  FiniteGroupTag f(GroupKind::rotation, generator_matrix(k));
  if (f.order() != k || f.generator().determinant() != 1) {
    throw std::logic_error("generator matrix does not have the expected order");
  }
  return f;
}

FiniteGroupTag FiniteGroupTag::flip(int d) {
  if (d < 1) throw std::invalid_argument("flip dimension must be >= 1");
  IntMatrix g(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) = -1;
  return FiniteGroupTag(GroupKind::flip, g);
}

const IntMatrix& FiniteGroupTag::power(int j) const {
  const int k = order();
  return powers_[static_cast<std::size_t>(((j % k) + k) % k)];
}

int FiniteGroupTag::power_index(const IntMatrix& n) const {
  for (std::size_t j = 0; j < powers_.size(); ++j) {
    if (powers_[j] == n) return static_cast<int>(j);
  }
  return -1;
}

std::string FiniteGroupTag::name() const {
  if (kind_ == GroupKind::flip) return "flip" + std::to_string(dimension());
  return "Z" + std::to_string(order());
}

GroupElement GroupElement::identity(std::size_t d) { return {IntVector(d, 0), IntMatrix::identity(d)}; }

GroupElement group_mul(const GroupElement& g, const GroupElement& h) {
  if (g.translation.size() != h.translation.size() || g.point.rows() != h.point.rows()) {
    throw std::invalid_argument("group_mul: dimension mismatch");
  }
  IntVector m = g.point * h.translation;
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += g.translation[i];
  return {std::move(m), g.point * h.point};
}

GroupElement group_inverse(const GroupElement& g) {
  IntMatrix inv = g.point.inverse();
  IntVector m = inv * g.translation;
  for (auto& x : m) x = -x;
  return {std::move(m), std::move(inv)};
}

GroupElement group_pow(const GroupElement& g, int j) {
  const GroupElement base = j < 0 ? group_inverse(g) : g;
  GroupElement r = GroupElement::identity(g.translation.size());
  for (int i = 0; i < (j < 0 ? -j : j); ++i) r = group_mul(r, base);
  return r;
}

std::optional<int> element_order(const GroupElement& g, int cap) {
  const auto id = GroupElement::identity(g.translation.size());
  GroupElement p = g;
  for (int j = 1; j <= cap; ++j) {
    if (p == id) return j;
    p = group_mul(p, g);
  }
  return std::nullopt;
}

std::string word_label(const IntVector& m, int power, std::size_t dim) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    s += dim == 2 ? std::string(i == 0 ? "u" : "v") : "u" + std::to_string(i + 1);
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  if (power > 0) {
    s += "t";
    if (power > 1) s += "^" + std::to_string(power);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// Torsion classification

namespace {

Int floor_mod(Int a, Int m) {
  const Int r = a % m;
  return r < 0 ? r + m : r;
}

IntVector representative_key(const IntVector& v) {
  Int nnz = 0, neg = 0, last = -1, l1 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    ++nnz;
    neg += v[i] < 0 ? 1 : 0;
    last = static_cast<Int>(i);
    l1 += v[i] < 0 ? -v[i] : v[i];
  }
  IntVector k{nnz, neg, last, l1};
  for (Int x : v) k.push_back(-x);
  return k;
}

bool class_less(const TorsionClass& a, const TorsionClass& b) {
  if (a.power != b.power) return a.power < b.power;
  return representative_key(a.representative) < representative_key(b.representative);
}

// Smith data for 1 - N, one entry per power of the generator.
class ResidueTable {
 public:
  explicit ResidueTable(const FiniteGroupTag& f) : f_(f) {
    const auto d = static_cast<std::size_t>(f.dimension());
    smith_.resize(static_cast<std::size_t>(f.order()));
    reps_.resize(smith_.size());
    for (int j = 1; j < f.order(); ++j) {
      auto& s = smith_[static_cast<std::size_t>(j)];
      s = smith_normal_form(IntMatrix::identity(d) - f.power(j));
      for (Int x : s.diagonal()) {
        if (x == 0) throw std::domain_error("1 - N is singular; torsion classes are infinite");
      }
    }
  }

  const SmithForm& smith(int j) const { return smith_[static_cast<std::size_t>(j)]; }

  IntVector residue(int j, const IntVector& m) const {
    const auto& s = smith(j);
    IntVector r = s.U * m;
    const IntVector diag = s.diagonal();
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = floor_mod(r[i], diag[i]);
    return r;
  }

  // Preferred translation vector in the class: fewest letters, then fewest
  // negative exponents, then earliest letters, then smallest L1 norm.
  IntVector representative(int j, const IntVector& residue) const {
    auto& cache = reps_[static_cast<std::size_t>(j)];
    if (cache.empty()) fill_representatives(j);
    if (auto it = cache.find(residue); it != cache.end()) return it->second;
    return smith(j).U.inverse() * residue;
  }

  int order() const { return f_.order(); }
  const FiniteGroupTag& group() const { return f_; }

 private:
  void fill_representatives(int j) const {
    const auto d = static_cast<std::size_t>(f_.dimension());
    auto& cache = reps_[static_cast<std::size_t>(j)];
    if (d > 4) return;
    constexpr Int radius = 2;
    IntVector m(d, -radius);
    for (;;) {
      const IntVector r = residue(j, m);
      auto it = cache.find(r);
      if (it == cache.end() || representative_key(m) < representative_key(it->second)) cache[r] = m;
      std::size_t i = 0;
      while (i < d && m[i] == radius) m[i++] = -radius;
      if (i == d) break;
      ++m[i];
    }
  }

  FiniteGroupTag f_;
  std::vector<SmithForm> smith_;
  mutable std::vector<std::map<IntVector, IntVector>> reps_;
};

TorsionClass make_class(const ResidueTable& table, int j, IntVector residue) {
  const auto& f = table.group();
  TorsionClass c;
  c.power = j;
  c.point = f.power(j);
  c.representative = table.representative(j, residue);
  c.residue = std::move(residue);
  c.order = element_order({c.representative, c.point}).value_or(0);
  c.label = word_label(c.representative, j, static_cast<std::size_t>(f.dimension()));
  return c;
}

TorsionClass classify_with(const ResidueTable& table, const GroupElement& g) {
  const int j = table.group().power_index(g.point);
  if (j <= 0) throw std::invalid_argument("classify: point part must be a non-identity element of F");
  return make_class(table, j, table.residue(j, g.translation));
}

bool conjugate_with(const ResidueTable& table, const TorsionClass& a, const TorsionClass& b) {
  if (a.power != b.power) return false;
  const auto& f = table.group();
  for (int i = 0; i < f.order(); ++i) {
    if (table.residue(a.power, f.power(i) * a.representative) == b.residue) return true;
  }
  return false;
}

}  // namespace

std::vector<TorsionClass> torsion_classes(const FiniteGroupTag& f) {
  const ResidueTable table(f);
  std::vector<TorsionClass> out;
  for (int j = 1; j < f.order(); ++j) {
    const IntVector diag = table.smith(j).diagonal();
    IntVector r(diag.size(), 0);
    for (;;) {
      out.push_back(make_class(table, j, r));
      std::size_t i = 0;
      while (i < r.size() && r[i] + 1 == diag[i]) r[i++] = 0;
      if (i == r.size()) break;
      ++r[i];
    }
  }
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

TorsionClass classify(const FiniteGroupTag& f, const GroupElement& g) {
  return classify_with(ResidueTable(f), g);
}

bool conjugate_in_group(const FiniteGroupTag& f, const TorsionClass& a, const TorsionClass& b) {
  return conjugate_with(ResidueTable(f), a, b);
}

bool SubgroupClass::contains(const FiniteGroupTag& f, const TorsionClass& c) const {
  const ResidueTable table(f);
  return std::any_of(power_classes.begin(), power_classes.end(),
                     [&](const TorsionClass& p) { return conjugate_with(table, p, c); });
}

std::vector<SubgroupClass> maximal_finite_subgroups(const FiniteGroupTag& f) {
  const ResidueTable table(f);
  std::vector<SubgroupClass> candidates;
  for (auto& c : torsion_classes(f)) {
    SubgroupClass s;
    s.order = c.order;
    const GroupElement g{c.representative, c.point};
    for (int i = 1; i < s.order; ++i) s.power_classes.push_back(classify_with(table, group_pow(g, i)));
    s.generator = std::move(c);
    candidates.push_back(std::move(s));
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order > b.order;
    return class_less(a.generator, b.generator);
  });
  std::vector<SubgroupClass> kept;
  for (auto& cand : candidates) {
    const bool covered = std::any_of(kept.begin(), kept.end(), [&](const SubgroupClass& k) {
      return std::any_of(k.power_classes.begin(), k.power_classes.end(),
                         [&](const TorsionClass& p) { return conjugate_with(table, p, cand.generator); });
    });
    if (!covered) kept.push_back(std::move(cand));
  }
  return kept;
}

}  // namespace nctv::grp
