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

#include "nctv/tga.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nctv::tga {

using grp::IntMatrix;

namespace {

PhaseScalar theta_exp(long num, long den) { return PhaseScalar::exp(Rational(0), make_rational(num, den)); }

std::vector<Rational> standard_symplectic() { return {Rational(0), Rational(1), Rational(-1), Rational(0)}; }

void require_compatible(const Algebra& a, const Algebra& b) {
  if (!a.same_as(b)) throw std::invalid_argument("algebra elements over different cocycles");
}

}  // namespace

// ---------------------------------------------------------------------------
// CocycleSpec

CocycleSpec CocycleSpec::formal() {
  CocycleSpec c;
  c.d_ = 2;
  c.mode_ = ThetaMode::formal;
  c.c_.assign(4, Rational(0));
  c.s_ = standard_symplectic();
  return c;
}

CocycleSpec CocycleSpec::rational(const Rational& value) { return formal().specialized(value); }

CocycleSpec CocycleSpec::numeric(double value) {
  CocycleSpec c = formal();
  c.mode_ = ThetaMode::numeric;
  c.numeric_ = value;
  return c;
}

CocycleSpec CocycleSpec::skew(const std::vector<std::vector<Rational>>& theta) {
  const std::size_t d = theta.size();
  if (d == 0) throw std::invalid_argument("skew: empty parameter matrix");
  CocycleSpec c;
  c.d_ = static_cast<int>(d);
  c.mode_ = ThetaMode::rational;
  c.c_.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (theta[i].size() != d) throw std::invalid_argument("skew: parameter matrix is not square");
    for (std::size_t j = 0; j < d; ++j) {
      if (theta[i][j] != -theta[j][i]) throw std::invalid_argument("skew: parameter matrix is not skew-symmetric");
      c.c_.push_back(theta[i][j]);
    }
  }
  c.s_.assign(d * d, Rational(0));
  return c;
}

CocycleSpec CocycleSpec::untwisted(int d) {
  return skew(std::vector<std::vector<Rational>>(static_cast<std::size_t>(d),
                                                 std::vector<Rational>(static_cast<std::size_t>(d))));
}

PhaseScalar CocycleSpec::theta_phase(int j, int k, const Rational& scale) const {
  const auto i = static_cast<std::size_t>(j * d_ + k);
  return PhaseScalar::exp(scale * c_[i], scale * s_[i]);
}

PhaseScalar CocycleSpec::omega(const IntVector& x, const IntVector& y) const {
  if (static_cast<int>(x.size()) != d_ || static_cast<int>(y.size()) != d_) {
    throw std::invalid_argument("omega: dimension mismatch");
  }
  Rational r(0), s(0);
  const auto d = static_cast<std::size_t>(d_);
  for (std::size_t i = 0; i < d; ++i) {
    if (y[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (x[j] == 0) continue;
      const Rational w(x[j] * y[i]);
      r += c_[i * d + j] * w;
      s += s_[i * d + j] * w;
    }
  }
  return PhaseScalar::exp(r / 2, s / 2);
}

PhaseScalar CocycleSpec::omega(const GroupElement& g, const GroupElement& h) const {
  return omega(g.translation, g.point * h.translation);
}

CocycleSpec CocycleSpec::specialized(const Rational& value) const {
  CocycleSpec c = *this;
  c.mode_ = ThetaMode::rational;
  for (std::size_t i = 0; i < c.c_.size(); ++i) {
    c.c_[i] += value * c.s_[i];
    c.s_[i] = 0;
  }
  return c;
}

std::string CocycleSpec::describe() const {
  if (d_ == 2) {
    switch (mode_) {
      case ThetaMode::formal: return "theta formal";
      case ThetaMode::numeric: return "theta = " + std::to_string(numeric_);
      case ThetaMode::rational: return "theta = " + to_string(c_[1]);
    }
  }
  std::string out = "Theta = [";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i > 0) out += i % static_cast<std::size_t>(d_) == 0 ? "; " : ", ";
    out += to_string(c_[i]);
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Algebra

AlgebraPtr make_algebra(const FiniteGroupTag& group, const CocycleSpec& cocycle) {
  if (group.dimension() != cocycle.dimension()) {
    throw std::invalid_argument("make_algebra: group and cocycle dimensions differ");
  }
  return std::make_shared<const Algebra>(group, cocycle);
}

Algebra::Algebra(FiniteGroupTag group, CocycleSpec cocycle) : group_(std::move(group)), cocycle_(std::move(cocycle)) {}

AlgebraElement Algebra::zero() const { return AlgebraElement(shared_from_this(), {}); }

AlgebraElement Algebra::one() const { return scalar(PhaseScalar(1)); }

AlgebraElement Algebra::scalar(const PhaseScalar& c) const {
  return delta(GroupElement::identity(static_cast<std::size_t>(dimension())), c);
}

AlgebraElement Algebra::delta(const GroupElement& g, const PhaseScalar& c) const {
  if (static_cast<int>(g.translation.size()) != dimension() || group_.power_index(g.point) < 0) {
    throw std::invalid_argument("delta: element is not in the group");
  }
  std::map<GroupElement, PhaseScalar> terms;
  if (!c.is_zero()) terms.emplace(g, c);
  return AlgebraElement(shared_from_this(), std::move(terms));
}

AlgebraElement Algebra::u(int k) const {
  if (k < 0 || k >= dimension()) throw std::out_of_range("u: generator index out of range");
  GroupElement g = GroupElement::identity(static_cast<std::size_t>(dimension()));
  g.translation[static_cast<std::size_t>(k)] = 1;
  return delta(g);
}

AlgebraElement Algebra::v() const { return u(1); }

AlgebraElement Algebra::t() const {
  return delta({IntVector(static_cast<std::size_t>(dimension()), 0), group_.generator()});
}

std::vector<AlgebraElement> Algebra::generators() const {
  std::vector<AlgebraElement> out;
  for (int k = 0; k < dimension(); ++k) out.push_back(u(k));
  out.push_back(t());
  return out;
}

AlgebraPtr Algebra::specialized(const Rational& value) const {
  return make_algebra(group_, cocycle_.specialized(value));
}

AlgebraPtr Algebra::untwisted() const { return make_algebra(group_, CocycleSpec::untwisted(dimension())); }

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::map<GroupElement, PhaseScalar> terms)
    : algebra_(std::move(algebra)) {
  for (auto& [g, c] : terms) {
    if (!c.is_zero()) terms_.emplace(g, std::move(c));
  }
}

void AlgebraElement::add(const GroupElement& g, const PhaseScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(g, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PhaseScalar AlgebraElement::coefficient(const GroupElement& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? PhaseScalar() : it->second;
}

AlgebraElement AlgebraElement::adjoint() const {
  AlgebraElement out(algebra_, {});
  const auto& omega = algebra_->cocycle();
  for (const auto& [g, c] : terms_) {
    const GroupElement inv = grp::group_inverse(g);
    out.add(inv, c.conj() * omega.omega(inv, g).conj());
  }
  return out;
}

PhaseScalar AlgebraElement::trace() const {
  return coefficient(GroupElement::identity(static_cast<std::size_t>(algebra_->dimension())));
}

AlgebraElement AlgebraElement::pow(int j) const {
  if (j < 0) throw std::invalid_argument("pow: negative exponent");
  AlgebraElement out = algebra_->one();
  for (int i = 0; i < j; ++i) out = out * *this;
  return out;
}

AlgebraElement AlgebraElement::specialize(const Rational& value) const {
  AlgebraElement out(algebra_->specialized(value), {});
  for (const auto& [g, c] : terms_) out.add(g, c.specialize(value));
  return out;
}

std::map<GroupElement, std::complex<double>> AlgebraElement::evaluate(double theta) const {
  std::map<GroupElement, std::complex<double>> out;
  for (const auto& [g, c] : terms_) out.emplace(g, c.eval(theta));
  return out;
}

std::map<GroupElement, std::complex<double>> AlgebraElement::evaluate() const {
  return evaluate(algebra_->cocycle().numeric_value());
}

std::string AlgebraElement::render() const {
  if (terms_.empty()) return "0";
  const auto d = static_cast<std::size_t>(algebra_->dimension());
  // word order: by power of t, then translation
  std::vector<std::pair<int, const GroupElement*>> order;
  for (const auto& term : terms_) order.emplace_back(algebra_->group().power_index(term.first.point), &term.first);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second->translation < b.second->translation;
  });
  std::string out;
  for (const auto& [power, gp] : order) {
    const GroupElement& g = *gp;
    const PhaseScalar& c = terms_.at(g);
    // delta_g = conj(lambda) * u^a v^b t^j where u^a v^b t^j = lambda * delta_g
    Word monomial;
    for (std::size_t i = 0; i < d; ++i) {
      if (g.translation[i] != 0) monomial.letters.push_back({static_cast<int>(i), static_cast<int>(g.translation[i])});
    }
    if (power > 0) monomial.letters.push_back({-1, power});
    const PhaseScalar lambda = evaluate_word(monomial, algebra_).coefficient(g);
    if (!out.empty()) out += " + ";
    out += "(" + (c * lambda.conj()).render() + ")";
    const std::string label = grp::word_label(g.translation, power, d);
    if (label != "1") out += label;
  }
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_compatible(*algebra_, *other.algebra_);
  for (const auto& [g, c] : other.terms_) add(g, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_compatible(*algebra_, *other.algebra_);
  for (const auto& [g, c] : other.terms_) add(g, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out(algebra_, {});
  for (const auto& [g, c] : terms_) out.terms_.emplace(g, -c);
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_compatible(*a.algebra_, *b.algebra_);
  const auto& omega = a.algebra_->cocycle();
  AlgebraElement out(a.algebra_, {});
  for (const auto& [g, x] : a.terms_) {
    for (const auto& [h, y] : b.terms_) out.add(grp::group_mul(g, h), x * y * omega.omega(g, h));
  }
  return out;
}

AlgebraElement operator*(const PhaseScalar& c, const AlgebraElement& a) {
  AlgebraElement out(a.algebra_, {});
  for (const auto& [g, x] : a.terms_) out.add(g, c * x);
  return out;
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.algebra_->same_as(*b.algebra_) || a.terms_.size() != b.terms_.size()) return false;
  return (a - b).is_zero();
}

bool is_projection(const AlgebraElement& a) { return a == a.adjoint() && a * a == a; }

int unitary_order(const AlgebraElement& a, int cap) {
  const AlgebraElement one = a.algebra()->one();
  const AlgebraElement star = a.adjoint();
  if (!(a * star == one) || !(star * a == one)) throw std::domain_error("unitary_order: element is not unitary");
  AlgebraElement p = a;
  for (int j = 1; j <= cap; ++j) {
    if (p == one) return j;
    p = p * a;
  }
  return 0;
}

AlgebraElement spectral_sum(const AlgebraElement& x, const PhaseScalar& c, int n) {
  if (n < 1) throw std::invalid_argument("spectral_sum: period must be positive");
  const AlgebraElement step = c * x;
  AlgebraElement power = x.algebra()->one();
  AlgebraElement sum = power;
  for (int i = 1; i < n; ++i) {
    power = power * step;
    sum += power;
  }
  return PhaseScalar(make_rational(1, n)) * sum;
}

// ---------------------------------------------------------------------------
// Words

Word Word::parse(const std::string& text, const PhaseScalar& coefficient) {
  Word w;
  w.coefficient = coefficient;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    Letter l;
    std::string base = token;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      base = token.substr(0, caret);
      l.exponent = std::stoi(token.substr(caret + 1));
    }
    if (base == "t") {
      l.generator = -1;
    } else if (base == "u") {
      l.generator = 0;
    } else if (base == "v") {
      l.generator = 1;
    } else if (base.size() > 1 && base[0] == 'u') {
      l.generator = std::stoi(base.substr(1)) - 1;
      if (l.generator < 0) throw std::invalid_argument("word: generator index must be positive: " + token);
    } else {
      throw std::invalid_argument("word: unknown letter " + token);
    }
    w.letters.push_back(l);
  }
  return w;
}

Word Word::specialized(const Rational& value) const {
  Word w = *this;
  w.coefficient = coefficient.specialize(value);
  return w;
}

std::string Word::render(int dimension) const {
  std::string out;
  for (const auto& l : letters) {
    if (!out.empty()) out += " ";
    if (l.generator < 0) {
      out += "t";
    } else if (dimension == 2) {
      out += l.generator == 0 ? "u" : "v";
    } else {
      out += "u" + std::to_string(l.generator + 1);
    }
    if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
  }
  if (out.empty()) out = "1";
  if (coefficient == PhaseScalar(1)) return out;
  return "(" + coefficient.render() + ") " + out;
}

AlgebraElement evaluate_word(const Word& w, const AlgebraPtr& algebra, const std::vector<AlgebraElement>& images) {
  const int d = algebra->dimension();
  if (static_cast<int>(images.size()) != d + 1) throw std::invalid_argument("evaluate_word: need d + 1 images");
  AlgebraElement out = algebra->scalar(w.coefficient);
  for (const auto& l : w.letters) {
    if (l.generator >= d) throw std::invalid_argument("evaluate_word: generator index out of range");
    const AlgebraElement& g = images[static_cast<std::size_t>(l.generator < 0 ? d : l.generator)];
    const AlgebraElement step = l.exponent < 0 ? g.adjoint() : g;
    for (int i = 0; i < std::abs(l.exponent); ++i) out = out * step;
  }
  return out;
}

AlgebraElement evaluate_word(const Word& w, const AlgebraPtr& algebra) {
  return evaluate_word(w, algebra, algebra->generators());
}

// ---------------------------------------------------------------------------
// Relation tables

std::vector<Relation> generator_relations(const FiniteGroupTag& group, const CocycleSpec& cocycle) {
  const int d = group.dimension();
  std::vector<Relation> out;
  const int k = group.order();
  out.push_back({"t^" + std::to_string(k) + " = 1", Word::parse("t^" + std::to_string(k)), Word::parse("1")});
  if (group.kind() == grp::GroupKind::flip) {
    for (int i = 1; i <= d; ++i) {
      const std::string u = "u" + std::to_string(i);
      out.push_back({"t " + u + " t^-1 = " + u + "^-1", Word::parse("t " + u + " t^-1"), Word::parse(u + "^-1")});
    }
    for (int j = 1; j <= d; ++j) {
      for (int i = j + 1; i <= d; ++i) {
        const std::string uj = "u" + std::to_string(j), ui = "u" + std::to_string(i);
        out.push_back({ui + " " + uj + " = e(Theta_" + std::to_string(j) + std::to_string(i) + ") " + uj + " " + ui,
                       Word::parse(ui + " " + uj), Word::parse(uj + " " + ui, cocycle.theta_phase(j - 1, i - 1))});
      }
    }
    return out;
  }
  out.push_back({"v u = e(theta) u v", Word::parse("v u"), Word::parse("u v", cocycle.theta_phase(0, 1))});
  const PhaseScalar half = cocycle.theta_phase(0, 1, make_rational(-1, 2));
  auto conj_rel = [&](const std::string& gen, const std::string& rhs, const PhaseScalar& c, const std::string& shown) {
    out.push_back({"t " + gen + " t^-1 = " + shown, Word::parse("t " + gen + " t^-1"), Word::parse(rhs, c)});
  };
  switch (k) {
    case 2:
      conj_rel("u", "u^-1", 1, "u^-1");
      conj_rel("v", "v^-1", 1, "v^-1");
      break;
    case 3:
      conj_rel("u", "u^-1 v", half, "e(-theta/2) u^-1 v");
      conj_rel("v", "u^-1", 1, "u^-1");
      break;
    case 4:
      conj_rel("u", "v", 1, "v");
      conj_rel("v", "u^-1", 1, "u^-1");
      break;
    case 6:
      conj_rel("u", "v", 1, "v");
      conj_rel("v", "u^-1 v", half, "e(-theta/2) u^-1 v");
      break;
    default:
      throw std::invalid_argument("generator_relations: unsupported group");
  }
  return out;
}

std::vector<RelationCheck> check_generator_relations(const AlgebraPtr& algebra) {
  std::vector<RelationCheck> out;
  for (const auto& rel : generator_relations(algebra->group(), algebra->cocycle())) {
    const AlgebraElement diff = evaluate_word(rel.lhs, algebra) - evaluate_word(rel.rhs, algebra);
    out.push_back({rel.name, diff.is_zero(), diff.render()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unitaries and projections

namespace {

// phi_1 = -e(theta/2), phi_2 = e((2 + theta)/6), phi_3 = i e(theta/4)
PhaseScalar phi1() { return PhaseScalar::exp(make_rational(1, 2), make_rational(1, 2)); }
PhaseScalar phi2() { return PhaseScalar::exp(make_rational(1, 3), make_rational(1, 6)); }
PhaseScalar phi3() { return PhaseScalar::exp(make_rational(1, 4), make_rational(1, 4)); }
PhaseScalar amended_phase() { return PhaseScalar::exp(make_rational(1, 3), make_rational(2, 3)); }
PhaseScalar root(long num, long den) { return PhaseScalar::exp(make_rational(num, den)); }

ProjectionSpec spec(std::string name, std::string formula, PhaseScalar c, Word base, int period, long trace_den) {
  return {std::move(name), std::move(formula), std::move(c), std::move(base), period, make_rational(1, trace_den)};
}

ProjectionSpec unit() { return spec("1", "1", 1, Word::parse("1"), 1, 1); }

}  // namespace

std::vector<NamedUnitary> corrected_unitaries(int k) {
  switch (k) {
    case 2:
      return {{"T", Word::parse("t"), 2, Word::parse("t")},
              {"-UT", Word::parse("u t", -1), 2, Word::parse("u t")},
              {"-VT", Word::parse("v t", -1), 2, Word::parse("v t")},
              {"phi1 UVT", Word::parse("u v t", phi1()), 2, Word::parse("u v t")}};
    case 3:
      return {{"T", Word::parse("t"), 3, Word::parse("t")},
              {"phi2 UT", Word::parse("u t", phi2()), 3, Word::parse("u t")},
              {"U^2T", Word::parse("u^2 t"), 3, Word::parse("u^2 t")}};
    case 4:
      return {{"T", Word::parse("t"), 4, Word::parse("t")},
              {"phi3 UT", Word::parse("u t", phi3()), 4, Word::parse("u t")},
              {"-UT^2", Word::parse("u t^2", -1), 2, Word::parse("u t^2")}};
    case 6:
      return {{"T", Word::parse("t"), 6, Word::parse("t")},
              {"phi2 UT^2", Word::parse("u t^2", phi2()), 3, Word::parse("u t^2")},
              {"-UT^3", Word::parse("u t^3", -1), 2, Word::parse("u t^3")}};
    default:
      throw std::invalid_argument("corrected_unitaries: k must be 2, 3, 4 or 6");
  }
}

std::vector<NamedUnitary> amended_unitaries(int k) {
  if (k != 3) return {};
  return {{"e((1 + 2theta)/3) U^2T", Word::parse("u^2 t", amended_phase()), 3, Word::parse("u^2 t")}};
}

std::vector<ProjectionSpec> amended_projections(int k) {
  if (k != 3) return {};
  const Word w = Word::parse("u^2 t", amended_phase());
  return {spec("r0", "(1/3)(1 + w + w^2), w = e((1 + 2theta)/3) u^2t", 1, w, 3, 3),
          spec("r1", "(1/3)(1 + zeta w + (zeta w)^2), w = e((1 + 2theta)/3) u^2t", root(1, 3), w, 3, 3)};
}

std::vector<ProjectionSpec> projection_family(int k) {
  switch (k) {
    case 2:
      return {unit(),
              spec("p", "(1/2)(1 + t)", 1, Word::parse("t"), 2, 2),
              spec("q0", "(1/2)(1 - ut)", -1, Word::parse("u t"), 2, 2),
              spec("q1", "(1/2)(1 - vt)", -1, Word::parse("v t"), 2, 2),
              spec("r", "(1/2)(1 - e(theta/2) uvt)", -1, Word::parse("u v t", theta_exp(1, 2)), 2, 2)};
    case 3: {
      const Word w = Word::parse("u t", phi2());
      return {unit(),
              spec("p0", "(1/3)(1 + t + t^2)", 1, Word::parse("t"), 3, 3),
              spec("p1", "(1/3)(1 + zeta t + (zeta t)^2)", root(1, 3), Word::parse("t"), 3, 3),
              spec("q0", "(1/3)(1 + w + w^2), w = e((2 + theta)/6) ut", 1, w, 3, 3),
              spec("q1", "(1/3)(1 + zeta w + (zeta w)^2), w = e((2 + theta)/6) ut", root(1, 3), w, 3, 3),
              spec("r0", "(1/3)(1 + u^2t + (u^2t)^2)", 1, Word::parse("u^2 t"), 3, 3),
              spec("r1", "(1/3)(1 + zeta u^2t + (zeta u^2t)^2)", root(1, 3), Word::parse("u^2 t"), 3, 3)};
    }
    case 4: {
      const Word w = Word::parse("u t", theta_exp(1, 4));
      return {unit(),
              spec("p0", "(1/4)(1 + t + t^2 + t^3)", 1, Word::parse("t"), 4, 4),
              spec("p1", "(1/4)(1 + it - t^2 - it^3)", root(1, 4), Word::parse("t"), 4, 4),
              spec("p2", "(1/4)(1 - t + t^2 - t^3)", -1, Word::parse("t"), 4, 4),
              spec("q0", "(1/4)(1 + iw - w^2 - iw^3), w = e(theta/4) ut", root(1, 4), w, 4, 4),
              spec("q1", "(1/4)(1 - w + w^2 - w^3), w = e(theta/4) ut", -1, w, 4, 4),
              spec("q2", "(1/4)(1 - iw - w^2 + iw^3), w = e(theta/4) ut", root(3, 4), w, 4, 4),
              spec("r", "(1/2)(1 - ut^2)", -1, Word::parse("u t^2"), 2, 2)};
    }
    case 6: {
      std::vector<ProjectionSpec> out{unit()};
      for (int j = 0; j <= 4; ++j) {
        out.push_back(spec("p" + std::to_string(j), "(1/6) sum_i (zeta^" + std::to_string(j) + " t)^i", root(j, 6),
                           Word::parse("t"), 6, 6));
      }
      const Word w = Word::parse("u t^2", phi2());
      out.push_back(spec("q0", "(1/3)(1 + w + w^2), w = e((2 + theta)/6) ut^2", 1, w, 3, 3));
      out.push_back(spec("q1", "(1/3)(1 + zeta^2 w + (zeta^2 w)^2), w = e((2 + theta)/6) ut^2", root(1, 3), w, 3, 3));
      out.push_back(spec("r", "(1/2)(1 - ut^3)", -1, Word::parse("u t^3"), 2, 2));
      return out;
    }
    default:
      throw std::invalid_argument("projection_family: k must be 2, 3, 4 or 6");
  }
}

std::vector<ProjectionSpec> untwisted_projection_family(int k) {
  switch (k) {
    case 2:
      return {unit(),
              spec("p", "(1/2)(1 + t)", 1, Word::parse("t"), 2, 2),
              spec("q0", "(1/2)(1 + ut)", 1, Word::parse("u t"), 2, 2),
              spec("q1", "(1/2)(1 + vt)", 1, Word::parse("v t"), 2, 2),
              spec("r", "(1/2)(1 + uvt)", 1, Word::parse("u v t"), 2, 2)};
    case 3:
      return {unit(),
              spec("p0", "(1/3)(1 + t + t^2)", 1, Word::parse("t"), 3, 3),
              spec("p1", "(1/3)(1 + zeta t + (zeta t)^2)", root(1, 3), Word::parse("t"), 3, 3),
              spec("q0", "(1/3)(1 + ut + (ut)^2)", 1, Word::parse("u t"), 3, 3),
              spec("q1", "(1/3)(1 + zeta ut + (zeta ut)^2)", root(1, 3), Word::parse("u t"), 3, 3),
              spec("r0", "(1/3)(1 + u^2t + (u^2t)^2)", 1, Word::parse("u^2 t"), 3, 3),
              spec("r1", "(1/3)(1 + zeta u^2t + (zeta u^2t)^2)", root(1, 3), Word::parse("u^2 t"), 3, 3)};
    case 4:
      return {unit(),
              spec("p0", "(1/4)(1 + t + t^2 + t^3)", 1, Word::parse("t"), 4, 4),
              spec("p1", "(1/4)(1 + it - t^2 - it^3)", root(1, 4), Word::parse("t"), 4, 4),
              spec("p2", "(1/4)(1 - t + t^2 - t^3)", -1, Word::parse("t"), 4, 4),
              spec("q0", "(1/4)(1 + ut + (ut)^2 + (ut)^3)", 1, Word::parse("u t"), 4, 4),
              spec("q1", "(1/4)(1 + iut - (ut)^2 - i(ut)^3)", root(1, 4), Word::parse("u t"), 4, 4),
              spec("q2", "(1/4)(1 - ut + (ut)^2 - (ut)^3)", -1, Word::parse("u t"), 4, 4),
              spec("r", "(1/2)(1 + ut^2)", 1, Word::parse("u t^2"), 2, 2)};
    case 6: {
      std::vector<ProjectionSpec> out{unit()};
      for (int j = 0; j <= 4; ++j) {
        out.push_back(spec("p" + std::to_string(j), "(1/6) sum_i (zeta^" + std::to_string(j) + " t)^i", root(j, 6),
                           Word::parse("t"), 6, 6));
      }
      out.push_back(spec("q0", "(1/3)(1 + ut^2 + (ut^2)^2)", 1, Word::parse("u t^2"), 3, 3));
      out.push_back(spec("q1", "(1/3)(1 + zeta^2 ut^2 + (zeta^2 ut^2)^2)", root(1, 3), Word::parse("u t^2"), 3, 3));
      out.push_back(spec("r", "(1/2)(1 + ut^3)", 1, Word::parse("u t^3"), 2, 2));
      return out;
    }
    default:
      throw std::invalid_argument("untwisted_projection_family: k must be 2, 3, 4 or 6");
  }
}

AlgebraElement build(const ProjectionSpec& p, const AlgebraPtr& algebra) {
  return spectral_sum(evaluate_word(p.base, algebra), p.root, p.period);
}

std::vector<ProjectionCheck> check_projection_family(int k) { return check_projections(k, projection_family(k)); }

std::vector<ProjectionCheck> check_projections(int k, const std::vector<ProjectionSpec>& family) {
  const auto algebra = make_algebra(FiniteGroupTag::cyclic(k), CocycleSpec::formal());
  std::vector<ProjectionCheck> out;
  for (const auto& p : family) {
    const AlgebraElement e = build(p, algebra);
    ProjectionCheck c;
    c.name = p.name;
    c.formula = p.formula;
    c.self_adjoint = e == e.adjoint();
    c.idempotent = e * e == e;
    c.trace = e.trace();
    c.expected_trace = p.expected_trace;
    c.trace_matches = c.trace == PhaseScalar(p.expected_trace);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<UnitaryCheck> check_unitary_orders(int k) { return check_unitaries(k, corrected_unitaries(k)); }

std::vector<UnitaryCheck> check_unitaries(int k, const std::vector<NamedUnitary>& unitaries) {
  const auto algebra = make_algebra(FiniteGroupTag::cyclic(k), CocycleSpec::formal());
  std::vector<UnitaryCheck> out;
  for (const auto& u : unitaries) {
    UnitaryCheck c{u.name, u.expected_order, 0};
    try {
      c.order = unitary_order(evaluate_word(u.word, algebra));
    } catch (const std::domain_error&) {
      c.order = 0;
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fibers at theta = 1 and theta = 0

AlgebraElement fiber_one_map(const AlgebraElement& a) {
  const auto& alg = *a.algebra();
  if (alg.dimension() != 2 || !(alg.cocycle() == CocycleSpec::rational(Rational(1)))) {
    throw std::invalid_argument("fiber_one_map: element must live over theta = 1");
  }
  auto flat = alg.untwisted();
  std::map<GroupElement, PhaseScalar> terms;
  for (const auto& [g, c] : a.terms()) {
    const grp::Int x = g.translation[0], y = g.translation[1];
    const bool odd = ((x * y + x + y) % 2) != 0;
    terms.emplace(g, odd ? -c : c);
  }
  return AlgebraElement(flat, std::move(terms));
}

std::vector<FiberCheck> fiber_one_identification(int k) {
  const FiniteGroupTag group = FiniteGroupTag::cyclic(k);
  const auto twisted = make_algebra(group, CocycleSpec::formal());
  const auto at_one = twisted->specialized(Rational(1));
  const auto flat = twisted->untwisted();
  const std::vector<AlgebraElement> signed_images{-flat->u(0), -flat->u(1), flat->t()};
  std::vector<FiberCheck> out;
  auto record = [&](std::string kind, std::string name, bool passed, std::string detail = {}) {
    out.push_back({std::move(kind), std::move(name), passed, std::move(detail)});
  };

  const auto gens_one = at_one->generators();
  record("homomorphism", "u -> -u, v -> -v, t -> t",
         fiber_one_map(gens_one[0]) == signed_images[0] && fiber_one_map(gens_one[1]) == signed_images[1] &&
             fiber_one_map(gens_one[2]) == signed_images[2]);

  // multiplicativity of the sign map on a window of group elements
  std::vector<AlgebraElement> window;
  for (grp::Int a = -1; a <= 1; ++a) {
    for (grp::Int b = -1; b <= 1; ++b) {
      for (int j = 0; j < k; ++j) window.push_back(at_one->delta({{a, b}, group.power(j)}));
    }
  }
  std::size_t failures = 0;
  for (const auto& x : window) {
    for (const auto& y : window) {
      if (!(fiber_one_map(x * y) == fiber_one_map(x) * fiber_one_map(y))) ++failures;
    }
  }
  record("homomorphism", "sign map multiplicative on |a|, |b| <= 1", failures == 0,
         std::to_string(failures) + " of " + std::to_string(window.size() * window.size()) + " products differ");

  for (const auto& rel : generator_relations(group, twisted->cocycle())) {
    const Word l1 = rel.lhs.specialized(Rational(1)), r1 = rel.rhs.specialized(Rational(1));
    const AlgebraElement l_flat = evaluate_word(l1, flat, signed_images);
    const AlgebraElement r_flat = evaluate_word(r1, flat, signed_images);
    record("relation", rel.name, l_flat == r_flat, (l_flat - r_flat).render());
    const bool consistent = fiber_one_map(evaluate_word(l1, at_one)) == l_flat &&
                            fiber_one_map(evaluate_word(r1, at_one)) == r_flat;
    record("relation-image", rel.name, consistent);
    const AlgebraElement l0 = evaluate_word(rel.lhs.specialized(Rational(0)), flat);
    const AlgebraElement r0 = evaluate_word(rel.rhs.specialized(Rational(0)), flat);
    record("theta-zero", rel.name, l0 == r0, (l0 - r0).render());
  }

  auto unitaries = corrected_unitaries(k);
  for (auto& u : amended_unitaries(k)) unitaries.push_back(std::move(u));
  for (const auto& u : unitaries) {
    const AlgebraElement image = fiber_one_map(evaluate_word(u.word, twisted).specialize(Rational(1)));
    const AlgebraElement expected = evaluate_word(u.fiber_one_image, flat);
    record("unitary", u.name + " -> " + u.fiber_one_image.render(2), image == expected, image.render());
  }

  const auto twisted_family = projection_family(k);
  const auto flat_family = untwisted_projection_family(k);
  for (std::size_t i = 0; i < twisted_family.size(); ++i) {
    const AlgebraElement image = fiber_one_map(build(twisted_family[i], twisted).specialize(Rational(1)));
    const AlgebraElement expected = build(flat_family[i], flat);
    record("projection", twisted_family[i].name + " -> " + flat_family[i].formula, image == expected, image.render());
    const AlgebraElement at_zero = build(twisted_family[i], twisted).specialize(Rational(0));
    record("theta-zero", twisted_family[i].name + " is a projection", at_zero.algebra()->same_as(*flat) &&
                                                                         is_projection(at_zero));
  }
  record("theta-zero", "cocycle at theta = 0 is trivial", twisted->cocycle().specialized(Rational(0)) ==
                                                             CocycleSpec::untwisted(2));
  return out;
}

}  // namespace nctv::tga
