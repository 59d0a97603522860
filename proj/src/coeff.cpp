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

#include "nctv/coeff.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace nctv::coeff {

namespace {

std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<long> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const long c = num[i];
    quot[i - dd] = c;
    if (c != 0) {
      for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
    }
  }
  for (std::size_t k = 0; k < dd; ++k) {
    if (num[k] != 0) throw std::logic_error("inexact cyclotomic division");
  }
  return quot;
}

int to_int_checked(const mpz_class& z) {
  if (!z.fits_sint_p()) throw std::overflow_error("cyclotomic conductor too large");
  return static_cast<int>(z.get_si());
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::vector<long>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  // x^n - 1 = prod_{d | n} Phi_d(x)
  std::vector<long> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mutex);
  return cache.emplace(n, std::move(poly)).first->second;
}

int euler_phi(int n) { return static_cast<int>(cyclotomic_polynomial(n).size()) - 1; }

// ---------------------------------------------------------------------------
// Cyclotomic

Cyclotomic::Cyclotomic(Rational c) : coeffs_{std::move(c)} {}

Cyclotomic::Cyclotomic(int n, std::vector<Rational> mod_xn) : conductor_(n) {
  reduce(std::move(mod_xn));
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& r) {
  const Rational f = frac(r);
  const int q = to_int_checked(f.get_den());
  const int p = to_int_checked(f.get_num());
  std::vector<Rational> v(static_cast<std::size_t>(q), Rational(0));
  v[static_cast<std::size_t>(p)] = 1;
  return Cyclotomic(q, std::move(v));
}

void Cyclotomic::reduce(std::vector<Rational> p) {
  const auto& phi = cyclotomic_polynomial(conductor_);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (sgn(p[i]) == 0) continue;
    const Rational c = p[i];
    for (std::size_t k = 0; k < deg; ++k) {
      if (phi[k] != 0) p[i - deg + k] -= c * phi[k];
    }
    p[i] = 0;
  }
  p.resize(deg, Rational(0));
  bool rational = true;
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (sgn(p[j]) != 0) {
      rational = false;
      break;
    }
  }
  if (rational) {
    conductor_ = 1;
    coeffs_.assign(1, p.empty() ? Rational(0) : p[0]);
  } else {
    coeffs_ = std::move(p);
  }
}

std::vector<Rational> Cyclotomic::expanded(int m) const {
  std::vector<Rational> v(static_cast<std::size_t>(m), Rational(0));
  const int step = m / conductor_;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) v[j * static_cast<std::size_t>(step)] = coeffs_[j];
  return v;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
  return coeffs_[0];
}

Cyclotomic Cyclotomic::conj() const {
  if (is_rational()) return *this;
  const int n = conductor_;
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    v[(static_cast<std::size_t>(n) - j) % static_cast<std::size_t>(n)] = coeffs_[j];
  }
  return Cyclotomic(n, std::move(v));
}

std::complex<double> Cyclotomic::eval() const {
  std::complex<double> sum = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (sgn(coeffs_[j]) == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / conductor_;
    sum += coeffs_[j].get_d() * std::polar(1.0, angle);
  }
  return sum;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  if (conductor_ == other.conductor_) {
    auto v = expanded(conductor_);
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) v[j] += other.coeffs_[j];
    reduce(std::move(v));
    return *this;
  }
  const int m = std::lcm(conductor_, other.conductor_);
  auto a = expanded(m);
  const auto b = other.expanded(m);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
  conductor_ = m;
  reduce(std::move(a));
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) { return *this += -other; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  if (other.is_rational()) {
    for (auto& c : coeffs_) c *= other.coeffs_[0];
    if (sgn(other.coeffs_[0]) == 0) *this = Cyclotomic();
    return *this;
  }
  const int m = std::lcm(conductor_, other.conductor_);
  const auto a = expanded(m);
  const auto b = other.expanded(m);
  std::vector<Rational> prod(static_cast<std::size_t>(m), Rational(0));
  const auto um = static_cast<std::size_t>(m);
  for (std::size_t i = 0; i < um; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < um; ++j) {
      if (sgn(b[j]) == 0) continue;
      prod[(i + j) % um] += a[i] * b[j];
    }
  }
  conductor_ = m;
  reduce(std::move(prod));
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

// ---------------------------------------------------------------------------
// PhaseScalar

PhaseScalar::PhaseScalar(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Rational(0), Cyclotomic(c));
}

PhaseScalar::PhaseScalar(const Cyclotomic& c) {
  if (!c.is_zero()) terms_.emplace(Rational(0), c);
}

PhaseScalar PhaseScalar::exp(const Rational& r, const Rational& s) {
  PhaseScalar p;
  p.terms_.emplace(s, Cyclotomic::root_of_unity(r));
  return p;
}

void PhaseScalar::add_term(const Rational& s, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    terms_.emplace(s, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool PhaseScalar::is_theta_free() const {
  return terms_.empty() || (terms_.size() == 1 && sgn(terms_.begin()->first) == 0);
}

bool PhaseScalar::as_rational(Rational& out) const {
  if (terms_.empty()) {
    out = 0;
    return true;
  }
  if (!is_theta_free() || !terms_.begin()->second.is_rational()) return false;
  out = terms_.begin()->second.rational_value();
  return true;
}

PhaseScalar PhaseScalar::conj() const {
  PhaseScalar r;
  for (const auto& [s, c] : terms_) r.add_term(-s, c.conj());
  return r;
}

std::complex<double> PhaseScalar::eval(double theta) const {
  std::complex<double> sum = 0.0;
  for (const auto& [s, c] : terms_) {
    const double x = s.get_d() * theta;
    sum += c.eval() * std::polar(1.0, 2.0 * std::numbers::pi * (x - std::floor(x)));
  }
  return sum;
}

PhaseScalar PhaseScalar::specialize(const Rational& value) const {
  PhaseScalar r;
  for (const auto& [s, c] : terms_) {
    r.add_term(Rational(0), c * Cyclotomic::root_of_unity(s * value));
  }
  return r;
}

std::string PhaseScalar::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    const auto& coeffs = c.coefficients();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (sgn(coeffs[j]) == 0) continue;
      if (!out.empty()) out += " + ";
      const Rational r = make_rational(static_cast<long>(j), c.conductor());
      out += to_string(coeffs[j]) + "*e(" + to_string(r);
      if (sgn(s) != 0) out += " + " + to_string(s) + "*theta";
      out += ")";
    }
  }
  return out;
}

PhaseScalar& PhaseScalar::operator+=(const PhaseScalar& other) {
  for (const auto& [s, c] : other.terms_) add_term(s, c);
  return *this;
}

PhaseScalar& PhaseScalar::operator-=(const PhaseScalar& other) {
  for (const auto& [s, c] : other.terms_) add_term(s, -c);
  return *this;
}

PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b) {
  PhaseScalar r;
  for (const auto& [s1, c1] : a.terms_) {
    for (const auto& [s2, c2] : b.terms_) r.add_term(s1 + s2, c1 * c2);
  }
  return r;
}

PhaseScalar& PhaseScalar::operator*=(const PhaseScalar& other) { return *this = *this * other; }

PhaseScalar PhaseScalar::operator-() const {
  PhaseScalar r;
  for (const auto& [s, c] : terms_) r.terms_.emplace(s, -c);
  return r;
}

bool operator==(const PhaseScalar& a, const PhaseScalar& b) { return (a - b).is_zero(); }

}  // namespace nctv::coeff
