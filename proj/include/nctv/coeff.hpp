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

// Exact scalars of the form sum_j c_j * e(r_j + s_j * theta), where
// e(x) = exp(2 pi i x), c_j, r_j, s_j are rational and theta is a formal
// symbol. Equality is equality for every theta simultaneously.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "nctv/rational.hpp"

namespace nctv::coeff {

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree
/// first. Results are cached; safe to call concurrently.
const std::vector<long>& cyclotomic_polynomial(int n);

int euler_phi(int n);

/// Element of Q(zeta_n) in the power basis 1, zeta_n, ..., zeta_n^{phi(n)-1}.
///
/// The coefficient vector is always reduced modulo Phi_n, so an element is
/// zero iff every stored coefficient is zero. Values that turn out rational
/// are stored with conductor 1. Binary operations lift both operands to the
/// lcm of their conductors.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  explicit Cyclotomic(Rational c);

  /// e(r) = zeta_q^p for r = p/q.
  static Cyclotomic root_of_unity(const Rational& r);

  int conductor() const { return conductor_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const { return conductor_ == 1; }
  /// Only meaningful when is_rational().
  Rational rational_value() const;

  Cyclotomic conj() const;
  std::complex<double> eval() const;

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  Cyclotomic operator-() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

 private:
  // Takes coefficients indexed modulo n (any length <= n) and reduces them.
  Cyclotomic(int n, std::vector<Rational> mod_xn);
  std::vector<Rational> expanded(int m) const;
  void reduce(std::vector<Rational> mod_xn);

  int conductor_ = 1;
  std::vector<Rational> coeffs_{Rational(0)};
};

/// Finite sum of Cyclotomic(s) * e(s * theta), keyed by the rational
/// theta-exponent s. Zero coefficients are never stored.
class PhaseScalar {
 public:
  PhaseScalar() = default;
  PhaseScalar(const Rational& c);  // NOLINT: scalars promote implicitly
  PhaseScalar(long c) : PhaseScalar(Rational(c)) {}  // NOLINT
  explicit PhaseScalar(const Cyclotomic& c);

  /// e(r + s * theta).
  static PhaseScalar exp(const Rational& r, const Rational& s = Rational(0));

  const std::map<Rational, Cyclotomic>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// True when no theta-exponent other than 0 occurs.
  bool is_theta_free() const;
  /// True for a rational constant; `out` receives it.
  bool as_rational(Rational& out) const;

  /// c * e(r + s theta) -> conj(c) * e(-r - s theta).
  PhaseScalar conj() const;
  std::complex<double> eval(double theta) const;
  /// Exact substitution theta := value; the result is theta-free.
  PhaseScalar specialize(const Rational& value) const;

  /// Text form "c*e(r + s*theta)" joined by " + ", or "0".
  std::string render() const;

  PhaseScalar& operator+=(const PhaseScalar& other);
  PhaseScalar& operator-=(const PhaseScalar& other);
  PhaseScalar& operator*=(const PhaseScalar& other);
  friend PhaseScalar operator+(PhaseScalar a, const PhaseScalar& b) { return a += b; }
  friend PhaseScalar operator-(PhaseScalar a, const PhaseScalar& b) { return a -= b; }
  friend PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b);
  PhaseScalar operator-() const;

  friend bool operator==(const PhaseScalar& a, const PhaseScalar& b);

 private:
  void add_term(const Rational& s, const Cyclotomic& c);

  std::map<Rational, Cyclotomic> terms_;
};

}  // namespace nctv::coeff
