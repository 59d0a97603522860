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

#include <random>

#include "doctest.h"
#include "nctv/coeff.hpp"

using nctv::make_rational;
using nctv::Rational;
using nctv::coeff::Cyclotomic;
using nctv::coeff::PhaseScalar;

namespace {

PhaseScalar e(long rn, long rd, long sn = 0, long sd = 1) {
  return PhaseScalar::exp(make_rational(rn, rd), make_rational(sn, sd));
}

// Random sparse scalar with small denominators so conductors stay modest.
PhaseScalar random_scalar(std::mt19937& rng) {
  static const long dens[] = {1, 2, 3, 4, 6, 12};
  std::uniform_int_distribution<int> terms(1, 3), den_pick(0, 5), num(-6, 6), coef(-3, 3);
  PhaseScalar p;
  const int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    const long rd = dens[den_pick(rng)];
    const long sd = dens[den_pick(rng) % 3];
    p += PhaseScalar(make_rational(coef(rng), 1 + (i % 2))) * e(num(rng), rd, num(rng), sd);
  }
  return p;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(nctv::coeff::cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(nctv::coeff::cyclotomic_polynomial(3) == std::vector<long>{1, 1, 1});
  CHECK(nctv::coeff::cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
  CHECK(nctv::coeff::cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(nctv::coeff::cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(nctv::coeff::euler_phi(12) == 4);
  CHECK(nctv::coeff::euler_phi(7) == 6);
}

TEST_CASE("phase products and conjugates") {
  // e(1/4 + t/2) * e(1/4 - t/2) = e(1/2) = -1
  CHECK(e(1, 4, 1, 2) * e(1, 4, -1, 2) == PhaseScalar(-1));
  CHECK(e(1, 4).conj() == e(3, 4));
  CHECK(e(3, 4) == PhaseScalar(Cyclotomic(Rational(-1))) * e(1, 4));
  // (1 + e(1/3)) (1 + e(2/3)) = 1
  CHECK((PhaseScalar(1) + e(1, 3)) * (PhaseScalar(1) + e(2, 3)) == PhaseScalar(1));
  // zeta_6 = -zeta_3^2 : conductors 3 and 6 compare correctly
  CHECK(e(1, 6) == -e(2, 3));
}

TEST_CASE("zero testing") {
  CHECK((PhaseScalar(1) + e(1, 3) + e(2, 3)).is_zero());
  CHECK_FALSE((PhaseScalar(1) + e(1, 5)).is_zero());
  CHECK((e(0, 1, 1, 2) - e(0, 1, 1, 2)).is_zero());
  CHECK((PhaseScalar(1) + e(1, 5) + e(2, 5) + e(3, 5) + e(4, 5)).is_zero());
  CHECK_FALSE((e(0, 1, 1, 2) - e(1, 1, 1, 3)).is_zero());
}

TEST_CASE("numeric evaluation") {
  const double tol = 1e-12;
  CHECK(std::abs(e(0, 1, 1, 2).eval(0.5) - std::complex<double>(0, 1)) < tol);
  CHECK(std::abs(e(0, 1, 1, 2).eval(1.0) - std::complex<double>(-1, 0)) < tol);
  const auto phi2 = e(1, 3, 1, 6);  // e((2 + t) / 6)
  CHECK(std::abs(phi2.eval(1.0) + 1.0) < tol);
}

TEST_CASE("exact specialization folds theta into roots of unity") {
  const auto phi2 = e(1, 3, 1, 6);
  CHECK(phi2.specialize(Rational(1)) == PhaseScalar(-1));
  CHECK(e(0, 1, -1, 2).specialize(Rational(1)) == PhaseScalar(-1));
  CHECK(e(0, 1, 1, 4).specialize(Rational(1)) == e(1, 4));
  CHECK(e(0, 1, 1, 2).specialize(make_rational(1, 3)) == e(1, 6));
  CHECK(e(0, 1, 7, 3).specialize(Rational(0)) == PhaseScalar(1));
}

TEST_CASE("rendering") {
  CHECK(PhaseScalar().render() == "0");
  CHECK(e(0, 1, 1, 2).render() == "1*e(0 + 1/2*theta)");
  CHECK((PhaseScalar(make_rational(1, 3))).render() == "1/3*e(0)");
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(20261015);
  std::uniform_real_distribution<double> theta(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a + b == b + a);
    REQUIRE(a.conj().conj() == a);
    REQUIRE((a * b).conj() == a.conj() * b.conj());
    const double th = theta(rng);
    REQUIRE(std::abs((a * b).eval(th) - a.eval(th) * b.eval(th)) < 1e-12 * (1 + std::abs(a.eval(th) * b.eval(th))));
  }
}

TEST_CASE("exact zero implies numeric zero") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> theta(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_scalar(rng), b = random_scalar(rng);
    // (a + b) - b - a is exactly zero however the terms were arranged
    const auto z = (a + b) * (a - b) - (a * a - b * b);
    REQUIRE(z.is_zero());
    for (int k = 0; k < 20; ++k) REQUIRE(std::abs(z.eval(theta(rng))) < 1e-12);
  }
}
