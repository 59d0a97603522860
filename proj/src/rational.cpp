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

#include "nctv/rational.hpp"

#include <stdexcept>

namespace nctv {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

mpz_class floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational frac(const Rational& r) { return r - Rational(floor(r)); }

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Rational rational_gcd(const Rational& a, const Rational& b) {
  // gcd(p/q, r/s) = gcd(p*s, r*q) / (q*s)
  mpz_class num;
  mpz_class ps = a.get_num() * b.get_den();
  mpz_class rq = b.get_num() * a.get_den();
  mpz_gcd(num.get_mpz_t(), ps.get_mpz_t(), rq.get_mpz_t());
  Rational g(num, a.get_den() * b.get_den());
  g.canonicalize();
  return g;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace nctv
