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

#include <gmpxx.h>

#include <string>

namespace nctv {

/// Exact arbitrary-precision fraction, always kept canonical.
using Rational = mpq_class;

/// Builds num/den in lowest terms. Throws std::invalid_argument on den == 0.
Rational make_rational(long num, long den = 1);

/// Parses "p/q" or an integer literal.
Rational parse_rational(const std::string& text);

mpz_class floor(const Rational& r);

/// Fractional part in [0, 1).
Rational frac(const Rational& r);

bool is_integer(const Rational& r);

/// Generator of the subgroup aZ + bZ of Q, taken nonnegative. gcd(0, 0) = 0.
Rational rational_gcd(const Rational& a, const Rational& b);

std::string to_string(const Rational& r);

}  // namespace nctv
