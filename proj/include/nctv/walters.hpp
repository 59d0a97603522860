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
// Sampled Schwartz functions on a uniform grid at a fixed theta: the right
// A_theta action and left B_theta action, both inner products, the order-k
// transforms W implementing the Z_k symmetry, and residuals of the identities
// these objects satisfy.

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "nctv/tga.hpp"

namespace nctv::walters {

using cd = std::complex<double>;
using Samples = std::vector<cd>;

/// x_j = -L + j h, h = 2L / N.
struct Grid {
  std::size_t n = 2048;
  double half_width = 12.0;

  /// Throws std::invalid_argument unless n >= 256 is a power of two and
  /// half_width >= 8.
  static Grid make(std::size_t n, double half_width);
  double spacing() const { return 2.0 * half_width / static_cast<double>(n); }
  double x(std::size_t j) const { return -half_width + static_cast<double>(j) * spacing(); }
  friend bool operator==(const Grid&, const Grid&) = default;
};

struct SampledFunction {
  Grid grid;
  double theta = 0.5;
  Samples samples;

  double norm() const;
  SampledFunction operator+(const SampledFunction& other) const;
  SampledFunction operator-(const SampledFunction& other) const;
  SampledFunction scaled(cd c) const;
};

/// exp(-pi (x - center)^2 / width^2), scaled to unit discrete L^2 norm.
/// Throws std::invalid_argument unless width > 0 and 0 < theta <= 1.
SampledFunction sample_gaussian(const Grid& grid, double theta, double center, double width);
SampledFunction sample_function(const Grid& grid, double theta, const std::function<cd(double)>& f);

/// ||f - g||_2; throws std::invalid_argument if grids or theta differ.
double distance(const SampledFunction& f, const SampledFunction& g);

/// s -> f(s + a) by spectral interpolation.
SampledFunction translate(const SampledFunction& f, double a);

/// xi . delta_(n, m): s -> e(theta n m / 2) e(m s) xi(s + n theta).
SampledFunction act_right(const SampledFunction& xi, long n, long m);
/// U^n V^m . zeta: s -> e(-m (s + n) / theta) zeta(s + n).
SampledFunction act_left(const SampledFunction& zeta, long n, long m);

/// Right action of the twisted crossed product at the fiber theta: each
/// delta_(m, N^j) acts as xi -> (xi . delta_m) W^j, with coefficients
/// evaluated at xi.theta. The element must live over the formal d = 2 cocycle
/// of Z_k, k in {2, 3, 4, 6}.
SampledFunction act_right(const SampledFunction& xi, const tga::AlgebraElement& a);
/// Letters act left to right; the scalar coefficient acts by its value at theta.
SampledFunction act_right(const SampledFunction& xi, const tga::Word& w, int k);
/// Letters of u, v only; the rightmost letter acts first.
SampledFunction act_left(const SampledFunction& zeta, const tga::Word& w);

/// theta * integral conj(xi(x + n theta)) eta(x) e(-m x) dx: the coefficient
/// of U^n V^m in the A-valued inner product.
cd inner_right(const SampledFunction& xi, const SampledFunction& eta, long n, long m);
/// integral xi(x - n) conj(eta(x)) e(m x / theta) dx: the coefficient of
/// U^n V^m in the B-valued inner product.
cd inner_left(const SampledFunction& xi, const SampledFunction& eta, long n, long m);

/// xi -> xi W for F = Z_k: reflection (k = 2) or a dense quadrature of the
/// Fourier-type kernel (k = 3, 4, 6). The inverse uses the adjoint kernel;
/// for k = 6 it is the separately printed inverse formula.
SampledFunction transform_w(int k, const SampledFunction& xi, bool inverse = false);
/// (xi W_6) W_6.
SampledFunction transform_w3_via_w6(const SampledFunction& xi);
SampledFunction transform_power(int k, const SampledFunction& xi, int j);

/// Kernel matrices are cached per (k, inverse, grid, theta); least recently
/// used entries are evicted beyond `capacity`. Thread-safe.
void set_kernel_cache_capacity(std::size_t capacity);
void clear_kernel_cache();

/// ||xi W^k - xi|| / ||xi||.
double order_residual(int k, const SampledFunction& xi);

struct RelationResiduals {
  double covariance_u = 0;  ///< ||(xi W) U - (xi . t u t^-1) W||
  double covariance_v = 0;  ///< ||(xi W) V - (xi . t v t^-1) W||
  std::optional<double> inner_identity;  ///< Z_6 only
};

/// Covariance of W with the generators for F = Z_k, and for k = 6 the
/// identity <xi W^-1, eta>_{kk, ll} = <xi, eta W>_{kk + ll, -kk} e(theta (2 kk (kk + ll) - kk^2) / 2).
RelationResiduals relation_residuals(int k, const SampledFunction& xi, const SampledFunction& eta, long kk,
                                     long ll);

struct BimoduleResiduals {
  double imprimitivity = 0;  ///< ||_B<xi, eta> . zeta - xi . <eta, zeta>_A||
  double tail_estimate = 0;  ///< largest |coefficient| on the outer ring
  double green_julg = 0;     ///< max over generator pairs x, y of ||xi . (x y) - (xi . x) . y||
};

/// Sums over |n|, |m| <= window. Green-Julg pairs use F = Z_k.
BimoduleResiduals bimodule_residuals(const SampledFunction& xi, const SampledFunction& eta,
                                     const SampledFunction& zeta, int window, int k = 6);

/// max over |n|, |m| <= window of |<eta, xi>_{-n,-m} - e(m n theta) conj(<xi, eta>_{n,m})|.
double hermiticity_residual(const SampledFunction& xi, const SampledFunction& eta, int window);

/// Columns x, re, im.
void write_samples_csv(std::ostream& out, const SampledFunction& f);

}  // namespace nctv::walters
