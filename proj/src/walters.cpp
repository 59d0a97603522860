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

#include "nctv/walters.hpp"

#include <fftw3.h>

#include <cmath>
#include <functional>
#include <list>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace nctv::walters {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// e(z) with the argument reduced mod 1 first, which keeps large phases accurate.
cd e(double z) { return std::polar(1.0, two_pi * (z - std::floor(z))); }

void require_same(const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid == g.grid) || f.theta != g.theta || f.samples.size() != g.samples.size()) {
    throw std::invalid_argument("sampled functions live on different grids or fibers");
  }
}

void require_rotation(int k) {
  if (k != 2 && k != 3 && k != 4 && k != 6) throw std::invalid_argument("k must be 2, 3, 4 or 6");
}

// ---------------------------------------------------------------------------
// FFT plans, one pair per size, created under a lock and then only executed
// through the thread-safe new-array interface.

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PlanPair plans_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, PlanPair> plans;
  std::lock_guard lock(mu);
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  auto* in = fftw_alloc_complex(n);
  auto* out = fftw_alloc_complex(n);
  const int size = static_cast<int>(n);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_1d(size, in, out, FFTW_FORWARD, flags), fftw_plan_dft_1d(size, in, out, FFTW_BACKWARD, flags)};
  fftw_free(in);
  fftw_free(out);
  plans.emplace(n, p);
  return p;
}

fftw_complex* as_fftw(cd* p) { return reinterpret_cast<fftw_complex*>(p); }

// ---------------------------------------------------------------------------
// Dense kernels

enum class KernelKind { w3, w4, w6, w6_inverse };

using Matrix = std::vector<cd>;

std::shared_ptr<const Matrix> build_kernel(KernelKind kind, const Grid& grid, double theta) {
  const std::size_t n = grid.n;
  auto m = std::make_shared<Matrix>(n * n);
  const double h = grid.spacing();
  const double scale = h / std::sqrt(theta);
  const cd twelfth = std::polar(1.0, std::numbers::pi / 12.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = grid.x(i);
    cd* row = m->data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = grid.x(j);
      switch (kind) {
        case KernelKind::w4: row[j] = scale * e(s * x / theta); break;
        case KernelKind::w3: row[j] = scale * std::conj(twelfth) * e((s * s / 2.0 + s * x) / theta); break;
        case KernelKind::w6: row[j] = scale * twelfth * e((2.0 * s * x - x * x) / (2.0 * theta)); break;
        case KernelKind::w6_inverse: row[j] = scale * std::conj(twelfth) * e((s * s / 2.0 - s * x) / theta); break;
      }
    }
  }
  return m;
}

class KernelCache {
 public:
  using Key = std::tuple<int, std::size_t, double, double>;

  std::shared_ptr<const Matrix> get(KernelKind kind, const Grid& grid, double theta) {
    const Key key{static_cast<int>(kind), grid.n, grid.half_width, theta};
    {
      std::lock_guard lock(mu_);
      for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (it->first == key) {
          entries_.splice(entries_.begin(), entries_, it);
          return it->second;
        }
      }
    }
    auto m = build_kernel(kind, grid, theta);
    std::lock_guard lock(mu_);
    entries_.emplace_front(key, m);
    while (entries_.size() > capacity_) entries_.pop_back();
    return m;
  }

  void set_capacity(std::size_t c) {
    std::lock_guard lock(mu_);
    capacity_ = c == 0 ? 1 : c;
    while (entries_.size() > capacity_) entries_.pop_back();
  }

  void clear() {
    std::lock_guard lock(mu_);
    entries_.clear();
  }

 private:
  std::mutex mu_;
  std::size_t capacity_ = 6;
  std::list<std::pair<Key, std::shared_ptr<const Matrix>>> entries_;
};

KernelCache& cache() {
  static KernelCache c;
  return c;
}

Samples apply(const Matrix& m, const Samples& v) {
  const std::size_t n = v.size();
  Samples out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cd* row = m.data() + i * n;
    cd acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * v[j];
    out[i] = acc;
  }
  return out;
}

Samples apply_adjoint(const Matrix& m, const Samples& v) {
  const std::size_t n = v.size();
  Samples out(n, cd{});
  for (std::size_t i = 0; i < n; ++i) {
    const cd* row = m.data() + i * n;
    const cd vi = v[i];
    for (std::size_t j = 0; j < n; ++j) out[j] += std::conj(row[j]) * vi;
  }
  return out;
}

SampledFunction with_samples(const SampledFunction& like, Samples s) { return {like.grid, like.theta, std::move(s)}; }

}  // namespace

// ---------------------------------------------------------------------------
// Grid and samples

Grid Grid::make(std::size_t n, double half_width) {
  if (n < 256 || (n & (n - 1)) != 0) throw std::invalid_argument("grid size must be a power of two >= 256");
  if (!(half_width >= 8.0)) throw std::invalid_argument("grid half-width must be >= 8");
  return {n, half_width};
}

double SampledFunction::norm() const {
  double s = 0;
  for (const cd& v : samples) s += std::norm(v);
  return std::sqrt(grid.spacing() * s);
}

SampledFunction SampledFunction::operator+(const SampledFunction& other) const {
  require_same(*this, other);
  SampledFunction out = *this;
  for (std::size_t i = 0; i < samples.size(); ++i) out.samples[i] += other.samples[i];
  return out;
}

SampledFunction SampledFunction::operator-(const SampledFunction& other) const {
  require_same(*this, other);
  SampledFunction out = *this;
  for (std::size_t i = 0; i < samples.size(); ++i) out.samples[i] -= other.samples[i];
  return out;
}

SampledFunction SampledFunction::scaled(cd c) const {
  SampledFunction out = *this;
  for (auto& v : out.samples) v *= c;
  return out;
}

SampledFunction sample_function(const Grid& grid, double theta, const std::function<cd(double)>& f) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in (0, 1]");
  SampledFunction out{grid, theta, Samples(grid.n)};
  for (std::size_t j = 0; j < grid.n; ++j) out.samples[j] = f(grid.x(j));
  return out;
}

SampledFunction sample_gaussian(const Grid& grid, double theta, double center, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  auto g = sample_function(grid, theta, [&](double x) {
    const double d = (x - center) / width;
    return cd(std::exp(-std::numbers::pi * d * d), 0.0);
  });
  return g.scaled(1.0 / g.norm());
}

double distance(const SampledFunction& f, const SampledFunction& g) { return (f - g).norm(); }

SampledFunction translate(const SampledFunction& f, double a) {
  const std::size_t n = f.grid.n;
  const PlanPair p = plans_for(n);
  Samples spec(n), out(n);
  Samples in = f.samples;
  fftw_execute_dft(p.forward, as_fftw(in.data()), as_fftw(spec.data()));
  const double df = 1.0 / (static_cast<double>(n) * f.grid.spacing());
  for (std::size_t k = 0; k < n; ++k) {
    if (k == n / 2) {
      spec[k] *= std::cos(two_pi * df * static_cast<double>(k) * a);
      continue;
    }
    const double freq = df * (k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n));
    spec[k] *= e(freq * a);
  }
  fftw_execute_dft(p.backward, as_fftw(spec.data()), as_fftw(out.data()));
  const double inv = 1.0 / static_cast<double>(n);
  for (auto& v : out) v *= inv;
  return with_samples(f, std::move(out));
}

// ---------------------------------------------------------------------------
// Actions

SampledFunction act_right(const SampledFunction& xi, long n, long m) {
  const double theta = xi.theta;
  SampledFunction out = n == 0 ? xi : translate(xi, static_cast<double>(n) * theta);
  const cd phase = e(theta * static_cast<double>(n) * static_cast<double>(m) / 2.0);
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    out.samples[j] *= phase * e(static_cast<double>(m) * xi.grid.x(j));
  }
  return out;
}

SampledFunction act_left(const SampledFunction& zeta, long n, long m) {
  SampledFunction out = n == 0 ? zeta : translate(zeta, static_cast<double>(n));
  for (std::size_t j = 0; j < out.samples.size(); ++j) {
    out.samples[j] *= e(-static_cast<double>(m) * (zeta.grid.x(j) + static_cast<double>(n)) / zeta.theta);
  }
  return out;
}

SampledFunction act_right(const SampledFunction& xi, const tga::AlgebraElement& a) {
  const auto& alg = *a.algebra();
  const int k = alg.group().order();
  if (alg.group().kind() != grp::GroupKind::rotation || !(alg.cocycle() == tga::CocycleSpec::formal())) {
    throw std::invalid_argument("act_right: element must live over the formal cocycle of Z_k");
  }
  SampledFunction out = xi.scaled(0.0);
  for (const auto& [g, c] : a.terms()) {
    const int j = alg.group().power_index(g.point);
    const auto moved = act_right(xi, g.translation[0], g.translation[1]);
    out = out + transform_power(k, moved, j).scaled(c.eval(xi.theta));
  }
  return out;
}

SampledFunction act_right(const SampledFunction& xi, const tga::Word& w, int k) {
  require_rotation(k);
  SampledFunction out = xi.scaled(w.coefficient.eval(xi.theta));
  for (const auto& l : w.letters) {
    for (int i = 0; i < std::abs(l.exponent); ++i) {
      const long step = l.exponent > 0 ? 1 : -1;
      if (l.generator == 0) {
        out = act_right(out, step, 0);
      } else if (l.generator == 1) {
        out = act_right(out, 0, step);
      } else if (l.generator < 0) {
        out = transform_w(k, out, step < 0);
      } else {
        throw std::invalid_argument("act_right: generator out of range");
      }
    }
  }
  return out;
}

SampledFunction act_left(const SampledFunction& zeta, const tga::Word& w) {
  SampledFunction out = zeta.scaled(w.coefficient.eval(zeta.theta));
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->generator != 0 && it->generator != 1) throw std::invalid_argument("act_left: only u and v act on the left");
    for (int i = 0; i < std::abs(it->exponent); ++i) {
      const long step = it->exponent > 0 ? 1 : -1;
      out = it->generator == 0 ? act_left(out, step, 0) : act_left(out, 0, step);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inner products

cd inner_right(const SampledFunction& xi, const SampledFunction& eta, long n, long m) {
  require_same(xi, eta);
  const SampledFunction moved = n == 0 ? xi : translate(xi, static_cast<double>(n) * xi.theta);
  cd acc = 0;
  for (std::size_t j = 0; j < eta.samples.size(); ++j) {
    acc += std::conj(moved.samples[j]) * eta.samples[j] * e(-static_cast<double>(m) * xi.grid.x(j));
  }
  return xi.theta * xi.grid.spacing() * acc;
}

cd inner_left(const SampledFunction& xi, const SampledFunction& eta, long n, long m) {
  require_same(xi, eta);
  const SampledFunction moved = n == 0 ? xi : translate(xi, -static_cast<double>(n));
  cd acc = 0;
  for (std::size_t j = 0; j < eta.samples.size(); ++j) {
    acc += moved.samples[j] * std::conj(eta.samples[j]) * e(static_cast<double>(m) * xi.grid.x(j) / xi.theta);
  }
  return xi.grid.spacing() * acc;
}

// ---------------------------------------------------------------------------
// Transforms

void set_kernel_cache_capacity(std::size_t capacity) { cache().set_capacity(capacity); }

void clear_kernel_cache() { cache().clear(); }

SampledFunction transform_w(int k, const SampledFunction& xi, bool inverse) {
  require_rotation(k);
  if (k == 2) {
    const std::size_t n = xi.samples.size();
    Samples out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = xi.samples[(n - j) % n];
    return with_samples(xi, std::move(out));
  }
  if (k == 6 && inverse) return with_samples(xi, apply(*cache().get(KernelKind::w6_inverse, xi.grid, xi.theta), xi.samples));
  const KernelKind kind = k == 3 ? KernelKind::w3 : k == 4 ? KernelKind::w4 : KernelKind::w6;
  const auto m = cache().get(kind, xi.grid, xi.theta);
  return with_samples(xi, inverse ? apply_adjoint(*m, xi.samples) : apply(*m, xi.samples));
}

SampledFunction transform_w3_via_w6(const SampledFunction& xi) { return transform_w(6, transform_w(6, xi)); }

SampledFunction transform_power(int k, const SampledFunction& xi, int j) {
  SampledFunction out = xi;
  for (int i = 0; i < j; ++i) out = transform_w(k, out);
  return out;
}

double order_residual(int k, const SampledFunction& xi) {
  return distance(transform_power(k, xi, k), xi) / xi.norm();
}

RelationResiduals relation_residuals(int k, const SampledFunction& xi, const SampledFunction& eta, long kk, long ll) {
  require_rotation(k);
  require_same(xi, eta);
  const auto alg = tga::make_algebra(grp::FiniteGroupTag::cyclic(k), tga::CocycleSpec::formal());
  const auto t = alg->t();
  const SampledFunction xi_w = transform_w(k, xi);
  RelationResiduals r;
  r.covariance_u = distance(act_right(xi_w, 1, 0), transform_w(k, act_right(xi, t * alg->u() * t.adjoint())));
  r.covariance_v = distance(act_right(xi_w, 0, 1), transform_w(k, act_right(xi, t * alg->v() * t.adjoint())));
  if (k == 6) {
    const double theta = xi.theta;
    const cd lhs = inner_right(transform_w(6, xi, true), eta, kk, ll);
    const double kd = static_cast<double>(kk), ld = static_cast<double>(ll);
    const cd rhs = inner_right(xi, transform_w(6, eta), kk + ll, -kk) * e(0.5 * theta * (2 * kd * (kd + ld) - kd * kd));
    r.inner_identity = std::abs(lhs - rhs);
  }
  return r;
}

BimoduleResiduals bimodule_residuals(const SampledFunction& xi, const SampledFunction& eta, const SampledFunction& zeta,
                                     int window, int k) {
  require_same(xi, eta);
  require_same(eta, zeta);
  if (window < 0) throw std::invalid_argument("window must be non-negative");
  BimoduleResiduals r;
  SampledFunction lhs = zeta.scaled(0.0), rhs = zeta.scaled(0.0);
  for (long n = -window; n <= window; ++n) {
    const SampledFunction xi_moved = act_right(xi, n, 0);
    const SampledFunction zeta_moved = act_left(zeta, n, 0);
    for (long m = -window; m <= window; ++m) {
      const cd b = inner_left(xi, eta, n, m);
      const cd a = inner_right(eta, zeta, n, m);
      if (std::abs(n) == window || std::abs(m) == window) {
        r.tail_estimate = std::max({r.tail_estimate, std::abs(a), std::abs(b)});
      }
      // U^n V^m . zeta and xi . U^n V^m from the shifted copies
      SampledFunction left = zeta_moved, right = xi_moved;
      for (std::size_t j = 0; j < left.samples.size(); ++j) {
        const double x = zeta.grid.x(j);
        left.samples[j] *= b * e(-static_cast<double>(m) * (x + static_cast<double>(n)) / zeta.theta);
        right.samples[j] *= a * e(static_cast<double>(m) * x);
      }
      lhs = lhs + left;
      rhs = rhs + right;
    }
  }
  r.imprimitivity = distance(lhs, rhs);

  const auto alg = tga::make_algebra(grp::FiniteGroupTag::cyclic(k), tga::CocycleSpec::formal());
  const std::vector<tga::AlgebraElement> gens{alg->u(), alg->v(), alg->t()};
  for (const auto& x : gens) {
    const SampledFunction xi_x = act_right(xi, x);
    for (const auto& y : gens) {
      r.green_julg = std::max(r.green_julg, distance(act_right(xi, x * y), act_right(xi_x, y)));
    }
  }
  return r;
}

double hermiticity_residual(const SampledFunction& xi, const SampledFunction& eta, int window) {
  double worst = 0;
  for (long n = -window; n <= window; ++n) {
    for (long m = -window; m <= window; ++m) {
      const cd lhs = inner_right(eta, xi, -n, -m);
      const cd rhs = e(static_cast<double>(m * n) * xi.theta) * std::conj(inner_right(xi, eta, n, m));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

void write_samples_csv(std::ostream& out, const SampledFunction& f) {
  out << "x,re,im\n";
  out.precision(17);
  for (std::size_t j = 0; j < f.samples.size(); ++j) {
    out << f.grid.x(j) << ',' << f.samples[j].real() << ',' << f.samples[j].imag() << '\n';
  }
}

}  // namespace nctv::walters
