/*
 * Copyright 2026 The pfcurves Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "pfcurves/matrix.hpp"
#include "pfcurves/random.hpp"
#include "pfcurves/rational.hpp"

namespace pfcurves {

/// Raised when random sampling keeps hitting a degenerate case past the
/// attempt cap.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SamplerOptions {
  SampleBox box{};
  std::size_t max_attempts = 32;
};

/// Point of projective space, stored with its first nonzero coordinate
/// scaled to 1 so that equality is equality of points.
class ProjPoint {
 public:
  explicit ProjPoint(Vec coords) : coords_(normalize_leading(std::move(coords))) {
    if (is_zero_vector(coords_)) throw std::invalid_argument("projective point needs a nonzero coordinate");
  }

  const Vec& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }

 private:
  Vec coords_;
};

/// A vector space V with a nondegenerate symmetric bilinear form B, given by
/// its Gram matrix. The quadric is {[v] : q(v) = B(v, v) = 0} in P(V).
class QuadSpace {
 public:
  explicit QuadSpace(MatQ gram, std::optional<Vec> base_point = std::nullopt)
      : gram_(std::move(gram)), base_point_(std::move(base_point)) {
    if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix must be square and symmetric");
    if (determinant(gram_) == 0) throw std::invalid_argument("Gram matrix is degenerate");
    if (base_point_) {
      if (base_point_->size() != dim()) throw std::invalid_argument("base point has the wrong length");
      if (is_zero_vector(*base_point_) || q(*base_point_) != 0) {
        throw std::invalid_argument("base point must be a nonzero isotropic vector");
      }
    }
  }

  /// Split form on Q^dim: hyperbolic planes on (e0,e1), (e2,e3), ..., plus
  /// a [1] block when dim is odd. Base point e0.
  static QuadSpace split(std::size_t dim) {
    if (dim < 2) throw std::invalid_argument("split form needs dim >= 2");
    MatQ g(dim, dim);
    for (std::size_t k = 0; k + 1 < dim; k += 2) {
      g(k, k + 1) = 1;
      g(k + 1, k) = 1;
    }
    if (dim % 2 == 1) g(dim - 1, dim - 1) = 1;
    Vec e0(dim);
    e0[0] = 1;
    return QuadSpace(std::move(g), std::move(e0));
  }

  /// Split quadric Q_n in P^{n+1}, i.e. dim V = n + 2.
  static QuadSpace split_quadric(std::size_t n) { return split(n + 2); }

  std::size_t dim() const { return gram_.rows(); }
  const MatQ& gram() const { return gram_; }
  const std::optional<Vec>& base_point() const { return base_point_; }

  Rat bilinear(const Vec& u, const Vec& v) const {
    if (u.size() != dim() || v.size() != dim()) throw std::invalid_argument("bilinear: vector length does not match the space");
    Rat s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (gram_(i, j) == 0) continue;
        s += u[i] * gram_(i, j) * v[j];
      }
    }
    return s;
  }

  Rat q(const Vec& v) const { return bilinear(v, v); }

 private:
  MatQ gram_;
  std::optional<Vec> base_point_;
};

inline Rat bilinear(const QuadSpace& quad, const Vec& u, const Vec& v) { return quad.bilinear(u, v); }

inline bool on_quadric(const QuadSpace& quad, const ProjPoint& p) { return quad.q(p.coords()) == 0; }

inline bool on_quadric(const QuadSpace& quad, const Vec& v) { return !is_zero_vector(v) && quad.q(v) == 0; }

/// Second intersection of the line through the base point p0 with direction
/// w: the point w - q(w) / (2 B(p0, w)) * p0. Empty when the line is tangent.
inline std::optional<Vec> stereographic_lift(const QuadSpace& quad, const Vec& w) {
  if (!quad.base_point()) throw std::invalid_argument("quadric has no rational base point");
  const Vec& p0 = *quad.base_point();
  const Rat b = quad.bilinear(p0, w);
  if (b == 0) return std::nullopt;
  const Rat s = -quad.q(w) / (2 * b);
  Vec out = w;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * p0[i];
  return out;
}

/// Random rational point of the quadric, via stereographic projection from
/// the base point. Deterministic in the state of `rng`, which it advances.
inline ProjPoint sample_quadric_point(const QuadSpace& quad, Rng& rng, const SamplerOptions& opts = {}) {
  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const Vec w = rng.vector(quad.dim(), opts.box);
    if (auto p = stereographic_lift(quad, w); p && !is_zero_vector(*p)) return ProjPoint(std::move(*p));
  }
  throw SamplingError("sample_quadric_point: every direction was tangent after " + std::to_string(opts.max_attempts) + " attempts");
}

/// Reflection in an anisotropic vector r: x -> x - 2 B(x, r) / q(r) * r.
inline MatQ reflection(const QuadSpace& quad, const Vec& r) {
  const Rat qr = quad.q(r);
  if (qr == 0) throw std::invalid_argument("reflection vector is isotropic");
  const std::size_t n = quad.dim();
  // row i of (G r) gives B(e_i, r)
  const Vec gr = quad.gram() * r;
  MatQ m = MatQ::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= 2 * r[i] * gr[j] / qr;
  return m;
}

/// Random isometry of (V, B) as a product of `count` reflections.
inline MatQ random_isometry(const QuadSpace& quad, Rng& rng, std::size_t count, const SamplerOptions& opts = {}) {
  MatQ g = MatQ::identity(quad.dim());
  for (std::size_t k = 0; k < count; ++k) {
    Vec r;
    std::size_t attempt = 0;
    do {
      if (attempt++ == opts.max_attempts) throw SamplingError("random_isometry: no anisotropic vector found");
      r = rng.vector(quad.dim(), opts.box);
    } while (quad.q(r) == 0);
    g = reflection(quad, r) * g;
  }
  return g;
}

}  // namespace pfcurves
