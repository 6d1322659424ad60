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

// Curves on a quadric through marked points.
//
// A degree-d curve P(z) = sum_i lambda_i L_i(z) v_i through points of the
// quadric lies on it iff Q(z) = q(P(z)) (degree <= 2d) vanishes to order two
// at each of the d+1 nodes. The value condition holds automatically; the
// derivative condition at z_l reads
//
//     dQ(z_l) = -2 lambda_l zeta_l (A mu)_l,   mu_i = lambda_i / zeta_i,
//
// with A the rescaled skew matrix B(v_i, v_j) / (z_j - z_i). So the fibre is
// {lambda = zeta * mu : mu in ker A, all mu_i != 0}.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfcurves/interp.hpp"
#include "pfcurves/matrix.hpp"
#include "pfcurves/pfaffian.hpp"
#include "pfcurves/quadric.hpp"

namespace pfcurves {

struct RescaledSkew {
  SkewMatQ matrix;
  MarkedConfig source;
  QuadSpace quad;
};

inline RescaledSkew build_rescaled_skew(const QuadSpace& quad, const MarkedConfig& config) {
  if (config.size() > 0 && config.ambient_dim() != quad.dim()) {
    throw std::invalid_argument("build_rescaled_skew: points must have dim V coordinates");
  }
  const std::size_t m = config.size();
  SkewMatQ a(m);
  const auto& v = config.points();
  const auto& z = config.z();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const Rat b = quad.bilinear(v[i], v[j]);
      if (b != 0) a.set(i, j, b / (z[j] - z[i]));
    }
  return RescaledSkew{std::move(a), config, quad};
}

/// Thrown when a Pfaffian kernel formula is applied outside its rank regime.
class RankPreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PfaffianKernel {
  /// Vectors produced by the minor formulas (one for odd size, the N_i for even size).
  std::vector<Vec> spanning;
  /// Independent subfamily of `spanning`.
  std::vector<Vec> basis;
};

/// Kernel of a skew matrix of corank 1 (odd size) or corank 2 (even size),
/// read off from its Pfaffian minors.
///
/// Odd size:  w_i = (-1)^(i+1) pf(A(i)).
/// Even size: N_i = ((-1)^(i+j+[j>i]) pf(A(i,j)))_j, N_i[i] = 0.
inline PfaffianKernel kernel_via_pfaffians(const SkewMatQ& a) {
  const std::size_t m = a.size();
  const std::size_t r = rank(a.matrix());
  const std::size_t corank = m - r;
  const bool odd = m % 2 == 1;
  if ((odd && corank != 1) || (!odd && corank != 2)) {
    throw RankPreconditionError("kernel_via_pfaffians: needs corank " + std::string(odd ? "1" : "2") + " for size " +
                                std::to_string(m) + ", actual corank is " + std::to_string(corank));
  }
  PfaffianKernel out;
  if (odd) {
    Vec w(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Rat p = pfaffian_minor(a, {i});
      w[i] = (i % 2 == 1) ? p : Rat(-p);
    }
    out.spanning.push_back(w);
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      Vec n_i(m);
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const Rat p = pfaffian_minor(a, {i, j});
        const bool negative = ((i + j + (j > i ? 1 : 0)) % 2) == 1;
        n_i[j] = negative ? Rat(-p) : p;
      }
      out.spanning.push_back(std::move(n_i));
    }
  }
  out.basis = independent_subset(out.spanning, m);
  for (const auto& v : out.basis) {
    if (!is_zero_vector(a.matrix() * v)) throw std::logic_error("kernel_via_pfaffians: produced a non-kernel vector");
  }
  return out;
}

/// Expands Q(z) = q(P(z)) exactly and checks that it is the zero polynomial.
inline UniPoly quadric_pullback(const QuadSpace& quad, const CurveMap& curve) {
  const auto& p = curve.components();
  if (p.size() != quad.dim()) throw std::invalid_argument("curve and quadric live in different spaces");
  UniPoly q;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      const Rat& g = quad.gram()(a, b);
      if (g == 0 || p[a].is_zero() || p[b].is_zero()) continue;
      q += (p[a] * p[b]) * g;
    }
  return q;
}

inline bool verify_on_quadric(const QuadSpace& quad, const CurveMap& curve) {
  return quadric_pullback(quad, curve).is_zero();
}

/// Solution set of the interpolation problem on the quadric for the d+1
/// marked points of `config`.
inline FibreDescription solve_quadric_fibre(const QuadSpace& quad, const MarkedConfig& config) {
  if (config.size() == 0) throw std::invalid_argument("solve_quadric_fibre: empty configuration");
  if (config.ambient_dim() != quad.dim()) throw std::invalid_argument("solve_quadric_fibre: points must have dim V coordinates");
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (quad.q(config.points()[i]) != 0) {
      throw std::invalid_argument("solve_quadric_fibre: point " + std::to_string(i) + " is not on the quadric");
    }
  }
  const std::size_t m = config.size();
  const RescaledSkew skew = build_rescaled_skew(quad, config);
  const SkewMatQ& a = skew.matrix;

  FibreDescription out;
  out.kernel = kernel_basis(a.matrix());
  out.kernel_dim = out.kernel.size();

  const bool pfaffian_regime = (m % 2 == 1 && out.kernel_dim == 1) || (m % 2 == 0 && out.kernel_dim == 2);
  if (pfaffian_regime) {
    const auto pk = kernel_via_pfaffians(a);
    if (!same_span(pk.basis, out.kernel, m)) throw std::logic_error("solve_quadric_fibre: Pfaffian kernel disagrees with elimination");
  }

  // general-position predictions: pf(A) != 0 for even size, every
  // pf(A(i)) != 0 for odd size
  if (m % 2 == 0) {
    if (pfaffian(a) == 0) out.witness.vanishing_minors.push_back({});
  } else {
    for (std::size_t i = 0; i < m; ++i)
      if (pfaffian_minor(a, {i}) == 0) out.witness.vanishing_minors.push_back({i});
  }

  detail::OpenConditions conds;
  for (std::size_t i = 0; i < m; ++i) {
    conds.push_back(detail::coordinate_functional(i, m));
    if (out.kernel_dim > 0 && detail::vanishes_on(conds.back(), out.kernel)) out.witness.zero_coordinates.push_back(i);
  }
  out.nonvanishing_ok = out.kernel_dim > 0 && out.witness.zero_coordinates.empty();
  out.kind = detail::classify(out.kernel_dim, out.nonvanishing_ok);
  if (out.kind != FibreKind::Empty) {
    out.dim = out.kernel_dim - 1;
    for (const auto& mu : detail::admissible_points(conds, out.kernel, out.witness.violating_basis)) {
      Vec lambda(m);
      for (std::size_t i = 0; i < m; ++i) lambda[i] = mu[i] * config.zeta()[i];
      CurveMap curve = interpolate_pn(config, normalize_leading(std::move(lambda)));
      if (!verify_on_quadric(quad, curve)) throw std::logic_error("solve_quadric_fibre: emitted curve is not on the quadric");
      out.representatives.push_back(std::move(curve));
    }
  }
  return out;
}

/// prod_{i<j, i+j even} (z_j - z_i) / prod_{i<j, i+j odd} (z_j - z_i),
/// the Pfaffian of the rescaled matrix of the alternating configuration.
inline Rat cauchy_pfaffian(std::span<const Rat> z) {
  if (z.size() < 2 || z.size() % 2 != 0) throw std::invalid_argument("cauchy_pfaffian: needs an even number (>= 2) of nodes");
  Rat num = 1;
  Rat den = 1;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const Rat diff = z[j] - z[i];
      if (diff == 0) throw std::invalid_argument("cauchy_pfaffian: repeated node " + to_string(z[i]));
      if ((i + j) % 2 == 0) {
        num *= diff;
      } else {
        den *= diff;
      }
    }
  return num / den;
}

/// v_i = u for even i, w for odd i, where u = e0 and w = e1 span a
/// hyperbolic plane of the split form.
inline MarkedConfig alternating_config(std::span<const Rat> z, std::size_t dim_ambient) {
  if (dim_ambient < 2) throw std::invalid_argument("alternating_config: need dim V >= 2");
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < z.size(); ++i) {
    Vec v(dim_ambient);
    v[i % 2] = 1;
    pts.push_back(std::move(v));
  }
  return MarkedConfig(std::vector<Rat>(z.begin(), z.end()), std::move(pts));
}

}  // namespace pfcurves
