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
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfcurves/matrix.hpp"
#include "pfcurves/poly.hpp"
#include "pfcurves/quadric.hpp"
#include "pfcurves/rational.hpp"

namespace pfcurves {

/// Marked points t_i = [z_i : 1] on the line together with representatives
/// v_i of their target points x_i = [v_i].
class MarkedConfig {
 public:
  MarkedConfig() = default;

  MarkedConfig(std::vector<Rat> z, std::vector<Vec> points) : z_(std::move(z)), points_(std::move(points)) {
    if (z_.size() != points_.size()) throw std::invalid_argument("config: parameter and point counts differ");
    for (std::size_t i = 0; i < z_.size(); ++i)
      for (std::size_t j = i + 1; j < z_.size(); ++j)
        if (z_[i] == z_[j]) throw std::invalid_argument("config: repeated parameter " + to_string(z_[i]));
    for (const auto& v : points_) {
      if (v.size() != points_.front().size()) throw std::invalid_argument("config: points of different lengths");
      if (is_zero_vector(v)) throw std::invalid_argument("config: zero vector is not a point");
    }
    zeta_.resize(z_.size());
    for (std::size_t i = 0; i < z_.size(); ++i) {
      Rat prod = 1;
      for (std::size_t k = 0; k < z_.size(); ++k)
        if (k != i) prod *= z_[i] - z_[k];
      zeta_[i] = prod;
    }
  }

  std::size_t size() const { return z_.size(); }
  /// Length of the coordinate vectors (0 for an empty config).
  std::size_t ambient_dim() const { return points_.empty() ? 0 : points_.front().size(); }

  const std::vector<Rat>& z() const { return z_; }
  const std::vector<Vec>& points() const { return points_; }
  /// zeta_i = prod_{k != i} (z_i - z_k)
  const std::vector<Rat>& zeta() const { return zeta_; }

  friend bool operator==(const MarkedConfig& a, const MarkedConfig& b) { return a.z_ == b.z_ && a.points_ == b.points_; }

 private:
  std::vector<Rat> z_;
  std::vector<Vec> points_;
  std::vector<Rat> zeta_;
};

/// L_i(z) = prod_{j != i} (z - z_j) / (z_i - z_j).
inline UniPoly lagrange_basis(std::span<const Rat> z, std::size_t i) {
  if (i >= z.size()) throw std::out_of_range("lagrange_basis: index out of range");
  UniPoly out = UniPoly::constant(1);
  Rat denom = 1;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j == i) continue;
    if (z[j] == z[i]) throw std::invalid_argument("lagrange_basis: repeated node " + to_string(z[i]));
    out = out * UniPoly::linear_factor(z[j]);
    denom *= z[i] - z[j];
  }
  return out * Rat(1 / denom);
}

/// Degree-d parametrized curve P(z) = sum_i lambda_i L_i(z) v_i.
class CurveMap {
 public:
  std::size_t degree() const { return lambda_.empty() ? 0 : lambda_.size() - 1; }
  const Vec& lambda() const { return lambda_; }
  const MarkedConfig& config() const { return config_; }
  /// P^j(z), one polynomial per ambient coordinate.
  const std::vector<UniPoly>& components() const { return components_; }

  Vec evaluate(const Rat& t) const {
    Vec out(components_.size());
    for (std::size_t j = 0; j < components_.size(); ++j) out[j] = components_[j](t);
    return out;
  }

  friend CurveMap interpolate_pn(const MarkedConfig& config, const Vec& lambda);

 private:
  Vec lambda_;
  MarkedConfig config_;
  std::vector<UniPoly> components_;
};

inline CurveMap interpolate_pn(const MarkedConfig& config, const Vec& lambda) {
  if (lambda.size() != config.size()) throw std::invalid_argument("interpolate_pn: need one lambda per marked point");
  if (config.size() == 0) throw std::invalid_argument("interpolate_pn: empty configuration");
  CurveMap c;
  c.lambda_ = lambda;
  c.config_ = config;
  c.components_.assign(config.ambient_dim(), UniPoly{});
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (lambda[i] == 0) continue;
    const UniPoly li = lagrange_basis(config.z(), i) * lambda[i];
    for (std::size_t j = 0; j < config.ambient_dim(); ++j) {
      const Rat& vij = config.points()[i][j];
      if (vij != 0) c.components_[j] += li * vij;
    }
  }
  return c;
}

/// Raised when a parametrization vanishes identically at a parameter.
class BasePointError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// [P^0(t) : ... : P^n(t)].
inline ProjPoint curve_point(const CurveMap& curve, const Rat& t) {
  Vec v = curve.evaluate(t);
  if (is_zero_vector(v)) throw BasePointError("curve_point: P(" + to_string(t) + ") is the zero vector (base point)");
  return ProjPoint(std::move(v));
}

enum class FibreKind { Empty, UniqueCurve, Pencil, Family };

inline std::string to_string(FibreKind k) {
  switch (k) {
    case FibreKind::Empty: return "Empty";
    case FibreKind::UniqueCurve: return "UniqueCurve";
    case FibreKind::Pencil: return "Pencil";
    case FibreKind::Family: return "Family";
  }
  return "Empty";
}

inline FibreKind parse_fibre_kind(const std::string& s) {
  if (s == "Empty") return FibreKind::Empty;
  if (s == "UniqueCurve") return FibreKind::UniqueCurve;
  if (s == "Pencil") return FibreKind::Pencil;
  if (s == "Family") return FibreKind::Family;
  throw ParseError("unknown fibre kind '" + s + "'");
}

/// Where a configuration departs from what a general one would give.
struct GenericityWitness {
  /// Index sets whose Pfaffian minor vanished although the general case
  /// predicts a nonzero value ({} stands for pf(A) itself).
  std::vector<std::vector<std::size_t>> vanishing_minors;
  /// Coordinates that vanish on the whole solution space.
  std::vector<std::size_t> zero_coordinates;
  /// Extra marked points forced to a base point (P(z_j) = 0 on the whole space).
  std::vector<std::size_t> base_point_extras;
  /// Kernel basis members that violate the open condition.
  std::vector<std::size_t> violating_basis;

  bool empty() const {
    return vanishing_minors.empty() && zero_coordinates.empty() && base_point_extras.empty() && violating_basis.empty();
  }
  friend bool operator==(const GenericityWitness&, const GenericityWitness&) = default;
};

/// Hypotheses of the nonempty-fibre criterion for P^n, as checked on the input.
struct PnHypotheses {
  bool degree_bound = false;       // d >= n m'
  bool wedge_rank = false;         // rank condition on the matrices (v_i ^ v_j)
  std::size_t imposed_rank = 0;    // rank of the stacked wedge conditions on lambda
  friend bool operator==(const PnHypotheses&, const PnHypotheses&) = default;
};

struct FibreDescription {
  FibreKind kind = FibreKind::Empty;
  /// Projective dimension of the solution set; empty when there is none.
  std::optional<std::size_t> dim;
  std::size_t kernel_dim = 0;
  bool nonvanishing_ok = false;
  /// Basis of the linear solution space (lambda coordinates for P^n,
  /// mu = lambda / zeta coordinates for quadrics).
  std::vector<Vec> kernel;
  std::vector<CurveMap> representatives;
  GenericityWitness witness;
  std::optional<PnHypotheses> hypotheses;
};

namespace detail {

// Linear maps that must not vanish at an admissible solution; each is a
// matrix applied to the solution vector.
using OpenConditions = std::vector<MatQ>;

inline bool vanishes_on(const MatQ& map, const std::vector<Vec>& basis) {
  for (const auto& v : basis)
    if (!is_zero_vector(map * v)) return false;
  return true;
}

inline bool admissible(const OpenConditions& conds, const Vec& x) {
  for (const auto& c : conds)
    if (is_zero_vector(c * x)) return false;
  return true;
}

inline FibreKind classify(std::size_t kernel_dim, bool ok) {
  if (kernel_dim == 0 || !ok) return FibreKind::Empty;
  if (kernel_dim == 1) return FibreKind::UniqueCurve;
  if (kernel_dim == 2) return FibreKind::Pencil;
  return FibreKind::Family;
}

/// Admissible basis members, plus one interior combination sum_k t^k b_k
/// (smallest t = 1, 2, ... that works) when the space has dimension >= 2.
inline std::vector<Vec> admissible_points(const OpenConditions& conds, const std::vector<Vec>& basis,
                                          std::vector<std::size_t>& violating) {
  std::vector<Vec> out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (admissible(conds, basis[k])) {
      out.push_back(normalize_leading(basis[k]));
    } else {
      violating.push_back(k);
    }
  }
  if (basis.size() >= 2) {
    // each condition is a nonzero polynomial of degree < dim in t, so a
    // good t exists among the first (#conds * dim + 1) integers
    const std::size_t limit = conds.size() * basis.size() + 2;
    for (std::size_t t = 1; t <= limit; ++t) {
      Vec x(basis.front().size());
      Rat pw = 1;
      for (const auto& b : basis) {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += pw * b[i];
        pw *= static_cast<long>(t);
      }
      if (admissible(conds, x)) {
        out.push_back(normalize_leading(std::move(x)));
        break;
      }
    }
  }
  return out;
}

inline MatQ coordinate_functional(std::size_t i, std::size_t n) {
  MatQ m(1, n);
  m(0, i) = 1;
  return m;
}

}  // namespace detail

/// Plucker coordinates of u ^ w, indexed by pairs a < b.
inline Vec wedge(const Vec& u, const Vec& w) {
  Vec out;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = a + 1; b < u.size(); ++b) out.push_back(u[a] * w[b] - u[b] * w[a]);
  return out;
}

/// Degree-d curves in P^n through d+1 base points (parametrized by lambda)
/// that also send each extra marking z_j to x_j. The extra conditions
/// P(z_j) ^ v_j = 0 are linear in lambda.
inline FibreDescription pn_fibre(const MarkedConfig& base, const MarkedConfig& extra, std::size_t n) {
  if (base.size() == 0) throw std::invalid_argument("pn_fibre: no base points");
  if (base.ambient_dim() != n + 1) throw std::invalid_argument("pn_fibre: base points must have n+1 coordinates");
  if (extra.size() > 0 && extra.ambient_dim() != n + 1) throw std::invalid_argument("pn_fibre: extra points must have n+1 coordinates");
  for (const auto& ze : extra.z())
    for (const auto& zb : base.z())
      if (ze == zb) throw std::invalid_argument("pn_fibre: repeated parameter " + to_string(ze));

  const std::size_t d = base.size() - 1;
  const std::size_t m_extra = extra.size();
  std::vector<UniPoly> lagrange;
  for (std::size_t i = 0; i <= d; ++i) lagrange.push_back(lagrange_basis(base.z(), i));

  // rows: one per (extra point, Plucker pair); columns: lambda_i
  std::vector<Vec> rows;
  // value map lambda -> P(z_j), one per extra point
  std::vector<MatQ> value_maps;
  PnHypotheses hyp;
  hyp.degree_bound = d >= n * m_extra;
  hyp.wedge_rank = true;
  for (std::size_t j = 0; j < m_extra; ++j) {
    const Vec& vj = extra.points()[j];
    const Rat& zj = extra.z()[j];
    MatQ value(n + 1, d + 1);
    std::vector<Vec> wedge_cols;
    for (std::size_t i = 0; i <= d; ++i) {
      const Rat li = lagrange[i](zj);
      for (std::size_t a = 0; a <= n; ++a) value(a, i) = li * base.points()[i][a];
      wedge_cols.push_back(wedge(base.points()[i], vj));
    }
    value_maps.push_back(value);
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = a + 1; b <= n; ++b) {
        Vec row(d + 1);
        for (std::size_t i = 0; i <= d; ++i) row[i] = value(a, i) * vj[b] - value(b, i) * vj[a];
        rows.push_back(std::move(row));
      }
    const std::size_t width = wedge_cols.front().size();
    if (width > 0) {
      const std::size_t full = rank(stack_rows(wedge_cols, width));
      for (std::size_t i = 0; i <= d && hyp.wedge_rank; ++i) {
        std::vector<Vec> dropped;
        for (std::size_t k = 0; k <= d; ++k)
          if (k != i) dropped.push_back(wedge_cols[k]);
        if (rank(stack_rows(dropped, width)) != full) hyp.wedge_rank = false;
      }
    }
  }

  const MatQ conditions = stack_rows(rows, d + 1);
  FibreDescription out;
  out.kernel = rows.empty() ? kernel_basis(MatQ(0, d + 1)) : kernel_basis(conditions);
  hyp.imposed_rank = rows.empty() ? 0 : rank(conditions);
  out.kernel_dim = out.kernel.size();
  out.hypotheses = hyp;

  detail::OpenConditions conds;
  for (std::size_t i = 0; i <= d; ++i) {
    conds.push_back(detail::coordinate_functional(i, d + 1));
    if (out.kernel_dim > 0 && detail::vanishes_on(conds.back(), out.kernel)) out.witness.zero_coordinates.push_back(i);
  }
  for (std::size_t j = 0; j < m_extra; ++j) {
    conds.push_back(value_maps[j]);
    if (out.kernel_dim > 0 && detail::vanishes_on(conds.back(), out.kernel)) out.witness.base_point_extras.push_back(j);
  }
  out.nonvanishing_ok = out.kernel_dim > 0 && out.witness.zero_coordinates.empty() && out.witness.base_point_extras.empty();
  out.kind = detail::classify(out.kernel_dim, out.nonvanishing_ok);
  if (out.kind != FibreKind::Empty) {
    out.dim = out.kernel_dim - 1;
    for (auto& lambda : detail::admissible_points(conds, out.kernel, out.witness.violating_basis)) {
      out.representatives.push_back(interpolate_pn(base, lambda));
    }
  }
  return out;
}

}  // namespace pfcurves
