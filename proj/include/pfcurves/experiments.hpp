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
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfcurves/interp.hpp"
#include "pfcurves/matrix.hpp"
#include "pfcurves/pfaffian.hpp"
#include "pfcurves/quadric.hpp"
#include "pfcurves/quadric_fibre.hpp"
#include "pfcurves/random.hpp"

namespace pfcurves {

struct ProbeWitness {
  std::size_t trial = 0;
  std::uint64_t trial_seed = 0;
  std::string config_digest;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  std::string label;
  std::string expected;
  /// What made the trial non-general, or "unwitnessed".
  std::string reason;
  friend bool operator==(const ProbeWitness&, const ProbeWitness&) = default;
};

struct ProbeReport {
  std::string probe_name;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  /// Curve type or construction variant; empty when the probe has none.
  std::string variant;
  std::map<std::string, std::size_t> histogram;
  std::vector<ProbeWitness> witnesses;
  bool conforming = true;
  /// False when the probe runs below the range where a prediction is made.
  bool asserted = true;
  std::size_t unwitnessed = 0;
  std::optional<std::size_t> max_rank;
  std::optional<std::size_t> rank_bound;
  friend bool operator==(const ProbeReport&, const ProbeReport&) = default;
};

/// Called with every configuration a fibre probe solves and its result.
using FibreObserver = std::function<void(const MarkedConfig&, const FibreDescription&)>;

/// FNV-1a over the canonical text of a configuration.
inline std::string config_digest(const MarkedConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& z : c.z()) feed(to_string(z));
  for (const auto& v : c.points())
    for (const auto& x : v) feed(to_string(x));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// `count` pairwise distinct rationals from the box.
inline std::vector<Rat> sample_distinct(Rng& rng, std::size_t count, const SamplerOptions& opts) {
  std::vector<Rat> out;
  std::size_t failures = 0;
  while (out.size() < count) {
    Rat r = rng.rational(opts.box);
    bool fresh = true;
    for (const auto& x : out) fresh = fresh && x != r;
    if (fresh) {
      out.push_back(std::move(r));
    } else if (++failures >= opts.max_attempts) {
      throw SamplingError("sample_distinct: too many repeated values");
    }
  }
  return out;
}

namespace detail {

/// The rational normal cubic t -> (1, -t^3, t, t^2, 0) of the split form on
/// five coordinates, moved by an isometry. Homogeneous in [s : t].
struct TwistedCubic {
  MatQ g;
  Vec at(const Rat& t) const { return g * Vec{Rat(1), Rat(-t * t * t), t, Rat(t * t), Rat(0)}; }
};

inline TwistedCubic random_twisted_cubic(const QuadSpace& q3, Rng& rng, const SamplerOptions& opts) {
  SamplerOptions small = opts;
  small.box.bound = 6;
  return TwistedCubic{random_isometry(q3, rng, 3, small)};
}

/// Degree-4 curve on Q3 through five sampled points whose coordinate
/// polynomials are independent, so that it spans P^4.
inline CurveMap random_spanning_quartic(const QuadSpace& q3, Rng& rng, const SamplerOptions& opts) {
  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::vector<Vec> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(sample_quadric_point(q3, rng, opts).coords());
    MarkedConfig cfg(sample_distinct(rng, 5, opts), std::move(pts));
    FibreDescription fd = solve_quadric_fibre(q3, cfg);
    if (fd.kind != FibreKind::UniqueCurve) continue;
    const CurveMap& c = fd.representatives.front();
    MatQ coeffs(c.components().size(), 5);
    for (std::size_t j = 0; j < c.components().size(); ++j)
      for (std::size_t k = 0; k < 5; ++k) coeffs(j, k) = c.components()[j].coefficient(k);
    if (rank(coeffs) == 5) return c;
  }
  throw SamplingError("random_spanning_quartic: no nondegenerate quartic after " + std::to_string(opts.max_attempts) + " attempts");
}

/// Linear form v -> pf(A) where A is the rescaled matrix of `cfg` with its
/// last point replaced by v.
inline Vec pfaffian_form_last(const QuadSpace& quad, const std::vector<Rat>& z, const std::vector<Vec>& pts) {
  Vec form(quad.dim());
  const std::size_t m = z.size();
  for (std::size_t k = 0; k < quad.dim(); ++k) {
    Vec e(quad.dim());
    e[k] = 1;
    SkewMatQ a(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const Vec& vi = pts[i];
        const Vec& vj = j + 1 == m ? e : pts[j];
        const Rat b = quad.bilinear(vi, vj);
        if (b != 0) a.set(i, j, b / (z[j] - z[i]));
      }
    form[k] = pfaffian(a);
  }
  return form;
}

/// Random line of Q3: g * span(e0, e2) for a random isometry g.
inline std::pair<Vec, Vec> random_quadric_line(const QuadSpace& q3, Rng& rng, const SamplerOptions& opts) {
  SamplerOptions small = opts;
  small.box.bound = 50;
  const MatQ g = random_isometry(q3, rng, 4, small);
  Vec e0(q3.dim()), e2(q3.dim());
  e0[0] = 1;
  e2[2] = 1;
  return {g * e0, g * e2};
}

inline std::size_t ceil_half(std::size_t x) { return (x + 1) / 2; }

inline void tally(ProbeReport& r, const std::string& label) { ++r.histogram[label]; }

}  // namespace detail

/// Parity law on split Q_n: d+1 general points and parameters per trial.
/// Odd d predicts Empty, even d predicts UniqueCurve.
inline ProbeReport probe_general_fibre(std::size_t n, std::size_t d, std::size_t trials, std::uint64_t seed,
                                       const SamplerOptions& opts = {}, const FibreObserver& observe = {}) {
  if (n < 2) throw std::invalid_argument("probe_general_fibre: n must be >= 2");
  const QuadSpace quad = QuadSpace::split_quadric(n);
  ProbeReport r;
  r.probe_name = "general-fibre";
  r.n = n;
  r.d = d;
  r.trials = trials;
  r.seed = seed;
  const FibreKind expected = d % 2 == 1 ? FibreKind::Empty : FibreKind::UniqueCurve;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    std::vector<Rat> z = sample_distinct(rng, d + 1, opts);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i <= d; ++i) pts.push_back(sample_quadric_point(quad, rng, opts).coords());
    const MarkedConfig cfg(std::move(z), std::move(pts));
    const FibreDescription fd = solve_quadric_fibre(quad, cfg);
    if (observe) observe(cfg, fd);
    detail::tally(r, to_string(fd.kind));
    if (fd.kind == expected) continue;
    ProbeWitness w{t, derive_seed(seed, t), config_digest(cfg), d + 1 - fd.kernel_dim, fd.kernel_dim,
                   to_string(fd.kind), to_string(expected), ""};
    if (!fd.witness.vanishing_minors.empty()) {
      w.reason = "vanishing pfaffian minor";
    } else if (!fd.witness.zero_coordinates.empty()) {
      w.reason = "coordinate vanishes on kernel";
    } else {
      w.reason = "unwitnessed";
      ++r.unwitnessed;
    }
    r.witnesses.push_back(std::move(w));
  }
  r.conforming = r.unwitnessed == 0;
  return r;
}

enum class RankCurve { Quartic, Cubic };

inline std::string to_string(RankCurve c) { return c == RankCurve::Quartic ? "quartic" : "cubic"; }

inline RankCurve parse_rank_curve(const std::string& s) {
  if (s == "quartic") return RankCurve::Quartic;
  if (s == "cubic") return RankCurve::Cubic;
  throw ParseError("unknown curve type '" + s + "' (expected quartic or cubic)");
}

/// Ranks of the rescaled matrix for d+1 points on a fixed rational curve of
/// split Q3 with random markings. Conforming iff the largest observed rank
/// reaches 2 ceil((d-1)/2).
inline ProbeReport probe_rank_on_curve(std::size_t d, std::size_t trials, std::uint64_t seed,
                                       RankCurve curve = RankCurve::Quartic, const SamplerOptions& opts = {}) {
  if (d < 2) throw std::invalid_argument("probe_rank_on_curve: d must be >= 2");
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  ProbeReport r;
  r.probe_name = "rank-on-curve";
  r.n = 3;
  r.d = d;
  r.trials = trials;
  r.seed = seed;
  r.variant = to_string(curve);
  r.rank_bound = 2 * detail::ceil_half(d - 1);

  Rng curve_rng = Rng::stream(seed, ~std::uint64_t{0});
  std::optional<CurveMap> quartic;
  std::optional<detail::TwistedCubic> cubic;
  if (curve == RankCurve::Quartic) {
    quartic = detail::random_spanning_quartic(q3, curve_rng, opts);
  } else {
    cubic = detail::random_twisted_cubic(q3, curve_rng, opts);
  }
  auto point_at = [&](const Rat& s) { return quartic ? quartic->evaluate(s) : cubic->at(s); };

  std::size_t best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    std::vector<Rat> s;
    std::vector<Vec> pts;
    std::size_t failures = 0;
    while (pts.size() < d + 1) {
      s = sample_distinct(rng, d + 1, opts);
      pts.clear();
      for (const auto& si : s) {
        Vec p = point_at(si);
        if (is_zero_vector(p)) break;
        pts.push_back(std::move(p));
      }
      if (pts.size() < d + 1 && ++failures >= opts.max_attempts) throw SamplingError("probe_rank_on_curve: curve keeps hitting a base point");
    }
    const MarkedConfig cfg(sample_distinct(rng, d + 1, opts), std::move(pts));
    const RescaledSkew skew = build_rescaled_skew(q3, cfg);
    const std::size_t rk = rank(skew.matrix.matrix());
    best = std::max(best, rk);
    detail::tally(r, "rank " + std::to_string(rk));
    if (rk < *r.rank_bound) {
      r.witnesses.push_back({t, derive_seed(seed, t), config_digest(cfg), rk, d + 1 - rk, "rank " + std::to_string(rk),
                             "rank " + std::to_string(*r.rank_bound), "rank below bound"});
    }
  }
  r.max_rank = best;
  r.conforming = trials > 0 && best >= *r.rank_bound;
  return r;
}

enum class V5Variant { Component, Connecting };

inline std::string to_string(V5Variant v) { return v == V5Variant::Component ? "component" : "connecting"; }

inline V5Variant parse_v5_variant(const std::string& s) {
  if (s == "component") return V5Variant::Component;
  if (s == "connecting") return V5Variant::Connecting;
  throw ParseError("unknown variant '" + s + "' (expected component or connecting)");
}

/// Fibres over configurations supported on a twisted cubic of split Q3.
///
/// component:  d points on the cubic and one more point of Q3.
/// connecting: d-1 points on the cubic, one on a line of Q3 through a point
///             of the cubic, and one more point of Q3.
/// For odd d the last free point is placed where pf(A) = 0. Predicted:
/// UniqueCurve for even d, Pencil for odd d; asserted only for d >= 3.
inline ProbeReport probe_v5_fibre(std::size_t d, std::size_t trials, std::uint64_t seed,
                                  V5Variant variant = V5Variant::Component, const SamplerOptions& opts = {},
                                  const FibreObserver& observe = {}) {
  if (d < 2) throw std::invalid_argument("probe_v5_fibre: d must be >= 2");
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  ProbeReport r;
  r.probe_name = "v5-fibre";
  r.n = 3;
  r.d = d;
  r.trials = trials;
  r.seed = seed;
  r.variant = to_string(variant);
  r.asserted = d >= 3;
  const bool odd = d % 2 == 1;
  const FibreKind expected = odd ? FibreKind::Pencil : FibreKind::UniqueCurve;
  const std::size_t expected_kernel = odd ? 2 : 1;

  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    std::optional<MarkedConfig> cfg;
    for (std::size_t attempt = 0; attempt < opts.max_attempts && !cfg; ++attempt) {
      const detail::TwistedCubic gamma = detail::random_twisted_cubic(q3, rng, opts);
      const std::vector<Rat> z = sample_distinct(rng, d + 1, opts);
      const std::size_t on_curve = variant == V5Variant::Component ? d : d - 1;
      std::vector<Vec> pts;
      for (const auto& s : sample_distinct(rng, on_curve, opts)) pts.push_back(gamma.at(s));
      if (variant == V5Variant::Connecting) {
        const Vec p = gamma.at(rng.rational(opts.box));
        const auto [a, b] = detail::random_quadric_line(q3, rng, opts);
        const Rat pb = q3.bilinear(p, b);
        const Rat pa = q3.bilinear(p, a);
        Vec w(q3.dim());
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = pb * a[k] - pa * b[k];
        if (is_zero_vector(w)) continue;
        const Rat r0 = rng.rational(opts.box);
        Vec x(q3.dim());
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = p[k] + r0 * w[k];
        if (is_zero_vector(x)) continue;
        pts.push_back(std::move(x));
      }
      Vec free_point;
      if (odd) {
        std::vector<Vec> with_slot = pts;
        with_slot.emplace_back(q3.dim());
        const Vec form = detail::pfaffian_form_last(q3, z, with_slot);
        const auto [a, b] = detail::random_quadric_line(q3, rng, opts);
        const Rat la = dot(form, a);
        const Rat lb = dot(form, b);
        free_point = Vec(q3.dim());
        for (std::size_t k = 0; k < free_point.size(); ++k) free_point[k] = lb * a[k] - la * b[k];
      } else {
        free_point = sample_quadric_point(q3, rng, opts).coords();
      }
      if (is_zero_vector(free_point)) continue;
      pts.push_back(std::move(free_point));
      cfg.emplace(z, std::move(pts));
    }
    if (!cfg) throw SamplingError("probe_v5_fibre: configuration construction failed");

    const FibreDescription fd = solve_quadric_fibre(q3, *cfg);
    if (observe) observe(*cfg, fd);
    detail::tally(r, to_string(fd.kind));
    if (fd.kind == expected) continue;
    ProbeWitness w{t, derive_seed(seed, t), config_digest(*cfg), d + 1 - fd.kernel_dim, fd.kernel_dim,
                   to_string(fd.kind), to_string(expected), ""};
    if (fd.kernel_dim > expected_kernel) {
      w.reason = "rank drop";
    } else if (!fd.witness.vanishing_minors.empty()) {
      w.reason = "vanishing pfaffian minor";
    } else if (!fd.witness.zero_coordinates.empty()) {
      w.reason = "coordinate vanishes on kernel";
    } else {
      w.reason = "unwitnessed";
      if (r.asserted) ++r.unwitnessed;
    }
    r.witnesses.push_back(std::move(w));
  }
  r.conforming = r.unwitnessed == 0;
  return r;
}

}  // namespace pfcurves
