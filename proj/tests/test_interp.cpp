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

#include <gtest/gtest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pfcurves/interp.hpp"
#include "pfcurves/pfaffian.hpp"
#include "pfcurves/quadric.hpp"
#include "pfcurves/quadric_fibre.hpp"

namespace pf = pfcurves;
using pf::FibreKind;
using pf::MarkedConfig;
using pf::MatQ;
using pf::QuadSpace;
using pf::Rat;
using pf::SkewMatQ;
using pf::Vec;

namespace {

Rat q(long p, long r = 1) { return pf::make_rat(p, r); }

Vec e(std::size_t i, std::size_t n) {
  Vec v(n);
  v[i] = 1;
  return v;
}

std::vector<Rat> range_z(std::size_t n) {
  std::vector<Rat> z;
  for (std::size_t i = 0; i < n; ++i) z.push_back(q(static_cast<long>(i)));
  return z;
}

// L_i(t) straight from the product formula
Rat lagrange_at(const std::vector<Rat>& z, std::size_t i, const Rat& t) {
  Rat r = 1;
  for (std::size_t j = 0; j < z.size(); ++j)
    if (j != i) r *= (t - z[j]) / (z[i] - z[j]);
  return r;
}

std::vector<Rat> distinct_z(pf::Rng& rng, std::size_t n) {
  std::vector<Rat> z;
  while (z.size() < n) {
    const Rat r = rng.rational(pf::SampleBox{1000});
    bool fresh = true;
    for (const auto& x : z) fresh = fresh && x != r;
    if (fresh) z.push_back(r);
  }
  return z;
}

MarkedConfig random_quadric_config(const QuadSpace& qs, pf::Rng& rng, std::size_t m) {
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < m; ++i) pts.push_back(pf::sample_quadric_point(qs, rng).coords());
  return MarkedConfig(distinct_z(rng, m), pts);
}

}  // namespace

TEST(Config, Validation) {
  EXPECT_THROW(MarkedConfig({q(0), q(0)}, {e(0, 2), e(1, 2)}), std::invalid_argument);
  EXPECT_THROW(MarkedConfig({q(0), q(1)}, {e(0, 2)}), std::invalid_argument);
  EXPECT_THROW(MarkedConfig({q(0), q(1)}, {e(0, 2), Vec(2)}), std::invalid_argument);
  EXPECT_THROW(MarkedConfig({q(0), q(1)}, {e(0, 2), e(0, 3)}), std::invalid_argument);
  const MarkedConfig c({q(0), q(1), q(3)}, {e(0, 2), e(1, 2), e(0, 2)});
  EXPECT_EQ(c.zeta(), (std::vector<Rat>{q(3), q(-2), q(6)}));
}

TEST(Lagrange, Examples) {
  EXPECT_EQ(pf::lagrange_basis(range_z(2), 0).coefficients(), (Vec{q(1), q(-1)}));
  EXPECT_EQ(pf::lagrange_basis(range_z(3), 1).coefficients(), (Vec{q(0), q(2), q(-1)}));
  pf::UniPoly sum;
  const auto z4 = range_z(4);
  for (std::size_t i = 0; i < 4; ++i) sum += pf::lagrange_basis(z4, i);
  EXPECT_EQ(sum.coefficients(), (Vec{q(1)}));
  const std::vector<Rat> rep{q(1), q(1)};
  EXPECT_THROW(pf::lagrange_basis(rep, 0), std::invalid_argument);
}

TEST(Lagrange, KroneckerDeltaOnRandomNodes) {
  pf::Rng rng(1);
  const auto z = distinct_z(rng, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto l = pf::lagrange_basis(z, i);
    EXPECT_EQ(l.degree(), 5);
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(l(z[j]), i == j ? 1 : 0);
    const Rat t = q(123, 7);
    EXPECT_EQ(l(t), lagrange_at(z, i, t));
  }
}

TEST(InterpolatePn, ConicThroughCoordinatePoints) {
  const MarkedConfig c(range_z(3), {e(0, 3), e(1, 3), e(2, 3)});
  const auto curve = pf::interpolate_pn(c, Vec{q(1), q(1), q(1)});
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(curve.components()[j], pf::lagrange_basis(c.z(), j));
  EXPECT_THROW(pf::interpolate_pn(c, Vec{q(1), q(1)}), std::invalid_argument);
}

TEST(InterpolatePn, ZeroLambdaLosesThePoint) {
  const MarkedConfig c(range_z(3), {e(0, 3), e(1, 3), e(2, 3)});
  const auto curve = pf::interpolate_pn(c, Vec{q(0), q(1), q(1)});
  EXPECT_THROW(pf::curve_point(curve, q(0)), pf::BasePointError);
}

TEST(InterpolatePn, LineThroughTwoPoints) {
  const Vec a{q(1), q(2), q(0)};
  const Vec b{q(0), q(1), q(5)};
  const MarkedConfig c({q(0), q(1)}, {a, b});
  const auto line = pf::interpolate_pn(c, Vec{q(1), q(1)});
  EXPECT_EQ(line.degree(), 1u);
  const Vec mid = line.evaluate(q(1, 2));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(mid[k], (a[k] + b[k]) / 2);
}

TEST(InterpolatePn, PassesThroughEveryPoint) {
  pf::Rng rng(2);
  for (std::size_t d = 0; d <= 6; ++d) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i <= d; ++i) {
      Vec v = rng.vector(4, pf::SampleBox{50});
      if (pf::is_zero_vector(v)) v[0] = 1;
      pts.push_back(v);
    }
    const MarkedConfig c(distinct_z(rng, d + 1), pts);
    Vec lambda(d + 1);
    for (auto& x : lambda) x = rng.nonzero_rational(pf::SampleBox{50});
    const auto curve = pf::interpolate_pn(c, lambda);
    for (std::size_t i = 0; i <= d; ++i) EXPECT_EQ(pf::curve_point(curve, c.z()[i]), pf::ProjPoint(pts[i]));
  }
}

TEST(PnFibre, NoExtraPointsGivesWholeSpace) {
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i <= d; ++i) pts.push_back(e(i % 3, 3));
    const auto fd = pf::pn_fibre(MarkedConfig(range_z(d + 1), pts), MarkedConfig{}, 2);
    ASSERT_TRUE(fd.dim.has_value());
    EXPECT_EQ(*fd.dim, d);
    EXPECT_EQ(fd.kernel_dim, d + 1);
    ASSERT_TRUE(fd.hypotheses.has_value());
    EXPECT_TRUE(fd.hypotheses->degree_bound);
  }
}

TEST(PnFibre, UniqueConicThroughFourPoints) {
  const MarkedConfig base(range_z(3), {e(0, 3), e(1, 3), e(2, 3)});
  const MarkedConfig extra({q(3)}, {Vec{q(1), q(1), q(1)}});
  const auto fd = pf::pn_fibre(base, extra, 2);
  EXPECT_EQ(fd.kind, FibreKind::UniqueCurve);
  ASSERT_EQ(fd.representatives.size(), 1u);
  // L0(3) = 1, L1(3) = -3, L2(3) = 3, so P(3) = (l0, -3 l1, 3 l2) must be proportional to (1,1,1)
  EXPECT_EQ(fd.representatives[0].lambda(), (Vec{q(1), q(-1, 3), q(1, 3)}));
  EXPECT_EQ(fd.hypotheses->imposed_rank, 2u);
  EXPECT_EQ(pf::curve_point(fd.representatives[0], q(3)), pf::ProjPoint(Vec{q(1), q(1), q(1)}));
}

TEST(PnFibre, ThreeNonCollinearPointsAdmitNoLine) {
  const MarkedConfig base({q(0), q(1)}, {e(0, 3), e(1, 3)});
  const MarkedConfig extra({q(2)}, {e(2, 3)});
  const auto fd = pf::pn_fibre(base, extra, 2);
  EXPECT_EQ(fd.kind, FibreKind::Empty);
  EXPECT_FALSE(fd.hypotheses->degree_bound);
}

TEST(PnFibre, RepeatedParametersRejected) {
  const MarkedConfig base({q(0), q(1)}, {e(0, 3), e(1, 3)});
  const MarkedConfig extra({q(1)}, {e(2, 3)});
  EXPECT_THROW(pf::pn_fibre(base, extra, 2), std::invalid_argument);
}

TEST(PnFibre, DimensionMatchesImposedRank) {
  pf::Rng rng(3);
  int checked = 0;
  for (std::size_t n = 2; n <= 3; ++n)
    for (std::size_t mp = 1; mp <= 2; ++mp)
      for (std::size_t d = n * mp; d <= n * mp + 2; ++d) {
        const auto z = distinct_z(rng, d + 1 + mp);
        std::vector<Vec> base_pts, extra_pts;
        for (std::size_t i = 0; i <= d; ++i) base_pts.push_back(rng.vector(n + 1, pf::SampleBox{30}));
        for (std::size_t j = 0; j < mp; ++j) extra_pts.push_back(rng.vector(n + 1, pf::SampleBox{30}));
        const MarkedConfig base(std::vector<Rat>(z.begin(), z.begin() + static_cast<long>(d + 1)), base_pts);
        const MarkedConfig extra(std::vector<Rat>(z.begin() + static_cast<long>(d + 1), z.end()), extra_pts);
        const auto fd = pf::pn_fibre(base, extra, n);
        // wedge conditions rebuilt from the product formula
        std::vector<Vec> rows;
        for (std::size_t j = 0; j < mp; ++j)
          for (std::size_t a = 0; a <= n; ++a)
            for (std::size_t b = a + 1; b <= n; ++b) {
              Vec row(d + 1);
              for (std::size_t i = 0; i <= d; ++i) {
                const Rat l = lagrange_at(base.z(), i, extra.z()[j]);
                row[i] = l * (base_pts[i][a] * extra_pts[j][b] - base_pts[i][b] * extra_pts[j][a]);
              }
              rows.push_back(row);
            }
        const std::size_t r = pf::rank(pf::stack_rows(rows, d + 1));
        EXPECT_EQ(fd.hypotheses->imposed_rank, r);
        EXPECT_EQ(r, n * mp);
        EXPECT_TRUE(fd.hypotheses->degree_bound);
        ASSERT_TRUE(fd.dim.has_value());
        EXPECT_EQ(*fd.dim, d - r);
        for (const auto& c : fd.representatives)
          for (std::size_t j = 0; j < mp; ++j) EXPECT_EQ(pf::curve_point(c, extra.z()[j]), pf::ProjPoint(extra_pts[j]));
        ++checked;
      }
  EXPECT_EQ(checked, 12);
}

TEST(RescaledSkew, Examples) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  const auto a1 = pf::build_rescaled_skew(q3, MarkedConfig({q(0), q(1)}, {e(0, 5), e(1, 5)}));
  EXPECT_EQ(a1.matrix.matrix(), MatQ::from_rows({{q(0), q(1)}, {q(-1), q(0)}}));

  const auto a3 = pf::build_rescaled_skew(q3, pf::alternating_config(range_z(4), 5));
  EXPECT_EQ(a3.matrix(0, 1), 1);
  EXPECT_EQ(a3.matrix(0, 3), q(1, 3));
  EXPECT_EQ(a3.matrix(1, 2), 1);
  EXPECT_EQ(a3.matrix(2, 3), 1);
  EXPECT_EQ(a3.matrix(0, 2), 0);
  EXPECT_EQ(a3.matrix(1, 3), 0);

  const Vec v{q(1), q(0), q(0), q(0), q(0)};
  const auto a0 = pf::build_rescaled_skew(q3, MarkedConfig(range_z(4), {v, v, v, v}));
  EXPECT_TRUE(a0.matrix.matrix().is_zero());
}

TEST(KernelViaPfaffians, Examples) {
  const auto k3 = pf::kernel_via_pfaffians(SkewMatQ::from_upper(3, {q(1), q(2), q(3)}));
  ASSERT_EQ(k3.basis.size(), 1u);
  EXPECT_EQ(k3.spanning[0], (Vec{q(-3), q(2), q(-1)}));

  SkewMatQ a4(4);
  a4.set(0, 1, 1);
  const auto k4 = pf::kernel_via_pfaffians(a4);
  EXPECT_EQ(k4.basis.size(), 2u);
  EXPECT_TRUE(pf::same_span(k4.basis, {e(2, 4), e(3, 4)}, 4));

  try {
    pf::kernel_via_pfaffians(SkewMatQ::from_upper(2, {q(4)}));
    FAIL() << "expected a rank precondition error";
  } catch (const pf::RankPreconditionError& err) {
    EXPECT_NE(std::string(err.what()).find("corank is 0"), std::string::npos);
  }
}

TEST(KernelViaPfaffians, AgreesWithEliminationKernel) {
  pf::Rng rng(4);
  for (std::size_t n = 2; n <= 9; ++n)
    for (int trial = 0; trial < 6; ++trial) {
      const std::size_t r = n % 2 == 1 ? n - 1 : n - 2;
      const SkewMatQ a = pf::oracle::random_skew_of_rank(rng, n, r, 9);
      const auto pk = pf::kernel_via_pfaffians(a);
      const auto kb = pf::kernel_basis(a.matrix());
      EXPECT_TRUE(pf::same_span(pk.basis, kb, n)) << "n=" << n;
      for (const auto& v : pk.spanning) EXPECT_TRUE(pf::oracle::in_kernel(a.matrix(), v));
    }
}

TEST(SolveQuadricFibre, LineThroughGeneralPairIsEmpty) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  const auto fd = pf::solve_quadric_fibre(q3, MarkedConfig({q(0), q(1)}, {e(0, 5), e(1, 5)}));
  EXPECT_EQ(fd.kind, FibreKind::Empty);
  EXPECT_FALSE(fd.dim.has_value());
  EXPECT_TRUE(fd.representatives.empty());
}

TEST(SolveQuadricFibre, ConicThroughThreeGeneralPoints) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  pf::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cfg = random_quadric_config(q3, rng, 3);
    const auto fd = pf::solve_quadric_fibre(q3, cfg);
    EXPECT_EQ(fd.kind, FibreKind::UniqueCurve);
    EXPECT_EQ(*fd.dim, 0u);
    ASSERT_EQ(fd.representatives.size(), 1u);
    EXPECT_TRUE(pf::verify_on_quadric(q3, fd.representatives[0]));
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_EQ(pf::curve_point(fd.representatives[0], cfg.z()[i]), pf::ProjPoint(cfg.points()[i]));
  }
}

TEST(SolveQuadricFibre, LineInsideTheQuadric) {
  // B(e0, e2) = 0, so A = 0 and every lambda works: the whole pencil of
  // parametrizations of the line
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  const auto fd = pf::solve_quadric_fibre(q3, MarkedConfig({q(0), q(1)}, {e(0, 5), e(2, 5)}));
  EXPECT_EQ(fd.kernel_dim, 2u);
  EXPECT_EQ(fd.kind, FibreKind::Pencil);
  EXPECT_EQ(*fd.dim, 1u);
  EXPECT_TRUE(fd.witness.vanishing_minors.size() == 1 && fd.witness.vanishing_minors[0].empty());
  for (const auto& c : fd.representatives) EXPECT_TRUE(pf::verify_on_quadric(q3, c));
}

TEST(SolveQuadricFibre, FamilyWhenAllPointsAgree) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  const auto fd = pf::solve_quadric_fibre(q3, MarkedConfig(range_z(4), {e(0, 5), e(2, 5), e(0, 5), e(2, 5)}));
  EXPECT_EQ(fd.kind, FibreKind::Family);
  EXPECT_EQ(*fd.dim, 3u);
  for (const auto& c : fd.representatives) EXPECT_TRUE(pf::verify_on_quadric(q3, c));
}

TEST(SolveQuadricFibre, RejectsPointsOffTheQuadric) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  const Vec off{q(1), q(1), q(0), q(0), q(0)};
  EXPECT_THROW(pf::solve_quadric_fibre(q3, MarkedConfig({q(0), q(1)}, {e(0, 5), off})), std::invalid_argument);
}

TEST(VerifyOnQuadric, Examples) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  const Vec a{q(1), q(1), q(0), q(0), q(0)};
  const Vec b{q(0), q(0), q(1), q(1), q(1)};
  const Vec c{q(1), q(0), q(1), q(0), q(2)};
  EXPECT_FALSE(pf::verify_on_quadric(q3, pf::interpolate_pn(MarkedConfig(range_z(3), {a, b, c}), Vec{q(1), q(1), q(1)})));
  const auto constant = pf::interpolate_pn(MarkedConfig({q(5)}, {e(2, 5)}), Vec{q(3)});
  EXPECT_TRUE(pf::verify_on_quadric(q3, constant));
  const auto p = pf::quadric_pullback(q3, pf::interpolate_pn(MarkedConfig(range_z(3), {a, b, c}), Vec{q(1), q(1), q(1)}));
  EXPECT_LE(p.degree(), 4);
}

TEST(DoubleVanishing, CurveOnQuadricIffMuInKernel) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  pf::Rng rng(6);
  for (std::size_t d = 1; d <= 6; ++d)
    for (int trial = 0; trial < 3; ++trial) {
      const auto cfg = random_quadric_config(q3, rng, d + 1);
      const auto a = pf::build_rescaled_skew(q3, cfg).matrix.matrix();
      // random mu: in the kernel only by accident
      Vec mu(d + 1);
      for (auto& x : mu) x = rng.nonzero_rational(pf::SampleBox{100});
      Vec lambda(d + 1);
      for (std::size_t i = 0; i <= d; ++i) lambda[i] = mu[i] * cfg.zeta()[i];
      EXPECT_EQ(pf::verify_on_quadric(q3, pf::interpolate_pn(cfg, lambda)), pf::oracle::in_kernel(a, mu));
      // kernel vectors always give curves on the quadric
      for (const auto& k : pf::kernel_basis(a)) {
        Vec l(d + 1);
        for (std::size_t i = 0; i <= d; ++i) l[i] = k[i] * cfg.zeta()[i];
        EXPECT_TRUE(pf::verify_on_quadric(q3, pf::interpolate_pn(cfg, l)));
      }
    }
}

TEST(DoubleVanishing, UnscaledKernelVectorIsNotASolution) {
  // taking lambda itself in ker(A) (no zeta rescaling) fails on general data
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  pf::Rng rng(7);
  for (std::size_t d : {2u, 4u}) {
    const auto cfg = random_quadric_config(q3, rng, d + 1);
    const auto k = pf::kernel_basis(pf::build_rescaled_skew(q3, cfg).matrix.matrix());
    ASSERT_EQ(k.size(), 1u);
    EXPECT_FALSE(pf::verify_on_quadric(q3, pf::interpolate_pn(cfg, k[0])));
  }
}

TEST(Alternating, MaximalRank) {
  const QuadSpace q3 = QuadSpace::split_quadric(3);
  pf::Rng rng(8);
  for (std::size_t d = 1; d <= 9; ++d)
    for (int trial = 0; trial < 3; ++trial) {
      const auto a = pf::build_rescaled_skew(q3, pf::alternating_config(distinct_z(rng, d + 1), 5));
      EXPECT_EQ(pf::rank(a.matrix.matrix()), d % 2 == 1 ? d + 1 : d) << "d=" << d;
    }
}

TEST(CauchyPfaffian, Examples) {
  EXPECT_EQ(pf::cauchy_pfaffian(range_z(2)), 1);
  EXPECT_EQ(pf::cauchy_pfaffian(range_z(4)), q(4, 3));
  const QuadSpace h = QuadSpace::split(2);
  const auto z6 = range_z(6);
  const auto a6 = pf::build_rescaled_skew(h, pf::alternating_config(z6, 2)).matrix;
  EXPECT_EQ(pf::cauchy_pfaffian(z6), pf::pfaffian_by_pairings(a6));
  EXPECT_THROW(pf::cauchy_pfaffian(range_z(3)), std::invalid_argument);
  EXPECT_THROW(pf::cauchy_pfaffian(std::vector<Rat>{q(1), q(1)}), std::invalid_argument);
}

TEST(CauchyPfaffian, MatchesDirectPfaffian) {
  const QuadSpace h = QuadSpace::split(2);
  pf::Rng rng(9);
  for (std::size_t m = 2; m <= 10; m += 2)
    for (int trial = 0; trial < 5; ++trial) {
      const auto z = distinct_z(rng, m);
      EXPECT_EQ(pf::cauchy_pfaffian(z), pf::pfaffian(pf::build_rescaled_skew(h, pf::alternating_config(z, 2)).matrix));
    }
}
