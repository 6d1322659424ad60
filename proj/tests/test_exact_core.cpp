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

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "pfcurves/matrix.hpp"
#include "pfcurves/pfaffian.hpp"
#include "pfcurves/poly.hpp"
#include "pfcurves/random.hpp"
#include "pfcurves/rational.hpp"

namespace pf = pfcurves;
using pf::MatQ;
using pf::Rat;
using pf::SkewMatQ;
using pf::Vec;

namespace {

Rat q(long p, long r = 1) { return pf::make_rat(p, r); }

SkewMatQ example4() { return SkewMatQ::from_upper(4, {q(1), q(2), q(3), q(4), q(5), q(6)}); }

}  // namespace

TEST(Rational, ParseCanonicalForms) {
  EXPECT_EQ(pf::parse_rat("3/4"), q(3, 4));
  EXPECT_EQ(pf::parse_rat("-6/8"), q(-3, 4));
  EXPECT_EQ(pf::parse_rat("5"), q(5));
  EXPECT_EQ(pf::to_string(pf::parse_rat("10/4")), "5/2");
  EXPECT_EQ(pf::to_string(q(-7)), "-7");
  const Rat big = pf::parse_rat("123456789012345678901234567891/7");
  EXPECT_EQ(pf::to_string(big), "123456789012345678901234567891/7");
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char* bad : {"", "1/0", "abc", "inf", "1.5", "1/", "/2", "1/2/3", " 1", "--1"}) {
    EXPECT_THROW(pf::parse_rat(bad), pf::ParseError) << bad;
  }
}

TEST(Rational, CanonicalDenominatorPositive) {
  const Rat r = pf::make_rat(3, -6);
  EXPECT_EQ(r.get_den(), 2);
  EXPECT_EQ(r.get_num(), -1);
}

TEST(Rational, NormalizeLeading) {
  EXPECT_EQ(pf::normalize_leading(Vec{q(0), q(2), q(4)}), (Vec{q(0), q(1), q(2)}));
  EXPECT_EQ(pf::normalize_leading(Vec{q(0), q(0)}), (Vec{q(0), q(0)}));
}

TEST(UniPoly, ArithmeticAndEvaluation) {
  const pf::UniPoly a = pf::UniPoly::linear_factor(q(1));
  const pf::UniPoly b = pf::UniPoly::linear_factor(q(-1));
  const pf::UniPoly p = a * b;
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coefficients(), (Vec{q(-1), q(0), q(1)}));
  EXPECT_EQ(p(q(3)), q(8));
  EXPECT_EQ(p.derivative().coefficients(), (Vec{q(0), q(2)}));
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_TRUE((p - p).coefficients().empty());
}

TEST(Matrix, RankExamples) {
  EXPECT_EQ(pf::rank(MatQ::identity(2)), 2u);
  EXPECT_EQ(pf::rank(MatQ(3, 3)), 0u);
  EXPECT_EQ(pf::rank(MatQ::from_rows({{q(1), q(2)}, {q(2), q(4)}})), 1u);
}

TEST(Matrix, KernelExamples) {
  EXPECT_TRUE(pf::kernel_basis(MatQ::identity(2)).empty());
  EXPECT_EQ(pf::kernel_basis(MatQ(1, 3)).size(), 3u);
  const auto k = pf::kernel_basis(MatQ::from_rows({{q(0), q(1)}, {q(0), q(0)}}));
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(pf::normalize_leading(k[0]), (Vec{q(1), q(0)}));
}

TEST(Matrix, RankNullityAndKernelOnRandomInputs) {
  pf::Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng.uniform_int(0, 5);
    const std::size_t cols = 1 + rng.uniform_int(0, 5);
    const std::size_t inner = 1 + rng.uniform_int(0, 4);
    // product of random factors has rank <= inner
    const MatQ m = pf::oracle::random_matrix(rng, rows, inner, 9) * pf::oracle::random_matrix(rng, inner, cols, 9);
    const auto k = pf::kernel_basis(m);
    EXPECT_EQ(pf::rank(m) + k.size(), cols);
    for (const auto& v : k) EXPECT_TRUE(pf::oracle::in_kernel(m, v));
    EXPECT_EQ(pf::rank(pf::stack_rows(k, cols)), k.size());
  }
}

TEST(Matrix, DeterminantMatchesOracles) {
  pf::Rng rng(12);
  for (std::size_t n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 8; ++trial) {
      const MatQ m = pf::oracle::random_matrix(rng, n, n, 20);
      EXPECT_EQ(pf::determinant(m), pf::oracle::leibniz_det(m));
      EXPECT_EQ(pf::determinant(m), pf::oracle::bareiss_det(m));
    }
  EXPECT_EQ(pf::determinant(MatQ::from_rows({{q(1), q(2)}, {q(2), q(4)}})), 0);
}

TEST(Matrix, SkewValidation) {
  EXPECT_THROW(SkewMatQ(MatQ::from_rows({{q(0), q(1)}, {q(1), q(0)}})), std::invalid_argument);
  EXPECT_THROW(SkewMatQ(MatQ::from_rows({{q(1), q(0)}, {q(0), q(-1)}})), std::invalid_argument);
  SkewMatQ a(3);
  a.set(0, 2, q(5));
  EXPECT_EQ(a(2, 0), q(-5));
  EXPECT_TRUE(a.matrix().is_skew());
}

TEST(Pfaffian, SpecExamples) {
  EXPECT_EQ(pf::pfaffian(SkewMatQ::from_upper(2, {q(5)})), q(5));
  EXPECT_EQ(pf::pfaffian(SkewMatQ::from_upper(3, {q(1), q(2), q(3)})), 0);
  EXPECT_EQ(pf::pfaffian(example4()), q(8));
  EXPECT_EQ(pf::determinant(example4().matrix()), q(64));
  EXPECT_EQ(pf::pfaffian(SkewMatQ(0)), 1);
}

TEST(Pfaffian, RejectsNonSkew) {
  EXPECT_THROW(pf::pfaffian(MatQ::from_rows({{q(0), q(1)}, {q(2), q(0)}})), std::invalid_argument);
  EXPECT_THROW(pf::pfaffian(MatQ(2, 3)), std::invalid_argument);
}

TEST(Pfaffian, MinorExamples) {
  const SkewMatQ a = example4();
  EXPECT_EQ(pf::pfaffian_minor(a, {0, 1}), q(6));
  EXPECT_EQ(pf::pfaffian_minor(a, {0, 1, 2, 3}), 1);
  EXPECT_EQ(pf::pfaffian_minor(a, {0}), 0);
  EXPECT_THROW(pf::pfaffian_minor(a, {4}), std::out_of_range);
}

TEST(Pfaffian, PairingCountIsDoubleFactorial) {
  std::size_t expected = 1;
  for (std::size_t k = 1; k <= 5; ++k) {
    expected *= 2 * k - 1;
    std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
    const std::size_t count = pf::for_each_pairing(2 * k, [&](const auto& pairs, int) { seen.insert(pairs); });
    EXPECT_EQ(count, expected);
    EXPECT_EQ(seen.size(), expected);
  }
  EXPECT_EQ(pf::for_each_pairing(5, [](const auto&, int) {}), 0u);
}

TEST(Pfaffian, AgreesWithPermutationOracle) {
  pf::Rng rng(13);
  for (std::size_t n = 2; n <= 8; n += 2)
    for (int trial = 0; trial < (n == 8 ? 2 : 6); ++trial) {
      const SkewMatQ a = pf::oracle::random_skew(rng, n, 15);
      const Rat expected = pf::oracle::permutation_pfaffian(a.matrix());
      EXPECT_EQ(pf::pfaffian(a), expected);
      if (n <= 6) EXPECT_EQ(pf::pfaffian_by_pairings(a), expected);
    }
}

TEST(Pfaffian, ExpansionAndEliminationAgree) {
  pf::Rng rng(14);
  for (std::size_t n = 2; n <= 8; n += 2)
    for (int trial = 0; trial < 5; ++trial) {
      SkewMatQ a = pf::oracle::random_skew(rng, n, 15);
      if (trial == 0) a.set(0, 1, 0);  // forces a pivot search
      std::vector<std::size_t> idx(n);
      for (std::size_t i = 0; i < n; ++i) idx[i] = i;
      EXPECT_EQ(pf::detail::pfaffian_expand(a, idx), pf::detail::pfaffian_eliminate(a.matrix()));
    }
}

TEST(Pfaffian, SquareIsDeterminantUpToTen) {
  pf::Rng rng(15);
  for (std::size_t n = 2; n <= 10; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      const SkewMatQ a = pf::oracle::random_skew(rng, n, 50);
      const Rat p = pf::pfaffian(a);
      EXPECT_EQ(p * p, pf::oracle::bareiss_det(a.matrix())) << "n=" << n;
    }
}

TEST(Pfaffian, CongruenceRule) {
  pf::Rng rng(16);
  for (std::size_t n = 2; n <= 8; n += 2)
    for (int trial = 0; trial < 4; ++trial) {
      const SkewMatQ a = pf::oracle::random_skew(rng, n, 20);
      const MatQ b = pf::oracle::random_matrix(rng, n, n, 20);
      const SkewMatQ bab(b * a.matrix() * b.transpose());
      EXPECT_EQ(pf::pfaffian(bab), pf::oracle::bareiss_det(b) * pf::pfaffian(a));
    }
}

TEST(Rng, DeterministicStreams) {
  pf::Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
  pf::Rng s5 = pf::Rng::stream(7, 5);
  pf::Rng s3 = pf::Rng::stream(7, 3);
  pf::Rng s5again = pf::Rng::stream(7, 5);
  EXPECT_EQ(s5, s5again);
  EXPECT_NE(s5.next(), s3.next());
  EXPECT_NE(pf::derive_seed(7, 0), pf::derive_seed(7, 1));
  EXPECT_NE(pf::derive_seed(7, 0), pf::derive_seed(8, 0));
}

TEST(Rng, UniformIntBounds) {
  pf::Rng rng(1);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 500; ++i) {
    const auto x = rng.uniform_int(-3, 3);
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 3);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(rng.uniform_int(2, 1), std::invalid_argument);
  const Rat r = rng.rational(pf::SampleBox{10});
  EXPECT_LE(abs(r.get_num()), 10);
  EXPECT_LE(r.get_den(), 10);
}
