// Copyright 2026 The lenswrt Authors
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


#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lenswrt/analysis.hpp"
#include "oracles.hpp"

namespace lenswrt {
namespace {

using oracle::cplx;

cplx as_cplx(const KNum& x) {
  const auto v = x.embed<long double>();
  return {v.re, v.im};
}

cplx eval_poly(const KPoly& f, cplx z) {
  cplx acc = 0;
  for (const auto& [e, c] : f.terms()) acc += as_cplx(c) * std::pow(z, static_cast<int>(e));
  return acc;
}

std::vector<int64_t> coprime(int64_t p) {
  std::vector<int64_t> out;
  for (int64_t q = 1; q < p; ++q)
    if (std::gcd(p, q) == 1) out.push_back(q);
  return out;
}

/// The signed f-matrix at a point z, built from floating Gauss sums only.
std::vector<std::vector<cplx>> oracle_matrix(const LensSpace& L, cplx z) {
  std::vector<std::vector<cplx>> m(static_cast<size_t>(L.p));
  for (int64_t k = 0; k < L.p; ++k)
    for (int64_t c = 0; c <= L.half(); ++c)
      m[static_cast<size_t>(k)].push_back(oracle::f_body(L.p, L.q, L.twelve_p_s, c, k, z));
  return m;
}

KPoly mono(int64_t coeff, int64_t e) { return KPoly::monomial(KNum(coeff), e); }

class RankByOrder : public ::testing::TestWithParam<int64_t> {};

// rank <= 1 + #_p always, with equality to [p/2] + 1 iff p is prime or
// twice an odd prime.
TEST_P(RankByOrder, BoundAndClassification) {
  const int64_t p = GetParam();
  const bool determining = classify_order(p) == OrderClass::Determining;
  for (int64_t q : coprime(p)) {
    const LensSpace L = LensSpace::make(p, q);
    const size_t rk = f_rank(L);
    EXPECT_LE(rk, static_cast<size_t>(1 + count_squares_mod(p))) << "L(" << p << "," << q << ")";
    EXPECT_EQ(rk == static_cast<size_t>(L.half() + 1), determining) << "L(" << p << "," << q << ")";
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, RankByOrder, ::testing::Range<int64_t>(2, 31));

// Over the rows 1 <= k < p, the columns of G_+ and G_- together span a
// space of dimension at most #_p.
TEST(Rank, GaussColumnsSpanAtMostSquares) {
  for (int64_t p = 2; p <= 30; ++p)
    for (int64_t q : coprime(p)) {
      LaurentMatrix m;
      for (int64_t k = 1; k < p; ++k) {
        std::vector<KPoly> row;
        for (int64_t c = 0; c <= p / 2; ++c)
          for (auto pm : {PlusMinus::Plus, PlusMinus::Minus})
            row.push_back(KPoly::constant(g_pm(p, q, c, k, pm)));
        m.push_back(std::move(row));
      }
      EXPECT_LE(static_cast<int64_t>(rank(m)), count_squares_mod(p)) << p << "," << q;
    }
}

// For prime p the columns themselves repeat: at most #_p distinct ones.
TEST(Rank, DistinctGaussColumnsForPrimeOrder) {
  for (int64_t p = 2; p <= 30; ++p) {
    if (!oracle::prime(p)) continue;
    for (int64_t q : coprime(p))
      for (auto pm : {PlusMinus::Plus, PlusMinus::Minus}) {
        std::vector<std::vector<KNum>> distinct;
        for (int64_t c = 0; c <= p / 2; ++c) {
          std::vector<KNum> col;
          for (int64_t k = 1; k < p; ++k) col.push_back(g_pm(p, q, c, k, pm));
          if (std::find(distinct.begin(), distinct.end(), col) == distinct.end()) distinct.push_back(col);
        }
        EXPECT_LE(static_cast<int64_t>(distinct.size()), count_squares_mod(p)) << p << "," << q;
      }
  }
  // not so for prime powers, where Gauss sums with a = 0 mod a prime factor enter
  std::vector<std::vector<KNum>> distinct;
  for (int64_t c = 0; c <= 4; ++c) {
    std::vector<KNum> col;
    for (int64_t k = 1; k < 9; ++k) col.push_back(g_pm(9, 7, c, k, PlusMinus::Plus));
    if (std::find(distinct.begin(), distinct.end(), col) == distinct.end()) distinct.push_back(col);
  }
  EXPECT_EQ(distinct.size(), 5u);
}

TEST(Rank, AgreesWithFloatingRankAtRandomPoint) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<long double> angle(0, 2 * oracle::kPi);
  for (int64_t p = 2; p <= 16; ++p)
    for (int64_t q : coprime(p)) {
      const LensSpace L = LensSpace::make(p, q);
      const cplx z = std::polar(1.0L, angle(rng));
      EXPECT_EQ(f_rank(L), oracle::numeric_rank(oracle_matrix(L, z))) << p << "," << q;
    }
}

TEST(Rank, KnownValues) {
  const std::vector<std::pair<int64_t, size_t>> expect = {
      {9, 4}, {13, 7}, {16, 4}, {25, 11}, {27, 11}, {28, 8}, {30, 12}};
  for (auto [p, rk] : expect) EXPECT_EQ(f_rank(LensSpace::make(p, 1)), rk) << p;
}

TEST(Kernel, NineOneAndNineFour) {
  const auto K1 = kernel(LensSpace::make(9, 1));
  ASSERT_EQ(K1.size(), 1u);
  const std::vector<KPoly> v1 = {KPoly(Variable::z), mono(-1, 15) + mono(1, 27), mono(1, 12) - mono(1, 24),
                                 mono(-1, 15), mono(1, 0)};
  EXPECT_EQ(K1[0], v1);
  const auto K4 = kernel(LensSpace::make(9, 4));
  ASSERT_EQ(K4.size(), 1u);
  const std::vector<KPoly> v4 = {mono(-1, 84) + mono(1, 108), KPoly(Variable::z), mono(1, 60) - mono(1, 72),
                                 mono(-1, 30), mono(1, 0)};
  EXPECT_EQ(K4[0], v4);
  EXPECT_TRUE(same_line(K4[0], normalize_vector({v4[0].scaled(KNum(3)), v4[1], v4[2].scaled(KNum(3)),
                                                 v4[3].scaled(KNum(3)), v4[4].scaled(KNum(3))})));
}

TEST(Kernel, DimensionIsCorank) {
  for (int64_t p : {8, 9, 12, 15, 16}) {
    const LensSpace L = LensSpace::make(p, 1);
    EXPECT_EQ(kernel(L).size() + f_rank(L), static_cast<size_t>(L.half() + 1));
  }
  EXPECT_TRUE(kernel(LensSpace::make(7, 3)).empty());
}

// A kernel vector, read as a skein element in z, has vanishing invariants.
TEST(Kernel, AnnihilatesInvariants) {
  for (auto [p, q] : std::vector<std::pair<int64_t, int64_t>>{{9, 1}, {9, 4}, {8, 3}, {12, 5}, {16, 7}}) {
    const LensSpace L = LensSpace::make(p, q);
    for (const auto& v : kernel(L)) {
      const SkeinVectorZ J{p, v};
      for (int64_t r = 2; r <= 40; ++r)
        EXPECT_LT(abs(eval_link<long double>(L, J, r)), 1e-10L) << p << "," << q << " r=" << r;
      const cplx z = std::polar(1.0L, 0.7L);
      const auto M = oracle_matrix(L, z);
      for (const auto& row : M) {
        cplx acc = 0;
        for (size_t c = 0; c < row.size(); ++c) acc += row[c] * eval_poly(v[c], z);
        EXPECT_LT(std::abs(acc), 1e-6L);
      }
    }
  }
}

TEST(Lambda, KernelGeneratorsAreNotInTheImage) {
  for (int64_t q : {1, 4}) {
    const auto K = kernel(LensSpace::make(9, q));
    ASSERT_EQ(K.size(), 1u);
    EXPECT_FALSE(lambda_membership(K[0], 9));
  }
}

TEST(Lambda, MembershipRules) {
  // A-polynomials substituted A = -z^p are members, up to monomials and scalars.
  const std::vector<KPoly> in = {mono(1, 9) + mono(2, 18), mono(-3, 0), KPoly(Variable::z)};
  EXPECT_TRUE(lambda_membership(in, 9));
  std::vector<KPoly> shifted;
  for (const auto& c : in) shifted.push_back(c.shifted(4).scaled(CyclotomicNumber::root_of_unity(9, 2)));
  EXPECT_TRUE(lambda_membership(shifted, 9));
  EXPECT_FALSE(lambda_membership({mono(1, 0) + mono(1, 3), mono(1, 9)}, 9));
  EXPECT_FALSE(lambda_membership({mono(1, 0), KPoly::monomial(CyclotomicNumber::root_of_unity(9, 1), 0)}, 9));
  EXPECT_TRUE(lambda_membership({KPoly(Variable::z), KPoly(Variable::z)}, 9));
}

TEST(HatC, SolvesTheColourEquation) {
  for (int64_t p = 2; p <= 30; ++p)
    for (int64_t q : coprime(p))
      for (int64_t c = 0; c < p; ++c) {
        const int64_t h = hat_c(p, q, c);
        EXPECT_GE(h, 0);
        EXPECT_LT(h, p);
        EXPECT_EQ(oracle::mod(q * h + q + 1 - c, p), 0);
      }
}

TEST(Certificate, NonsingularForDeterminingOrders) {
  for (int64_t p = 2; p <= 30; ++p) {
    if (classify_order(p) != OrderClass::Determining) {
      EXPECT_THROW(fullrank_submatrix(LensSpace::make(p, 1)), ComputationError);
      continue;
    }
    for (int64_t q : coprime(p)) {
      const auto cert = fullrank_submatrix(LensSpace::make(p, q));
      EXPECT_EQ(cert.rows.size(), static_cast<size_t>(p / 2 + 1));
      EXPECT_EQ(cert.colours.size(), cert.rows.size());
      EXPECT_TRUE(cert.nonzero) << p << "," << q;
      EXPECT_TRUE(cert.structure_ok) << p << "," << q << ": " << cert.structure;
      // entries against floating Gauss sums
      for (size_t i = 0; i < cert.rows.size(); ++i)
        for (size_t j = 0; j < cert.columns.size(); ++j)
          EXPECT_LT(std::abs(as_cplx(cert.matrix[i][j]) -
                             oracle::gauss(p, q * cert.rows[i], q * cert.columns[j] + q + 1)),
                    1e-10L);
    }
  }
}

TEST(Certificate, OrderTwo) {
  const auto cert = fullrank_submatrix(LensSpace::make(2, 1));
  ASSERT_EQ(cert.matrix.size(), 2u);
  EXPECT_EQ(cert.matrix[0][0], KNum(2));
  EXPECT_TRUE(cert.matrix[0][1].is_zero());
  EXPECT_TRUE(cert.matrix[1][0].is_zero());
  EXPECT_EQ(cert.matrix[1][1], KNum(2));
}

SkeinElement sample_skein(int64_t p, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::vector<APoly> coeffs;
  for (int64_t c = 0; c <= p / 2; ++c) {
    APoly a(Variable::A);
    for (int64_t e = -1; e <= 2; ++e) a.add_term(e, coeff(rng));
    coeffs.push_back(a);
  }
  return {p, coeffs};
}

TEST(Recover, RoundTrip) {
  for (int64_t p : {2, 3, 5, 6, 7, 10, 11})
    for (int64_t q : coprime(p)) {
      const LensSpace L = LensSpace::make(p, q);
      const SkeinElement J = sample_skein(p, static_cast<uint64_t>(100 * p + q));
      std::vector<KPoly> F;
      for (int64_t k = 0; k < p; ++k) F.push_back(f_link(L, J, k));
      const RecoveredSkein R = recover_skein(L, F);
      ASSERT_TRUE(R.polynomial());
      ASSERT_TRUE(R.a_form.has_value()) << p << "," << q;
      EXPECT_EQ(*R.a_form, J);
      EXPECT_EQ(R.z_form(), to_z_form(J));
    }
}

TEST(Recover, Errors) {
  const LensSpace L9 = LensSpace::make(9, 1);
  std::vector<KPoly> F9;
  for (int64_t k = 0; k < 9; ++k) F9.push_back(f_link(L9, SkeinElement::meridian(9, 1), k));
  try {
    recover_skein(L9, F9);
    FAIL();
  } catch (const ComputationError& e) {
    EXPECT_EQ(e.name(), "RankDeficient");
  }
  const LensSpace L5 = LensSpace::make(5, 2);
  try {
    recover_skein(L5, {KPoly(Variable::z), mono(1, 0), KPoly(Variable::z), KPoly(Variable::z),
                       KPoly(Variable::z)});
    FAIL();
  } catch (const ComputationError& e) {
    EXPECT_EQ(e.name(), "Inconsistent");
  }
  EXPECT_THROW(recover_skein(L5, {mono(1, 0)}), ValidationError);
}

// Rows k = 1..p-1 are Galois conjugates, so a rational right-hand side is
// reachable, but only with a denominator.
TEST(Recover, RationalSolution) {
  const LensSpace L = LensSpace::make(5, 2);
  const std::vector<KPoly> F(5, mono(1, 0));
  const RecoveredSkein R = recover_skein(L, F);
  EXPECT_FALSE(R.polynomial());
  EXPECT_FALSE(R.a_form.has_value());
  EXPECT_THROW(R.z_form(), ValidationError);
  const auto M = build_signed_f_matrix(L);
  for (size_t k = 0; k < M.size(); ++k) {
    KPoly acc(Variable::z);
    for (size_t c = 0; c < R.numerators.size(); ++c) acc += M[k][c] * R.numerators[c];
    EXPECT_EQ(acc, R.denominator * F[k]);
  }
}

TEST(Interpolate, RecoversTheFPolynomial) {
  const LensSpace L = LensSpace::make(5, 2);
  const int64_t c = 1, k = 2;
  const auto [lo, hi] = default_window(L, 0);
  std::vector<std::pair<int64_t, Complex<Float256>>> samples;
  for (int64_t r = k; samples.size() < 40; r += L.p)
    if (r >= 2) samples.emplace_back(r, eval_meridian<Float256>(L, c, r));
  const auto fit = interpolate_f<Float256>(samples, L.p, k, lo, hi);
  EXPECT_LT(fit.residual, Float256("1e-60"));
  // The nodes xi_{4pr} cluster near 1, so coefficients lose digits
  // even when the fit itself is exact.
  const ZPoly body = f_poly(L, c, k).signed_body();
  const Float256 scale = 1 / sqrt(Float256(2 * L.p));
  for (int64_t e = lo; e <= hi; ++e) {
    const auto want = body.coeff(e).embed<Float256>();
    const Complex<Float256> expect(-want.im * scale, want.re * scale);  // i/sqrt(2p) * coeff
    EXPECT_LT(abs(fit.coeffs[static_cast<size_t>(e - lo)] - expect), Float256("1e-8")) << e;
  }
}

TEST(Interpolate, EdgeCases) {
  using S = std::vector<std::pair<int64_t, Complex<double>>>;
  const auto zero = interpolate_f<double>(S{}, 5, 2, 0, 3);
  EXPECT_EQ(zero.coeffs.size(), 4u);
  for (const auto& x : zero.coeffs) EXPECT_EQ(abs(x), 0.0);
  try {
    interpolate_f<double>(S{{2, Complex<double>(1.0)}, {7, Complex<double>(1.0)}}, 5, 2, 0, 3);
    FAIL();
  } catch (const ComputationError& e) {
    EXPECT_EQ(e.name(), "UnderDetermined");
  }
  EXPECT_THROW(interpolate_f<double>(S{{3, Complex<double>(1.0)}}, 5, 2, 0, 0), ValidationError);

  // window too short for the data
  const LensSpace L = LensSpace::make(5, 2);
  std::vector<std::pair<int64_t, Complex<Float128>>> samples;
  for (int64_t r = 2; samples.size() < 30; r += 5) samples.emplace_back(r, eval_meridian<Float128>(L, 1, r));
  try {
    interpolate_f<Float128>(samples, 5, 2, 0, 8);
    FAIL();
  } catch (const ComputationError& e) {
    EXPECT_EQ(e.name(), "BadConditioning");
  }
}

}  // namespace
}  // namespace lenswrt
