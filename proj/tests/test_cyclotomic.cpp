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

#include <random>

#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/laurent.hpp"
#include "oracles.hpp"

namespace lenswrt {
namespace {

using oracle::cplx;

cplx value(const CyclotomicNumber& x) {
  const auto v = x.embed<long double>();
  return {v.re, v.im};
}

CyclotomicNumber random_element(std::mt19937_64& rng, int64_t N) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  CyclotomicNumber x;
  for (int64_t e = 0; e < N; ++e)
    x += CyclotomicNumber::root_of_unity(N, e).scaled(Rational(coeff(rng), 1 + (e % 3)));
  return x;
}

TEST(Cyclotomic, RootsOfUnityEmbedCorrectly) {
  for (int64_t N = 1; N <= 40; ++N)
    for (int64_t e = -N; e < 2 * N; ++e)
      EXPECT_LT(std::abs(value(CyclotomicNumber::root_of_unity(N, e)) - oracle::root(e, N)), 1e-15L);
}

TEST(Cyclotomic, SumOfAllRootsVanishes) {
  for (int64_t N = 2; N <= 40; ++N) {
    CyclotomicNumber s;
    for (int64_t e = 0; e < N; ++e) s += CyclotomicNumber::root_of_unity(N, e);
    EXPECT_TRUE(s.is_zero()) << N;
  }
}

TEST(Cyclotomic, CanonicalFormIsUnique) {
  // zeta_6 = zeta_3 + 1 and zeta_4^2 = -1
  EXPECT_EQ(CyclotomicNumber::root_of_unity(6, 1), CyclotomicNumber::root_of_unity(3, 1) + 1);
  EXPECT_EQ(CyclotomicNumber::root_of_unity(4, 2), CyclotomicNumber(-1));
  EXPECT_TRUE((CyclotomicNumber::root_of_unity(12, 3) - CyclotomicNumber::root_of_unity(4, 1)).is_zero());
  EXPECT_TRUE(CyclotomicNumber(Rational(3, 7)).is_rational());
  EXPECT_EQ(CyclotomicNumber(Rational(3, 7)).to_rational(), Rational(3, 7));
}

class CyclotomicField : public ::testing::TestWithParam<int64_t> {};

TEST_P(CyclotomicField, ArithmeticMatchesComplexNumbers) {
  const int64_t N = GetParam();
  std::mt19937_64 rng(static_cast<uint64_t>(N));
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_element(rng, N), y = random_element(rng, N);
    const cplx vx = value(x), vy = value(y);
    EXPECT_LT(std::abs(value(x + y) - (vx + vy)), 1e-12L);
    EXPECT_LT(std::abs(value(x - y) - (vx - vy)), 1e-12L);
    EXPECT_LT(std::abs(value(x * y) - vx * vy), 1e-10L);
    EXPECT_LT(std::abs(value(x.conjugate()) - std::conj(vx)), 1e-12L);
    if (!y.is_zero()) {
      EXPECT_EQ((x / y) * y, x);
      EXPECT_EQ(y * y.inverse(), CyclotomicNumber(1));
    }
  }
}

TEST_P(CyclotomicField, LiftingPreservesValue) {
  const int64_t N = GetParam();
  std::mt19937_64 rng(static_cast<uint64_t>(N) + 99);
  const auto x = random_element(rng, N);
  const auto y = x.lifted(3 * N);
  EXPECT_EQ(x, y);
  EXPECT_LT(std::abs(value(x) - value(y)), 1e-12L);
}

INSTANTIATE_TEST_SUITE_P(Orders, CyclotomicField, ::testing::Values(3, 4, 5, 8, 9, 12, 15, 20, 36));

TEST(Cyclotomic, InverseOfZeroThrows) {
  EXPECT_THROW(CyclotomicNumber().inverse(), Error);
}

TEST(Cyclotomic, ToStringIsReadable) {
  EXPECT_EQ(CyclotomicNumber().to_string(), "0");
  EXPECT_EQ(CyclotomicNumber(Rational(-1, 2)).to_string(), "-1/2");
  EXPECT_EQ(CyclotomicNumber::root_of_unity(8, 3).to_string(), "zeta8^3");
}

using QPoly = LaurentPoly<Rational>;

QPoly poly(std::initializer_list<std::pair<int64_t, long>> terms) {
  QPoly f(Variable::A);
  for (auto [e, c] : terms) f.add_term(e, Rational(c));
  return f;
}

TEST(Laurent, RingOperations) {
  const QPoly a = poly({{-1, 1}, {2, 3}}), b = poly({{0, 2}, {1, -1}});
  EXPECT_EQ(a * b, poly({{-1, 2}, {0, -1}, {2, 6}, {3, -3}}));
  EXPECT_EQ(a + b - a, b);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(a.min_degree(), -1);
  EXPECT_EQ(a.max_degree(), 2);
  EXPECT_EQ(a.shifted(3), poly({{2, 1}, {5, 3}}));
  EXPECT_EQ(a.substitute_power(-2), poly({{2, 1}, {-4, 3}}));
}

TEST(Laurent, ExactDivisionAndGcd) {
  const QPoly a = poly({{-2, 1}, {0, -1}}), b = poly({{1, 1}, {2, 5}, {5, -3}});
  const auto q = laurent_exact_divide(a * b, a);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, b);
  EXPECT_FALSE(laurent_exact_divide(b + QPoly::constant(1, Variable::A), a).has_value());
  const QPoly g = laurent_gcd(a * b, a * poly({{0, 1}, {1, 7}}));
  EXPECT_TRUE(laurent_exact_divide(g, strip_monomial(a)).has_value());
  EXPECT_TRUE(laurent_exact_divide(strip_monomial(a), g).has_value());
}

TEST(Laurent, ConjugateOverCyclotomics) {
  using ZP = LaurentPoly<CyclotomicNumber>;
  ZP f = ZP::monomial(CyclotomicNumber::root_of_unity(5, 1), 3);
  EXPECT_EQ(f.conjugate(), ZP::monomial(CyclotomicNumber::root_of_unity(5, 4), 3));
}

}  // namespace
}  // namespace lenswrt
