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

#include "lenswrt/serialization.hpp"

namespace lenswrt {
namespace {

TEST(Json, IntegersFallBackToStrings) {
  EXPECT_TRUE(integer_to_json(Integer(42)).is_number_integer());
  const Integer big("123456789012345678901234567890");
  const Json j = integer_to_json(big);
  EXPECT_TRUE(j.is_string());
  EXPECT_EQ(integer_from_json(j), big);
  EXPECT_THROW(integer_from_json(Json("12x")), ValidationError);
  EXPECT_THROW(integer_from_json(Json(1.5)), ValidationError);
}

TEST(Json, CyclotomicRoundTrip) {
  const auto x = CyclotomicNumber::root_of_unity(12, 5).scaled(Rational(3, 7)) + Rational(1, 2);
  const Json j = cyclotomic_to_json(x);
  EXPECT_EQ(j.at("order"), 12);
  EXPECT_EQ(cyclotomic_from_json(j), x);
  EXPECT_THROW(cyclotomic_from_json(Json{{"order", 0}, {"num", Json::array()}}), ValidationError);
  EXPECT_THROW(cyclotomic_from_json(Json{{"order", 3}, {"num", {1}}, {"den", 0}}), ValidationError);
}

TEST(Json, SkeinRoundTrip) {
  APoly a(Variable::A);
  a.add_term(-2, Rational(5, 3));
  a.add_term(4, -1);
  const SkeinElement s(6, {a, APoly(Variable::A), a * a, APoly::constant(7, Variable::A)});
  const Json j = skein_to_json(s);
  EXPECT_FALSE(skein_json_is_z(j));
  EXPECT_EQ(skein_from_json(j), s);
  EXPECT_EQ(skein_z_from_json(j), to_z_form(s));
  EXPECT_EQ(Json::parse(j.dump()), j);

  const SkeinVectorZ z = to_z_form(s);
  const Json jz = skein_to_json(z);
  EXPECT_TRUE(skein_json_is_z(jz));
  EXPECT_EQ(skein_z_from_json(jz), z);
  EXPECT_THROW(skein_from_json(jz), ValidationError);
}

TEST(Json, SkeinLengthChecked) {
  try {
    skein_from_json(Json::parse(R"({"p": 5, "coeffs": [[]]})"));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.name(), "LengthMismatch");
  }
  EXPECT_THROW(skein_from_json(Json::parse(R"({"coeffs": []})")), ValidationError);
  EXPECT_THROW(skein_from_json(Json::parse(R"({"p": 2, "coeffs": [[[0, 1]], []]})")), ValidationError);
}

TEST(Json, FPolynomialRoundTrip) {
  const LensSpace L = LensSpace::make(7, 3);
  for (int64_t c = 0; c <= 3; ++c)
    for (int64_t k = 0; k < 7; ++k) {
      const FPolynomial f = f_poly(L, c, k);
      const Json j = fpoly_to_json(f);
      EXPECT_EQ(j.at("scale"), "i/sqrt(2p)");
      EXPECT_EQ(fpoly_from_json(Json::parse(j.dump())), f);
    }
  Json bad = fpoly_to_json(f_poly(L, 0, 0));
  bad["sign"] = 2;
  EXPECT_THROW(fpoly_from_json(bad), ValidationError);
  bad.erase("body");
  EXPECT_THROW(fpoly_from_json(bad), ValidationError);
}

TEST(Json, SamplesRoundTrip) {
  const LensSpace L = LensSpace::make(5, 2);
  std::vector<KPoly> F;
  for (int64_t k = 0; k < 5; ++k) F.push_back(f_link(L, SkeinElement::meridian(5, 2), k));
  const Json j = fpolys_to_json(5, 2, F);
  EXPECT_EQ(fpolys_from_json(Json::parse(j.dump())), F);
  EXPECT_THROW(fpolys_from_json(Json::object()), ValidationError);
}

TEST(Json, OutputIsDeterministic) {
  const LensSpace L = LensSpace::make(11, 4);
  EXPECT_EQ(fpoly_to_json(f_poly(L, 3, 5)).dump(), fpoly_to_json(f_poly(L, 3, 5)).dump());
}

}  // namespace
}  // namespace lenswrt
