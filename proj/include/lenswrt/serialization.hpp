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

/**
 * @file serialization.hpp
 * @brief JSON forms of the exact values.
 *
 * Integers are JSON numbers when they fit in 64 bits and decimal strings
 * otherwise. A polynomial is a list of terms, each either [exp, num, den]
 * (rational coefficient) or [exp, {"order": N, "num": [...], "den": d}].
 *
 *   skein (A):  {"p": 5, "coeffs": [[[0, 1, 1]], [], ...]}
 *   skein (z):  {"p": 9, "variable": "z", "coeffs": [poly, ...]}
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "lenswrt/analysis.hpp"
#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/laurent.hpp"
#include "lenswrt/skein.hpp"
#include "lenswrt/wrt.hpp"

namespace lenswrt {

using Json = nlohmann::ordered_json;

inline Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<int64_t>(x.get_si()));
  return Json(x.get_str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<int64_t>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0)
      throw ValidationError("malformed integer '" + j.get<std::string>() + "'", "ParseError");
    return x;
  }
  throw ValidationError("expected an integer", "ParseError");
}

inline Json cyclotomic_to_json(const CyclotomicNumber& x) {
  Json num = Json::array();
  for (const auto& c : x.numerators()) num.push_back(integer_to_json(c));
  return Json{{"order", x.order()}, {"num", num}, {"den", integer_to_json(x.denominator())}};
}

inline CyclotomicNumber cyclotomic_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("num"))
    throw ValidationError("cyclotomic value needs 'order' and 'num'", "ParseError");
  const auto N = j.at("order").get<int64_t>();
  if (N < 1) throw ValidationError("cyclotomic order must be >= 1", "ParseError");
  std::vector<Integer> num;
  for (const auto& c : j.at("num")) num.push_back(integer_from_json(c));
  const Integer den = j.contains("den") ? integer_from_json(j.at("den")) : Integer(1);
  if (den == 0) throw ValidationError("zero denominator", "ParseError");
  return CyclotomicNumber::from_powers(N, num, den);
}

namespace detail {

inline Json term_to_json(int64_t e, const Rational& c) {
  return Json::array({e, integer_to_json(c.get_num()), integer_to_json(c.get_den())});
}

inline Json term_to_json(int64_t e, const CyclotomicNumber& c) {
  if (c.is_rational()) return term_to_json(e, c.to_rational());
  return Json::array({e, cyclotomic_to_json(c)});
}

inline Rational rational_from(const Json& num, const Json& den) {
  const Integer d = integer_from_json(den);
  if (d == 0) throw ValidationError("zero denominator", "ParseError");
  Rational r(integer_from_json(num), d);
  r.canonicalize();
  return r;
}

}  // namespace detail

template <class Coeff>
Json poly_to_json(const LaurentPoly<Coeff>& f) {
  Json out = Json::array();
  for (const auto& [e, c] : f.terms()) out.push_back(detail::term_to_json(e, c));
  return out;
}

inline APoly apoly_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("polynomial must be a list of terms", "ParseError");
  APoly f(Variable::A);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3)
      throw ValidationError("A-polynomial terms are [exp, num, den]", "ParseError");
    f.add_term(t[0].get<int64_t>(), detail::rational_from(t[1], t[2]));
  }
  return f;
}

inline KPoly zpoly_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("polynomial must be a list of terms", "ParseError");
  KPoly f(Variable::z);
  for (const auto& t : j) {
    if (!t.is_array() || (t.size() != 3 && t.size() != 2))
      throw ValidationError("z-polynomial terms are [exp, num, den] or [exp, {...}]",
                            "ParseError");
    const auto e = t[0].get<int64_t>();
    if (t.size() == 3)
      f.add_term(e, CyclotomicNumber(detail::rational_from(t[1], t[2])));
    else
      f.add_term(e, cyclotomic_from_json(t[1]));
  }
  return f;
}

inline Json skein_to_json(const SkeinElement& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(poly_to_json(c));
  return Json{{"p", s.p()}, {"coeffs", coeffs}};
}

inline Json skein_to_json(const SkeinVectorZ& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(poly_to_json(c));
  return Json{{"p", s.p}, {"variable", "z"}, {"coeffs", coeffs}};
}

inline bool skein_json_is_z(const Json& j) {
  return j.contains("variable") && j.at("variable") == "z";
}

inline SkeinElement skein_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("coeffs"))
    throw ValidationError("skein element needs 'p' and 'coeffs'", "ParseError");
  if (skein_json_is_z(j)) throw ValidationError("expected an A-form skein element", "ParseError");
  std::vector<APoly> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(apoly_from_json(c));
  return SkeinElement(j.at("p").get<int64_t>(), std::move(coeffs));
}

/// Reads either skein form; A-form coefficients are substituted A = -z^p.
inline SkeinVectorZ skein_z_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("coeffs"))
    throw ValidationError("skein element needs 'p' and 'coeffs'", "ParseError");
  if (!skein_json_is_z(j)) return to_z_form(skein_from_json(j));
  SkeinVectorZ s;
  s.p = j.at("p").get<int64_t>();
  require(s.p >= 2, "skein element: p must be >= 2");
  for (const auto& c : j.at("coeffs")) s.coeffs.push_back(zpoly_from_json(c));
  require(s.coeffs.size() == static_cast<size_t>(s.p / 2 + 1),
          "skein element: expected " + std::to_string(s.p / 2 + 1) + " coefficients",
          "LengthMismatch");
  return s;
}

inline Json fpoly_to_json(const FPolynomial& f) {
  return Json{{"p", f.p},         {"q", f.q},
              {"c", f.c},         {"k", f.k},
              {"sign", f.sign},   {"scale", "i/sqrt(2p)"},
              {"body", poly_to_json(f.body)}};
}

inline FPolynomial fpoly_from_json(const Json& j) {
  for (const char* key : {"p", "q", "c", "k", "sign", "body"})
    if (!j.contains(key))
      throw ValidationError(std::string("f-polynomial needs '") + key + "'", "ParseError");
  FPolynomial f;
  f.p = j.at("p").get<int64_t>();
  f.q = j.at("q").get<int64_t>();
  f.c = j.at("c").get<int64_t>();
  f.k = j.at("k").get<int64_t>();
  f.sign = j.at("sign").get<int>();
  require(f.sign == 1 || f.sign == -1, "f-polynomial sign must be +1 or -1", "ParseError");
  f.body = zpoly_from_json(j.at("body"));
  return f;
}

/// Samples file for recovery: {"p":.., "q":.., "fpolys": [poly per k]}.
inline Json fpolys_to_json(int64_t p, int64_t q, const std::vector<KPoly>& fpolys) {
  Json list = Json::array();
  for (const auto& f : fpolys) list.push_back(poly_to_json(f));
  return Json{{"p", p}, {"q", q}, {"fpolys", list}};
}

inline std::vector<KPoly> fpolys_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("fpolys"))
    throw ValidationError("samples file needs 'fpolys'", "ParseError");
  std::vector<KPoly> out;
  for (const auto& f : j.at("fpolys")) out.push_back(zpoly_from_json(f));
  return out;
}

}  // namespace lenswrt
