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
 * @file skein.hpp
 * @brief The skein module of L(p,q) as a free module on mu_0 .. mu_[p/2].
 *
 * Colored meridians mu_c carry the solid-torus elements e_c defined by
 * e_c = alpha e_{c-1} - e_{c-2}, e_0 = 1, e_{-1} = 0 (run backwards for
 * negative c). The parallel-meridian generators x_c = alpha^c are converted to
 * the mu-basis by inverting the unitriangular e-to-power matrix.
 */

#pragma once

#include <cstdint>
#include <vector>

#include "lenswrt/errors.hpp"
#include "lenswrt/laurent.hpp"
#include "lenswrt/number_theory.hpp"

namespace lenswrt {

using APoly = LaurentPoly<Rational>;
using ZPoly = LaurentPoly<CyclotomicNumber>;

/// Coefficients (low to high) of e_c as a polynomial in alpha.
inline std::vector<Integer> chebyshev_expand(int64_t c) {
  using Poly = std::vector<Integer>;
  auto trim = [](Poly v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  };
  // alpha * x - y
  auto step = [&](const Poly& x, const Poly& y) {
    Poly r(std::max(x.size() + 1, y.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) r[i + 1] += x[i];
    for (size_t i = 0; i < y.size(); ++i) r[i] -= y[i];
    return trim(r);
  };
  Poly prev{};   // e_{-1}
  Poly cur{1};   // e_0
  if (c >= 0) {
    for (int64_t i = 0; i < c; ++i) {
      Poly next = step(cur, prev);
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }
  // Backwards: e_{j-2} = alpha e_{j-1} - e_j.
  Poly hi = cur;   // e_0
  Poly lo = prev;  // e_{-1}
  for (int64_t j = -1; j > c; --j) {
    Poly next = step(lo, hi);
    hi = std::move(lo);
    lo = std::move(next);
  }
  return lo;
}

/// Row j holds the alpha-coefficients of e_j, for 0 <= j <= n (an
/// (n+1)x(n+1) unitriangular integer matrix; entry [j][i] multiplies alpha^i).
inline std::vector<std::vector<Integer>> colored_to_power(int64_t n) {
  require(n >= 0, "colored_to_power: n must be >= 0");
  std::vector<std::vector<Integer>> m(static_cast<size_t>(n + 1),
                                      std::vector<Integer>(static_cast<size_t>(n + 1), 0));
  for (int64_t j = 0; j <= n; ++j) {
    const auto e = chebyshev_expand(j);
    for (size_t i = 0; i < e.size(); ++i) m[static_cast<size_t>(j)][i] = e[i];
  }
  return m;
}

/// Integer coefficients a_j with alpha^c = sum_{j<=c} a_j e_j.
inline std::vector<Integer> power_in_colored_basis(int64_t c) {
  require(c >= 0, "power_in_colored_basis: c must be >= 0");
  // Peel off the leading term repeatedly; each e_j is monic of degree j.
  std::vector<Integer> rest(static_cast<size_t>(c + 1), 0);
  rest[static_cast<size_t>(c)] = 1;
  std::vector<Integer> out(static_cast<size_t>(c + 1), 0);
  for (int64_t j = c; j >= 0; --j) {
    const Integer lead = rest[static_cast<size_t>(j)];
    if (lead == 0) continue;
    out[static_cast<size_t>(j)] = lead;
    const auto e = chebyshev_expand(j);
    for (size_t i = 0; i < e.size(); ++i) rest[i] -= lead * e[i];
  }
  return out;
}

inline int64_t half(int64_t p) { return p / 2; }

/// An element sum_c C_c(A) mu_c of S(L(p,q)), c = 0..[p/2].
class SkeinElement {
 public:
  SkeinElement(int64_t p, std::vector<APoly> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    require(p >= 2, "skein element: p must be >= 2");
    require(coeffs_.size() == static_cast<size_t>(half(p) + 1),
            "skein element: expected " + std::to_string(half(p) + 1) + " coefficients",
            "LengthMismatch");
    for (auto& c : coeffs_) c.set_variable(Variable::A);
  }

  static SkeinElement zero(int64_t p) {
    require(p >= 2, "skein element: p must be >= 2");
    return {p, std::vector<APoly>(static_cast<size_t>(half(p) + 1), APoly(Variable::A))};
  }
  /// The colored meridian mu_c.
  static SkeinElement meridian(int64_t p, int64_t c) {
    SkeinElement s = zero(p);
    require(c >= 0 && c <= half(p), "meridian index out of range");
    s.coeffs_[static_cast<size_t>(c)] = APoly::constant(1, Variable::A);
    return s;
  }

  int64_t p() const { return p_; }
  size_t size() const { return coeffs_.size(); }
  const std::vector<APoly>& coeffs() const { return coeffs_; }
  const APoly& operator[](size_t c) const { return coeffs_.at(c); }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }
  /// True when every coefficient lies in Z[A, A^-1].
  bool is_integral() const {
    for (const auto& poly : coeffs_)
      for (const auto& [e, c] : poly.terms())
        if (c.get_den() != 1) return false;
    return true;
  }

  friend SkeinElement operator+(const SkeinElement& x, const SkeinElement& y) {
    require(x.p_ == y.p_, "skein_add: order mismatch", "OrderMismatch");
    std::vector<APoly> out = x.coeffs_;
    for (size_t c = 0; c < out.size(); ++c) out[c] += y.coeffs_[c];
    return {x.p_, std::move(out)};
  }
  friend SkeinElement operator-(const SkeinElement& x, const SkeinElement& y) {
    return x + y.scaled(APoly::constant(-1, Variable::A));
  }
  SkeinElement scaled(const APoly& s) const {
    std::vector<APoly> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c * s);
    return {p_, std::move(out)};
  }
  friend bool operator==(const SkeinElement& x, const SkeinElement& y) {
    return x.p_ == y.p_ && x.coeffs_ == y.coeffs_;
  }

 private:
  int64_t p_;
  std::vector<APoly> coeffs_;
};

inline SkeinElement skein_make(int64_t p, std::vector<APoly> coeffs) {
  return {p, std::move(coeffs)};
}

/// x_c (c parallel meridians) in the mu-basis.
inline SkeinElement power_to_colored(int64_t p, int64_t c) {
  require(p >= 2, "power_to_colored: p must be >= 2");
  require(c >= 0 && c <= half(p), "power_to_colored: c must lie in [0, [p/2]]");
  const auto a = power_in_colored_basis(c);
  SkeinElement s = SkeinElement::zero(p);
  std::vector<APoly> coeffs = s.coeffs();
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] != 0) coeffs[j] = APoly::constant(Rational(a[j]), Variable::A);
  return {p, std::move(coeffs)};
}

/// A vector over the mu-basis whose coefficients are Laurent polynomials in
/// z (after A = -z^p), e.g. kernel vectors that do not come from Lambda.
struct SkeinVectorZ {
  int64_t p = 2;
  std::vector<ZPoly> coeffs;

  friend bool operator==(const SkeinVectorZ&, const SkeinVectorZ&) = default;
};

/// C(A) -> C(-z^p).
inline ZPoly substitute_a(const APoly& c, int64_t p) {
  ZPoly out(Variable::z);
  for (const auto& [e, v] : c.terms()) {
    const Rational s = (e % 2 == 0) ? v : Rational(-v);
    out.add_term(e * p, CyclotomicNumber(s));
  }
  return out;
}

inline SkeinVectorZ to_z_form(const SkeinElement& s) {
  SkeinVectorZ out{s.p(), {}};
  for (const auto& c : s.coeffs()) out.coeffs.push_back(substitute_a(c, s.p()));
  return out;
}

}  // namespace lenswrt
