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

#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/number_theory.hpp"

namespace lenswrt {

enum class Variable { A, z };

inline const char* variable_name(Variable v) { return v == Variable::A ? "A" : "z"; }

// Coefficient adaptors. Overloaded for Rational and CyclotomicNumber.
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const CyclotomicNumber& c) { return c.is_zero(); }
inline Rational coeff_conjugate(const Rational& c) { return c; }
inline CyclotomicNumber coeff_conjugate(const CyclotomicNumber& c) { return c.conjugate(); }
inline Rational coeff_inverse(const Rational& c) { return 1 / c; }
inline CyclotomicNumber coeff_inverse(const CyclotomicNumber& c) { return c.inverse(); }
inline std::string coeff_string(const Rational& c) { return c.get_str(); }
inline std::string coeff_string(const CyclotomicNumber& c) {
  const std::string s = c.to_string();
  return c.is_rational() ? s : "(" + s + ")";
}

/// A Laurent polynomial sum_e c_e v^e with no stored zero coefficients.
template <class Coeff>
class LaurentPoly {
 public:
  using coefficient_type = Coeff;
  using Terms = std::map<int64_t, Coeff>;

  LaurentPoly() = default;
  explicit LaurentPoly(Variable v) : var_(v) {}

  static LaurentPoly monomial(const Coeff& c, int64_t e, Variable v = Variable::z) {
    LaurentPoly p(v);
    p.add_term(e, c);
    return p;
  }
  static LaurentPoly constant(const Coeff& c, Variable v = Variable::z) {
    return monomial(c, 0, v);
  }

  Variable variable() const { return var_; }
  void set_variable(Variable v) { var_ = v; }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  int64_t min_degree() const {
    require(!is_zero(), "min_degree of zero polynomial");
    return terms_.begin()->first;
  }
  int64_t max_degree() const {
    require(!is_zero(), "max_degree of zero polynomial");
    return terms_.rbegin()->first;
  }
  const Coeff& leading_coeff() const {
    require(!is_zero(), "leading_coeff of zero polynomial");
    return terms_.rbegin()->second;
  }

  Coeff coeff(int64_t e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  void add_term(int64_t e, const Coeff& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = it->second + c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    adopt_variable(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    adopt_variable(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r(a.var_);
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r(a.is_zero() ? b.var_ : a.var_);
    r.adopt_variable(b);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly scaled(const Coeff& s) const {
    LaurentPoly r(var_);
    if (coeff_is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  /// Multiplication by v^k.
  LaurentPoly shifted(int64_t k) const {
    LaurentPoly r(var_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
  }

  /// v -> v^g (g may be negative).
  LaurentPoly substitute_power(int64_t g) const {
    LaurentPoly r(var_);
    for (const auto& [e, c] : terms_) r.add_term(e * g, c);
    return r;
  }

  /// Coefficient-wise complex conjugation (the map x(v) -> conj(x(conj v))).
  LaurentPoly conjugate() const {
    LaurentPoly r(var_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, coeff_conjugate(c));
    return r;
  }

  template <class Fn>
  auto map_coefficients(Fn&& fn) const {
    using Out = std::decay_t<decltype(fn(std::declval<const Coeff&>()))>;
    LaurentPoly<Out> r(var_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  /// gcd of all exponent differences from the minimum degree (0 if <= 1 term).
  int64_t exponent_stride() const {
    if (terms_.size() < 2) return 0;
    const int64_t lo = min_degree();
    int64_t g = 0;
    for (const auto& [e, c] : terms_) g = std::gcd(g, e - lo);
    return g;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << coeff_string(c);
      if (e != 0) os << "*" << variable_name(var_) << "^" << e;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    return os << p.to_string();
  }

 private:
  void adopt_variable(const LaurentPoly& o) {
    if (o.is_zero()) return;
    if (is_zero()) {
      var_ = o.var_;
      return;
    }
    require(var_ == o.var_, "Laurent polynomial variable mismatch", "VariableMismatch");
  }

  Terms terms_;
  Variable var_ = Variable::z;
};

/// Division with remainder of ordinary polynomials (min degree >= 0) over a
/// field. Exponents are treated as polynomial degrees.
template <class Coeff>
std::pair<LaurentPoly<Coeff>, LaurentPoly<Coeff>> poly_divmod(const LaurentPoly<Coeff>& a,
                                                              const LaurentPoly<Coeff>& b) {
  require(!b.is_zero(), "poly_divmod: division by zero", "DivisionByZero");
  LaurentPoly<Coeff> q(a.variable()), r = a;
  const int64_t db = b.max_degree();
  const Coeff inv_lead = coeff_inverse(b.leading_coeff());
  while (!r.is_zero() && r.max_degree() >= db) {
    const int64_t shift = r.max_degree() - db;
    const Coeff c = r.leading_coeff() * inv_lead;
    q.add_term(shift, c);
    r -= b.shifted(shift).scaled(c);
  }
  return {q, r};
}

/// Strips the lowest monomial so the minimum degree is zero.
template <class Coeff>
LaurentPoly<Coeff> strip_monomial(const LaurentPoly<Coeff>& a) {
  return a.is_zero() ? a : a.shifted(-a.min_degree());
}

/// Monic gcd in the Laurent ring (units are c z^k), normalized to min
/// degree 0. gcd(0, 0) = 0.
template <class Coeff>
LaurentPoly<Coeff> laurent_gcd(const LaurentPoly<Coeff>& a, const LaurentPoly<Coeff>& b) {
  if (a.is_zero() && b.is_zero()) return a;
  // Work in v^g when every exponent is a multiple of g after stripping.
  LaurentPoly<Coeff> x = strip_monomial(a), y = strip_monomial(b);
  const int64_t g = std::gcd(x.exponent_stride(), y.exponent_stride());
  if (g > 1) {
    LaurentPoly<Coeff> xs(x.variable()), ys(y.variable());
    for (const auto& [e, c] : x.terms()) xs.add_term(e / g, c);
    for (const auto& [e, c] : y.terms()) ys.add_term(e / g, c);
    return laurent_gcd(xs, ys).substitute_power(g);
  }
  while (!y.is_zero()) {
    auto [q, r] = poly_divmod(x, y);
    x = std::move(y);
    y = strip_monomial(r);
  }
  return x.scaled(coeff_inverse(x.leading_coeff()));
}

/// a / b when b divides a in the Laurent ring; nullopt otherwise.
template <class Coeff>
std::optional<LaurentPoly<Coeff>> laurent_exact_divide(const LaurentPoly<Coeff>& a,
                                                       const LaurentPoly<Coeff>& b) {
  require(!b.is_zero(), "laurent_exact_divide: division by zero", "DivisionByZero");
  if (a.is_zero()) return a;
  const int64_t sa = a.min_degree(), sb = b.min_degree();
  auto [q, r] = poly_divmod(a.shifted(-sa), b.shifted(-sb));
  if (!r.is_zero()) return std::nullopt;
  return q.shifted(sa - sb);
}

}  // namespace lenswrt
