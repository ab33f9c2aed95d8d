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
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in the cyclotomic fields Q(xi_N).
 *
 * An element of Q(xi_N) is stored in the power basis 1, xi, ..., xi^{phi(N)-1}
 * as an integer vector over a single positive denominator, reduced modulo the
 * N-th cyclotomic polynomial. The representation is canonical: two elements of
 * the same order are equal iff their stored vectors and denominators agree.
 * Mixed-order arithmetic lifts both operands to the lcm of the orders.
 */

#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <shared_mutex>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "lenswrt/errors.hpp"
#include "lenswrt/number_theory.hpp"
#include "lenswrt/numeric.hpp"

namespace lenswrt {

namespace detail {

/// Per-order data: Phi_N and the table x^e mod Phi_N for 0 <= e < N.
struct CyclotomicField {
  int64_t order = 1;
  size_t degree = 1;
  std::vector<Integer> modulus;                   // Phi_N, low to high, monic
  std::vector<std::vector<int64_t>> power_table;  // [e][j]
};

inline std::vector<Integer> poly_exact_div_monic(std::vector<Integer> num,
                                                 const std::vector<Integer>& den) {
  const size_t dn = den.size() - 1;
  std::vector<Integer> quot(num.size() - dn, 0);
  for (size_t i = num.size(); i-- > dn;) {
    const Integer c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::shared_ptr<const CyclotomicField> cyclotomic_field(int64_t N);

inline std::shared_ptr<const CyclotomicField> build_field(int64_t N) {
  auto f = std::make_shared<CyclotomicField>();
  f->order = N;
  // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d.
  std::vector<Integer> poly(static_cast<size_t>(N) + 1, 0);
  poly[0] = -1;
  poly[static_cast<size_t>(N)] = 1;
  for (int64_t d = 1; d < N; ++d)
    if (N % d == 0) poly = poly_exact_div_monic(poly, cyclotomic_field(d)->modulus);
  f->modulus = poly;
  f->degree = poly.size() - 1;

  const size_t n = f->degree;
  f->power_table.assign(static_cast<size_t>(N), std::vector<int64_t>(n, 0));
  std::vector<Integer> cur(n, 0);
  cur[0] = 1;
  for (int64_t e = 0; e < N; ++e) {
    for (size_t j = 0; j < n; ++j) {
      if (!cur[j].fits_slong_p())
        throw ComputationError("Overflow", "cyclotomic power table entry too large");
      f->power_table[static_cast<size_t>(e)][j] = cur[j].get_si();
    }
    // multiply by x and reduce x^n = -sum modulus[j] x^j
    const Integer top = cur[n - 1];
    for (size_t j = n - 1; j > 0; --j) cur[j] = cur[j - 1] - top * f->modulus[j];
    cur[0] = -top * f->modulus[0];
  }
  return f;
}

inline std::shared_ptr<const CyclotomicField> cyclotomic_field(int64_t N) {
  static std::shared_mutex mutex;
  static std::map<int64_t, std::shared_ptr<const CyclotomicField>> cache;
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(N); it != cache.end()) return it->second;
  }
  // Built outside the lock: construction recurses into divisors.
  auto built = build_field(N);
  std::unique_lock lock(mutex);
  return cache.try_emplace(N, std::move(built)).first->second;
}

}  // namespace detail

class CyclotomicNumber {
 public:
  /// Zero, in Q = Q(xi_1).
  CyclotomicNumber() : order_(1), num_(1, 0), den_(1) {}
  CyclotomicNumber(const Rational& r)  // NOLINT(google-explicit-constructor)
      : order_(1), num_{r.get_num()}, den_(r.get_den()) {}
  CyclotomicNumber(long v) : CyclotomicNumber(Rational(v)) {}  // NOLINT
  CyclotomicNumber(int v) : CyclotomicNumber(Rational(v)) {}   // NOLINT

  /// xi_N^e with the exponent taken mod N.
  static CyclotomicNumber root_of_unity(int64_t N, int64_t e) {
    require(N >= 1, "root_of_unity: order must be >= 1");
    const auto f = detail::cyclotomic_field(N);
    CyclotomicNumber x;
    x.order_ = N;
    x.den_ = 1;
    const auto& row = f->power_table[static_cast<size_t>(mod_floor(e, N))];
    x.num_.assign(row.begin(), row.end());
    return x;
  }

  /// sum_j counts[j] xi_N^j for j in [0, counts.size()), exponents taken mod N.
  static CyclotomicNumber from_powers(int64_t N, std::span<const Integer> counts,
                                      const Integer& den = 1) {
    require(N >= 1, "from_powers: order must be >= 1");
    CyclotomicNumber x;
    x.order_ = N;
    x.den_ = den;
    x.num_ = reduce(*detail::cyclotomic_field(N), counts);
    x.normalize();
    return x;
  }

  int64_t order() const { return order_; }
  size_t degree() const { return num_.size(); }

  /// Canonical power-basis coefficient of xi_N^j, 0 <= j < phi(N).
  Rational coeff(size_t j) const {
    Rational r(num_.at(j), den_);
    r.canonicalize();
    return r;
  }
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  bool is_zero() const {
    for (const auto& c : num_)
      if (c != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t j = 1; j < num_.size(); ++j)
      if (num_[j] != 0) return false;
    return true;
  }
  /// Requires is_rational().
  Rational to_rational() const {
    require(is_rational(), "to_rational: value is not rational");
    Rational r(num_[0], den_);
    r.canonicalize();
    return r;
  }

  /// The same value viewed in Q(xi_M), M a multiple of order().
  CyclotomicNumber lifted(int64_t M) const {
    require(M % order_ == 0, "lifted: target order must be a multiple of the order");
    if (M == order_) return *this;
    const int64_t step = M / order_;
    std::vector<Integer> powers(static_cast<size_t>(M), 0);
    for (size_t j = 0; j < num_.size(); ++j)
      powers[static_cast<size_t>(static_cast<int64_t>(j) * step % M)] += num_[j];
    return from_powers(M, powers, den_);
  }

  /// Complex conjugation xi_N -> xi_N^{-1}.
  CyclotomicNumber conjugate() const {
    if (order_ <= 2) return *this;
    std::vector<Integer> powers(static_cast<size_t>(order_), 0);
    for (size_t j = 0; j < num_.size(); ++j)
      powers[static_cast<size_t>(mod_floor(-static_cast<int64_t>(j), order_))] += num_[j];
    return from_powers(order_, powers, den_);
  }

  /// Multiplicative inverse via the extended Euclidean algorithm against
  /// Phi_N over Q[x].
  CyclotomicNumber inverse() const;

  CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
  CyclotomicNumber& operator-=(const CyclotomicNumber& o) { return *this = *this - o; }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

  friend CyclotomicNumber operator-(const CyclotomicNumber& x) {
    CyclotomicNumber r = x;
    for (auto& c : r.num_) c = -c;
    return r;
  }

  friend CyclotomicNumber operator+(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    return add(x, y, false);
  }
  friend CyclotomicNumber operator-(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    return add(x, y, true);
  }

  friend CyclotomicNumber operator*(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    if (x.is_zero() || y.is_zero()) return {};
    if (x.order_ != y.order_) {
      if (x.is_rational()) return y.scaled(x.num_[0], x.den_);
      if (y.is_rational()) return x.scaled(y.num_[0], y.den_);
      const int64_t M = std::lcm(x.order_, y.order_);
      return x.lifted(M) * y.lifted(M);
    }
    const size_t n = x.num_.size();
    std::vector<Integer> prod(2 * n - 1, 0);
    for (size_t i = 0; i < n; ++i) {
      if (x.num_[i] == 0) continue;
      for (size_t j = 0; j < n; ++j)
        if (y.num_[j] != 0) prod[i + j] += x.num_[i] * y.num_[j];
    }
    return from_powers(x.order_, prod, x.den_ * y.den_);
  }

  friend CyclotomicNumber operator/(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    return x * y.inverse();
  }

  /// x * (num / den) for rational scalars.
  CyclotomicNumber scaled(const Integer& num, const Integer& den) const {
    if (num == 0) return {};
    CyclotomicNumber r = *this;
    for (auto& c : r.num_) c *= num;
    r.den_ *= den;
    if (r.den_ < 0) {
      r.den_ = -r.den_;
      for (auto& c : r.num_) c = -c;
    }
    r.normalize();
    return r;
  }
  CyclotomicNumber scaled(const Rational& s) const { return scaled(s.get_num(), s.get_den()); }

  friend bool operator==(const CyclotomicNumber& x, const CyclotomicNumber& y) {
    if (x.order_ == y.order_) return x.den_ == y.den_ && x.num_ == y.num_;
    if (x.is_rational() && y.is_rational()) return x.den_ == y.den_ && x.num_[0] == y.num_[0];
    const int64_t M = std::lcm(x.order_, y.order_);
    return x.lifted(M) == y.lifted(M);
  }

  /// Numeric value under xi_N -> e^{2 pi i / N}.
  template <class Real>
  Complex<Real> embed() const {
    Complex<Real> acc;
    for (size_t j = 0; j < num_.size(); ++j)
      if (num_[j] != 0)
        acc += unit_root<Real>(static_cast<int64_t>(j), order_) * to_real<Real>(num_[j]);
    return acc / to_real<Real>(den_);
  }

  /// Human-readable form, e.g. "2 + zeta8 - 1/2*zeta8^3".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < num_.size(); ++j) {
      if (num_[j] == 0) continue;
      Rational c = coeff(j);
      const bool neg = c < 0;
      if (neg) c = -c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (j == 0) {
        os << c.get_str();
        continue;
      }
      if (c != 1) os << c.get_str() << "*";
      os << "zeta" << order_;
      if (j > 1) os << "^" << j;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const CyclotomicNumber& x) {
    return os << x.to_string();
  }

 private:
  static std::vector<Integer> reduce(const detail::CyclotomicField& f,
                                     std::span<const Integer> powers) {
    const int64_t N = f.order;
    const size_t n = f.degree;
    std::vector<Integer> folded(static_cast<size_t>(N), 0);
    for (size_t e = 0; e < powers.size(); ++e)
      if (powers[e] != 0) folded[e % static_cast<size_t>(N)] += powers[e];
    std::vector<Integer> out(folded.begin(), folded.begin() + static_cast<std::ptrdiff_t>(n));
    for (size_t e = n; e < static_cast<size_t>(N); ++e) {
      if (folded[e] == 0) continue;
      const auto& row = f.power_table[e];
      for (size_t j = 0; j < n; ++j)
        if (row[j] != 0) out[j] += folded[e] * row[j];
    }
    return out;
  }

  static CyclotomicNumber add(const CyclotomicNumber& x, const CyclotomicNumber& y,
                              bool subtract) {
    if (x.order_ != y.order_) {
      const int64_t M = std::lcm(x.order_, y.order_);
      return add(x.lifted(M), y.lifted(M), subtract);
    }
    CyclotomicNumber r;
    r.order_ = x.order_;
    r.num_.resize(x.num_.size());
    if (x.den_ == y.den_) {
      for (size_t j = 0; j < r.num_.size(); ++j) {
        if (subtract)
          r.num_[j] = x.num_[j] - y.num_[j];
        else
          r.num_[j] = x.num_[j] + y.num_[j];
      }
      r.den_ = x.den_;
    } else {
      for (size_t j = 0; j < r.num_.size(); ++j) {
        if (subtract)
          r.num_[j] = x.num_[j] * y.den_ - y.num_[j] * x.den_;
        else
          r.num_[j] = x.num_[j] * y.den_ + y.num_[j] * x.den_;
      }
      r.den_ = x.den_ * y.den_;
    }
    r.normalize();
    return r;
  }

  void normalize() {
    if (den_ < 0) {
      den_ = -den_;
      for (auto& c : num_) c = -c;
    }
    if (den_ == 1) return;
    Integer g = den_;
    for (const auto& c : num_) {
      if (c == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) return;
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }

  int64_t order_;
  std::vector<Integer> num_;
  Integer den_;
};

namespace detail {

// Dense polynomials over Q, low to high, trimmed.
using QPoly = std::vector<Rational>;

inline void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const Rational lead = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    const size_t shift = r.size() - b.size();
    Rational c = r.back() / lead;
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
    r.pop_back();
    trim(r);
  }
}

inline QPoly sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly out(std::max(a.size(), q.size() + b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < q.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
  trim(out);
  return out;
}

}  // namespace detail

inline CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero()) throw ComputationError("DivisionByZero", "inverse of zero cyclotomic number");
  if (is_rational()) return CyclotomicNumber(Rational(den_, num_[0]));
  const auto f = detail::cyclotomic_field(order_);
  detail::QPoly r0(f->modulus.begin(), f->modulus.end());
  detail::QPoly r1(num_.begin(), num_.end());
  detail::trim(r1);
  detail::QPoly s0{}, s1{Rational(1)};
  while (r1.size() > 1) {
    detail::QPoly q, r;
    detail::divmod(r0, r1, q, r);
    detail::QPoly s2 = detail::sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // s1 * a == r1[0] (mod Phi_N); scale by den / r1[0].
  const Rational scale = Rational(den_) / r1[0];
  Integer common = 1;
  for (const auto& c : s1) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> powers(s1.size());
  for (size_t j = 0; j < s1.size(); ++j) {
    Rational v = s1[j] * common;
    powers[j] = v.get_num();
  }
  CyclotomicNumber inv = from_powers(order_, powers, common);
  return inv.scaled(scale);
}

}  // namespace lenswrt
