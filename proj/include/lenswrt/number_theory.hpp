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
 * @file number_theory.hpp
 * @brief Integer and rational number theory used throughout the library.
 *
 * Modular inverses, Jacobi symbols, Dedekind sums s(q,p), the number of
 * squares modulo p, the prime / twice-an-odd-prime order classifier, and the
 * SL(2,Z) word expansion behind the Rademacher Phi function of a lens space
 * gluing matrix (q b; p d).
 */

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "lenswrt/errors.hpp"

namespace lenswrt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Non-negative residue of a modulo m (m > 0).
constexpr int64_t mod_floor(int64_t a, int64_t m) {
  const int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// t*_u: the inverse of t modulo u, in [0, u).
inline int64_t mod_inverse(int64_t t, int64_t u) {
  require(u >= 2, "mod_inverse: modulus must be >= 2");
  int64_t a = mod_floor(t, u), b = u;
  int64_t x0 = 1, x1 = 0;
  while (b != 0) {
    const int64_t q = a / b;
    a -= q * b;
    std::swap(a, b);
    x0 -= q * x1;
    std::swap(x0, x1);
  }
  require(a == 1, "mod_inverse: " + std::to_string(t) + " is not invertible modulo " +
                      std::to_string(u),
          "NotCoprime");
  return mod_floor(x0, u);
}

/// Jacobi symbol (a/b) for odd b >= 1.
inline int jacobi_symbol(int64_t a, int64_t b) {
  require(b >= 1 && b % 2 == 1, "jacobi_symbol: b must be odd and positive");
  a = mod_floor(a, b);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const int64_t r = b % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) result = -result;
    a %= b;
  }
  return b == 1 ? result : 0;
}

/// Dedekind sum s(q,p) = sum_{n=1}^{p-1} ((n/p)) ((qn/p)).
///
/// For coprime arguments neither sawtooth argument is an integer, so
/// ((n/p)) = (2n - p) / 2p and the sum collapses to a single integer
/// accumulation over 4p^2.
inline Rational dedekind_sum(int64_t q, int64_t p) {
  require(p >= 1, "dedekind_sum: p must be >= 1");
  require(std::gcd(q, p) == 1, "dedekind_sum: q and p must be coprime", "NotCoprime");
  Integer acc = 0;
  for (int64_t n = 1; n < p; ++n) {
    const int64_t m = mod_floor(q * n, p);
    acc += Integer(2 * n - p) * Integer(2 * m - p);
  }
  Rational s(acc, Integer(4) * p * p);
  s.canonicalize();
  return s;
}

/// #_p: the number of distinct residues n^2 mod p.
inline int64_t count_squares_mod(int64_t p) {
  require(p >= 2, "count_squares_mod: p must be >= 2");
  std::vector<bool> seen(static_cast<size_t>(p), false);
  int64_t count = 0;
  for (int64_t n = 0; n < p; ++n) {
    const auto s = static_cast<size_t>(mod_floor(n * n, p));
    if (!seen[s]) {
      seen[s] = true;
      ++count;
    }
  }
  return count;
}

enum class OrderClass { Determining, NonDetermining };

inline std::string to_string(OrderClass c) {
  return c == OrderClass::Determining ? "Determining" : "NonDetermining";
}

/// Determining iff p is prime or twice an odd prime.
inline OrderClass classify_order(int64_t p) {
  require(p >= 2, "classify_order: p must be >= 2");
  const bool twice_odd_prime = p % 2 == 0 && (p / 2) % 2 == 1 && is_prime(p / 2);
  return (is_prime(p) || twice_odd_prime) ? OrderClass::Determining
                                          : OrderClass::NonDetermining;
}

/// 2x2 integer matrix (a b; c d).
struct Mat2 {
  int64_t a = 1, b = 0, c = 0, d = 1;

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
  int64_t det() const { return a * d - b * c; }
};

/// J(m) = T^m S = (m -1; 1 0).
constexpr Mat2 J(int64_t m) { return {m, -1, 1, 0}; }
constexpr Mat2 J_inverse(int64_t m) { return {0, 1, -1, m}; }

/// Validates lens-space parameters: p >= 2, 0 < q < p, gcd(p,q) = 1.
inline void validate_lens(int64_t p, int64_t q) {
  require(p >= 2, "lens space: p must be >= 2");
  require(q > 0 && q < p, "lens space: q must satisfy 0 < q < p");
  require(std::gcd(p, q) == 1, "lens space: p and q must be coprime", "NotCoprime");
}

/// The gluing matrix U = (q b; p d) with d = q*_p and b = (qd - 1)/p.
inline Mat2 gluing_matrix(int64_t p, int64_t q) {
  validate_lens(p, q);
  const int64_t d = mod_inverse(q, p);
  return {q, (q * d - 1) / p, p, d};
}

/// A factorization U = J(m_t) ... J(m_1) with m_t = 0 and t > 1.
struct SL2Word {
  std::vector<int64_t> m;        // m_1 .. m_t
  std::vector<Mat2> partial;     // U_i = J(m_i) ... J(m_1)
  std::vector<int64_t> weights;  // w_1 = 0, w_i = w_{i-1} + sign(c_{i-1} c_i)

  Mat2 product() const { return partial.empty() ? Mat2{} : partial.back(); }
  int64_t trace() const { return std::accumulate(m.begin(), m.end(), int64_t{0}); }
  int64_t signature() const { return weights.empty() ? 0 : weights.back(); }
};

namespace detail {
constexpr int64_t sign(int64_t x) { return (x > 0) - (x < 0); }
}  // namespace detail

/// Expands the gluing matrix of L(p,q) as a word in J(m).
///
/// J factors are peeled off the left. Each step replaces the lower row
/// (c, d) with m(c, d) - (a, b) where m is chosen so the new lower-left
/// entry keeps the sign of c and is strictly smaller in magnitude (or
/// equals 1 once |c| = 1). The process stops when the remainder is a
/// single J(m_1).
inline SL2Word sl2_expand(int64_t p, int64_t q) {
  const Mat2 U = gluing_matrix(p, q);
  std::vector<int64_t> peeled{0};
  Mat2 X = J_inverse(0) * U;
  for (int steps = 0; !(X.c == 1 && X.d == 0); ++steps) {
    if (steps > 4 * 64 + 16)
      throw ComputationError("ExpansionFailed", "sl2_expand did not terminate");
    const int64_t a = X.a, c = X.c;
    int64_t m;
    if (c == 1 || c == -1) {
      m = (1 + a) * c;
    } else if (c > 0) {
      const int64_t r = mod_floor(-a, c);
      m = (a + r) / c;
    } else {
      const int64_t r = -mod_floor(a, -c);
      m = (a + r) / c;
    }
    peeled.push_back(m);
    X = J_inverse(m) * X;
  }
  peeled.push_back(X.a);

  SL2Word w;
  w.m.assign(peeled.rbegin(), peeled.rend());
  Mat2 Ui;
  for (size_t i = 0; i < w.m.size(); ++i) {
    Ui = i == 0 ? J(w.m[0]) : J(w.m[i]) * Ui;
    w.partial.push_back(Ui);
    if (i == 0) {
      w.weights.push_back(0);
    } else {
      const int64_t s = detail::sign(w.partial[i - 1].c) * detail::sign(Ui.c);
      w.weights.push_back(w.weights.back() + s);
    }
  }
  if (!(w.product() == U))
    throw ComputationError("ExpansionFailed", "sl2_expand: product mismatch");
  return w;
}

/// Phi(U) = Trace(W_L) - 3 Sign(W_L) from the word expansion.
inline int64_t rademacher_phi(int64_t p, int64_t q) {
  const SL2Word w = sl2_expand(p, q);
  return w.trace() - 3 * w.signature();
}

/// Closed form Phi(U) = (q + d)/p - 12 s(d, p) for U = (q b; p d).
inline Rational rademacher_phi_closed_form(int64_t p, int64_t q) {
  const Mat2 U = gluing_matrix(p, q);
  Rational v = Rational(U.a + U.d, p) - 12 * dedekind_sum(U.d, p);
  v.canonicalize();
  return v;
}

/// Checks pb - pq Phi(U) + q^2 + 1 = 12 pq s(q,p) exactly.
inline bool phi_identity_holds(int64_t p, int64_t q) {
  const Mat2 U = gluing_matrix(p, q);
  const int64_t phi = rademacher_phi(p, q);
  const Rational lhs = Integer(p) * U.b - Integer(p) * q * phi + Integer(q) * q + 1;
  const Rational rhs = 12 * Integer(p) * q * dedekind_sum(q, p);
  return lhs == rhs;
}

}  // namespace lenswrt
