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
 * @file modular.hpp
 * @brief Word-size prime field arithmetic and the split reduction
 * Z[xi_N] / l = F_l^phi(N) for primes l = 1 (mod N).
 */

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/number_theory.hpp"

namespace lenswrt::modp {

using u64 = uint64_t;
using u128 = unsigned __int128;

inline u64 mul(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
inline u64 add(u64 a, u64 b, u64 m) { return a + b >= m ? a + b - m : a + b; }
inline u64 sub(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 pow(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul(r, a, m);
    a = mul(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 inv(u64 a, u64 m) {
  require(a % m != 0, "modular inverse of zero", "DivisionByZero");
  return pow(a, m - 2, m);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline u64 from_signed(const Integer& x, u64 m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m);
  return r.get_ui();
}

/// A prime l = 1 (mod N) with a primitive N-th root of unity and the
/// phi(N) embeddings xi_N -> omega^j, gcd(j, N) = 1.
struct SplitPrime {
  u64 l = 0;
  int64_t N = 1;
  u64 omega = 1;
  std::vector<int64_t> units;          // the j's, ascending
  std::vector<std::vector<u64>> vinv;  // inverse of V[i][t] = omega^{units[i] t}

  size_t degree() const { return units.size(); }

  /// Images of x (order dividing N) under every embedding.
  std::vector<u64> image(const CyclotomicNumber& x) const {
    require(N % x.order() == 0, "SplitPrime::image: order does not divide N");
    const int64_t step = N / x.order();
    const u64 den = from_signed(x.denominator(), l);
    if (den == 0) throw ComputationError("BadPrime", "denominator vanishes modulo the prime");
    const u64 dinv = inv(den, l);
    const auto& num = x.numerators();
    std::vector<u64> out(units.size(), 0);
    for (size_t i = 0; i < units.size(); ++i) {
      const u64 base = pow(omega, static_cast<u64>(mod_floor(units[i] * step, N)), l);
      u64 acc = 0, pw = 1;
      for (const auto& c : num) {
        if (c != 0) acc = add(acc, mul(from_signed(c, l), pw, l), l);
        pw = mul(pw, base, l);
      }
      out[i] = mul(acc, dinv, l);
    }
    return out;
  }

  /// Power-basis coefficients (mod l) of the element with the given images.
  std::vector<u64> coefficients(const std::vector<u64>& images) const {
    std::vector<u64> out(units.size(), 0);
    for (size_t t = 0; t < units.size(); ++t)
      for (size_t i = 0; i < units.size(); ++i)
        out[t] = add(out[t], mul(vinv[t][i], images[i], l), l);
    return out;
  }
};

namespace detail {

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> f;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) f.push_back(n);
  return f;
}

/// Gauss-Jordan inverse mod l; throws if singular.
inline std::vector<std::vector<u64>> invert(std::vector<std::vector<u64>> a, u64 l) {
  const size_t n = a.size();
  std::vector<std::vector<u64>> b(n, std::vector<u64>(n, 0));
  for (size_t i = 0; i < n; ++i) b[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    require(piv < n, "singular embedding matrix", "BadPrime");
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    const u64 iv = inv(a[c][c], l);
    for (size_t j = 0; j < n; ++j) {
      a[c][j] = mul(a[c][j], iv, l);
      b[c][j] = mul(b[c][j], iv, l);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const u64 f = a[r][c];
      for (size_t j = 0; j < n; ++j) {
        a[r][j] = sub(a[r][j], mul(f, a[c][j], l), l);
        b[r][j] = sub(b[r][j], mul(f, b[c][j], l), l);
      }
    }
  }
  return b;
}

}  // namespace detail

/// The index-th prime l = 1 (mod N) below 2^62, counting downwards.
inline SplitPrime split_prime(int64_t N, size_t index) {
  require(N >= 1, "split_prime: N must be >= 1");
  const u64 n = static_cast<u64>(N);
  u64 cand = ((u64{1} << 62) - 1) / n * n + 1;
  if (cand >= (u64{1} << 62)) cand -= n;
  size_t seen = 0;
  for (;; cand -= n) {
    if (!is_prime(cand)) continue;
    if (seen++ == index) break;
  }
  SplitPrime sp;
  sp.l = cand;
  sp.N = N;
  const auto factors = detail::prime_factors(n);
  for (u64 g = 2;; ++g) {
    const u64 w = pow(g, (cand - 1) / n, cand);
    bool primitive = true;
    for (u64 f : factors)
      if (pow(w, n / f, cand) == 1) primitive = false;
    if (primitive) {
      sp.omega = w;
      break;
    }
  }
  for (int64_t j = 0; j < N; ++j)
    if (std::gcd(j, N) == 1) sp.units.push_back(j);
  const size_t phi = sp.units.size();
  std::vector<std::vector<u64>> V(phi, std::vector<u64>(phi));
  for (size_t i = 0; i < phi; ++i) {
    const u64 base = pow(sp.omega, static_cast<u64>(sp.units[i]), cand);
    u64 pw = 1;
    for (size_t t = 0; t < phi; ++t) {
      V[i][t] = pw;
      pw = mul(pw, base, cand);
    }
  }
  sp.vinv = detail::invert(std::move(V), cand);
  return sp;
}

using Matrix = std::vector<std::vector<u64>>;

struct Echelon {
  size_t rank = 0;
  std::vector<size_t> pivot_rows;
  std::vector<size_t> pivot_cols;
};

inline Echelon echelon(Matrix m, u64 l) {
  Echelon e;
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<size_t> row_id(rows);
  std::iota(row_id.begin(), row_id.end(), 0);
  size_t top = 0;
  for (size_t c = 0; c < cols && top < rows; ++c) {
    size_t piv = top;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[top]);
    std::swap(row_id[piv], row_id[top]);
    const u64 iv = inv(m[top][c], l);
    for (size_t r = top + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const u64 f = mul(m[r][c], iv, l);
      for (size_t j = c; j < cols; ++j) m[r][j] = sub(m[r][j], mul(f, m[top][j], l), l);
    }
    e.pivot_rows.push_back(row_id[top]);
    e.pivot_cols.push_back(c);
    ++top;
  }
  e.rank = top;
  return e;
}

/// det(A) and the Cramer values det(A) * A^{-1} B; det = 0 when singular.
inline std::pair<u64, Matrix> cramer(Matrix a, Matrix b, u64 l) {
  const size_t n = a.size();
  const size_t m = n ? b[0].size() : 0;
  u64 det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return {0, {}};
    if (piv != c) {
      std::swap(a[piv], a[c]);
      std::swap(b[piv], b[c]);
      det = sub(0, det, l);
    }
    det = mul(det, a[c][c], l);
    const u64 iv = inv(a[c][c], l);
    for (size_t j = c; j < n; ++j) a[c][j] = mul(a[c][j], iv, l);
    for (size_t j = 0; j < m; ++j) b[c][j] = mul(b[c][j], iv, l);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const u64 f = a[r][c];
      for (size_t j = c; j < n; ++j) a[r][j] = sub(a[r][j], mul(f, a[c][j], l), l);
      for (size_t j = 0; j < m; ++j) b[r][j] = sub(b[r][j], mul(f, b[c][j], l), l);
    }
  }
  for (auto& row : b)
    for (auto& x : row) x = mul(x, det, l);
  return {det, std::move(b)};
}

/// Coefficients (low to high) of the polynomials through (x_i, ys[k][i]),
/// sharing the divided-difference denominators across every k.
inline std::vector<std::vector<u64>> interpolate(const std::vector<u64>& x,
                                                 std::vector<std::vector<u64>> ys, u64 l) {
  const size_t n = x.size();
  std::vector<std::vector<u64>> inv_diff(n);
  for (size_t level = 1; level < n; ++level) {
    inv_diff[level].resize(n, 0);
    for (size_t i = level; i < n; ++i) inv_diff[level][i] = inv(sub(x[i], x[i - level], l), l);
  }
  std::vector<std::vector<u64>> out;
  out.reserve(ys.size());
  for (auto& y : ys) {
    for (size_t level = 1; level < n; ++level)
      for (size_t i = n - 1; i >= level; --i)
        y[i] = mul(sub(y[i], y[i - 1], l), inv_diff[level][i], l);
    std::vector<u64> poly(n, 0);
    size_t len = 0;
    for (size_t i = n; i-- > 0;) {
      // poly = poly * (w - x_i) + y_i
      const u64 neg_x = sub(0, x[i] % l, l);
      for (size_t e = len; e-- > 0;) {
        poly[e + 1] = add(poly[e + 1], poly[e], l);
        poly[e] = mul(poly[e], neg_x, l);
      }
      poly[0] = add(poly[0], y[i], l);
      len = std::min(len + 1, n);
    }
    out.push_back(std::move(poly));
  }
  return out;
}

}  // namespace lenswrt::modp
