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
 * @file exact_linalg.hpp
 * @brief Exact rank and kernel of matrices over K[z, z^-1], K = Q(xi_N).
 *
 * Each column is divided by the lowest power of z it contains, cleared of
 * rational denominators, and the common stride g of the remaining exponents
 * is folded into w = z^g. Entries are then polynomials in w over Z[xi_N].
 *
 * Rank and kernel come from specializations modulo primes l = 1 (mod N),
 * where Z[xi_N] splits into phi(N) copies of F_l:
 *
 *  - the rank at a point w = t modulo a prime is a lower bound for the rank
 *    over K(w), so hitting the number of nonzero columns settles full
 *    column rank;
 *  - otherwise pivot rows R and columns C found there define, for every
 *    non-pivot column j, the Cramer vector with v_j = det P_RC and
 *    v_C = -adj(P_RC) P_Rj, which has coefficients in Z[xi_N] and degree at
 *    most sum_{c in C} deg_c + deg_j. It is interpolated modulo several
 *    primes, lifted by CRT until stable, and checked against the whole
 *    matrix by exact polynomial arithmetic over K. The checked vectors are
 *    independent, which pins the rank from above.
 *
 * A bad specialization only shows up as a failed check and is retried.
 */

#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/laurent.hpp"
#include "lenswrt/modular.hpp"

namespace lenswrt {

using KNum = CyclotomicNumber;
using KPoly = LaurentPoly<CyclotomicNumber>;
using KMatrix = std::vector<std::vector<KNum>>;
using LaurentMatrix = std::vector<std::vector<KPoly>>;

struct Echelon {
  size_t rank = 0;
  std::vector<size_t> pivot_rows;
  std::vector<size_t> pivot_cols;
};

/// Row reduction over K, columns scanned left to right. Pivot columns are
/// the lexicographically first independent set.
inline Echelon echelon(KMatrix m) {
  Echelon e;
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<size_t> row_id(rows);
  std::iota(row_id.begin(), row_id.end(), 0);
  size_t top = 0;
  for (size_t c = 0; c < cols && top < rows; ++c) {
    size_t piv = top;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[top]);
    std::swap(row_id[piv], row_id[top]);
    const KNum inv = m[top][c].inverse();
    for (size_t r = top + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      const KNum f = m[r][c] * inv;
      for (size_t j = c; j < cols; ++j)
        if (!m[top][j].is_zero()) m[r][j] = m[r][j] - f * m[top][j];
    }
    e.pivot_rows.push_back(row_id[top]);
    e.pivot_cols.push_back(c);
    ++top;
  }
  e.rank = top;
  return e;
}

struct SquareSolve {
  KNum det;
  KMatrix x;  // x[i][j]: row i of the solution for right-hand side j
};

/// Solves A X = B for square A. det is zero (and x empty) when singular.
inline SquareSolve solve_square(KMatrix a, KMatrix b) {
  const size_t n = a.size();
  const size_t m = n ? b[0].size() : 0;
  SquareSolve out;
  KNum det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) {
      out.det = KNum(0);
      return out;
    }
    if (piv != c) {
      std::swap(a[piv], a[c]);
      std::swap(b[piv], b[c]);
      det = -det;
    }
    det = det * a[c][c];
    const KNum inv = a[c][c].inverse();
    for (size_t j = c; j < n; ++j) a[c][j] = a[c][j] * inv;
    for (size_t j = 0; j < m; ++j) b[c][j] = b[c][j] * inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const KNum f = a[r][c];
      for (size_t j = c; j < n; ++j)
        if (!a[c][j].is_zero()) a[r][j] = a[r][j] - f * a[c][j];
      for (size_t j = 0; j < m; ++j)
        if (!b[c][j].is_zero()) b[r][j] = b[r][j] - f * b[c][j];
    }
  }
  out.det = det;
  out.x = std::move(b);
  return out;
}

inline KNum determinant(const KMatrix& a) {
  return solve_square(a, KMatrix(a.size(), std::vector<KNum>{})).det;
}


struct KernelResult {
  size_t rank = 0;
  size_t columns = 0;
  std::vector<std::vector<KPoly>> basis;
  size_t retries = 0;  // specializations rejected by the exact check
  size_t primes = 0;   // primes used by the accepted reconstruction
};

namespace detail {

struct NormalizedMatrix {
  std::vector<std::vector<KPoly>> w;  // entries as polynomials in w = z^g
  std::vector<int64_t> shift;         // lowest z-power per column
  std::vector<Integer> scale;         // denominator cleared per column
  std::vector<int64_t> degree;        // w-degree per column
  std::vector<bool> zero_col;
  int64_t g = 1;
  int64_t N = 1;
};

inline NormalizedMatrix normalize_columns(const LaurentMatrix& m) {
  NormalizedMatrix n;
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  n.shift.assign(cols, 0);
  n.scale.assign(cols, Integer(1));
  n.degree.assign(cols, 0);
  n.zero_col.assign(cols, true);
  int64_t g = 0;
  for (size_t c = 0; c < cols; ++c) {
    for (size_t r = 0; r < rows; ++r) {
      const KPoly& f = m[r][c];
      if (f.is_zero()) continue;
      n.shift[c] = n.zero_col[c] ? f.min_degree() : std::min(n.shift[c], f.min_degree());
      n.zero_col[c] = false;
      for (const auto& [e, v] : f.terms()) {
        n.N = std::lcm(n.N, v.order());
        mpz_lcm(n.scale[c].get_mpz_t(), n.scale[c].get_mpz_t(), v.denominator().get_mpz_t());
      }
    }
    for (size_t r = 0; r < rows; ++r)
      for (const auto& [e, v] : m[r][c].terms()) g = std::gcd(g, e - n.shift[c]);
  }
  n.g = g == 0 ? 1 : g;
  n.w.assign(rows, std::vector<KPoly>(cols, KPoly(Variable::z)));
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c)
      for (const auto& [e, v] : m[r][c].terms()) {
        const int64_t we = (e - n.shift[c]) / n.g;
        n.w[r][c].add_term(we, v.scaled(n.scale[c], Integer(1)));
        n.degree[c] = std::max(n.degree[c], we);
      }
  return n;
}

/// The normalized matrix reduced modulo a split prime.
class ModImage {
 public:
  ModImage(const NormalizedMatrix& n, const modp::SplitPrime& sp) : sp_(sp) {
    terms_.resize(n.w.size());
    for (size_t r = 0; r < n.w.size(); ++r) {
      terms_[r].resize(n.w[r].size());
      for (size_t c = 0; c < n.w[r].size(); ++c)
        for (const auto& [e, v] : n.w[r][c].terms()) {
          terms_[r][c].push_back({e, sp.image(v)});
          max_degree_ = std::max(max_degree_, e);
        }
    }
  }

  modp::Matrix specialize(size_t emb, const std::vector<size_t>& rows,
                          const std::vector<size_t>& cols, modp::u64 t) const {
    const modp::u64 l = sp_.l;
    std::vector<modp::u64> pw(static_cast<size_t>(max_degree_ + 1), 1);
    for (size_t e = 1; e < pw.size(); ++e) pw[e] = modp::mul(pw[e - 1], t, l);
    modp::Matrix out(rows.size(), std::vector<modp::u64>(cols.size(), 0));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) {
        modp::u64 acc = 0;
        for (const auto& [e, img] : terms_[rows[i]][cols[j]])
          acc = modp::add(acc, modp::mul(img[emb], pw[static_cast<size_t>(e)], l), l);
        out[i][j] = acc;
      }
    return out;
  }

 private:
  const modp::SplitPrime& sp_;
  int64_t max_degree_ = 0;
  std::vector<std::vector<std::vector<std::pair<int64_t, std::vector<modp::u64>>>>> terms_;
};

/// True when sum_c n.w[r][c] * v[c] vanishes for every row.
inline bool annihilates(const NormalizedMatrix& n, const std::vector<KPoly>& v) {
  for (const auto& row : n.w) {
    KPoly acc(Variable::z);
    for (size_t c = 0; c < row.size(); ++c)
      if (!v[c].is_zero() && !row[c].is_zero()) acc += row[c] * v[c];
    if (!acc.is_zero()) return false;
  }
  return true;
}

inline const modp::SplitPrime& cached_split_prime(int64_t N, size_t index) {
  static std::mutex mutex;
  static std::map<std::pair<int64_t, size_t>, std::unique_ptr<modp::SplitPrime>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{N, index}];
  if (!slot) slot = std::make_unique<modp::SplitPrime>(modp::split_prime(N, index));
  return *slot;
}

/// Cramer vectors for the non-pivot columns J, modulo one split prime, as
/// power-basis residues laid out [jj][component][w-degree][basis index].
/// Components are C in order, then j itself.
inline std::vector<modp::u64> cramer_residues(const NormalizedMatrix& n,
                                              const modp::SplitPrime& sp,
                                              const std::vector<size_t>& R,
                                              const std::vector<size_t>& C,
                                              const std::vector<size_t>& J, size_t needed) {
  const ModImage img(n, sp);
  const modp::u64 l = sp.l;
  const size_t phi = sp.degree();
  const size_t comps = C.size() + 1;
  // polys[i][jj][comp] = coefficient list for embedding i
  std::vector<std::vector<std::vector<std::vector<modp::u64>>>> polys(phi);
  for (size_t i = 0; i < phi; ++i) {
    std::vector<modp::u64> xs;
    std::vector<std::vector<std::vector<modp::u64>>> ys(J.size(),
                                                        std::vector<std::vector<modp::u64>>(comps));
    for (modp::u64 t = 1; xs.size() < needed; ++t) {
      if (t > needed + 1000)
        throw ComputationError("RankUndetermined", "too many singular specializations");
      auto [det, x] = modp::cramer(img.specialize(i, R, C, t), img.specialize(i, R, J, t), l);
      if (det == 0) continue;
      xs.push_back(t);
      for (size_t jj = 0; jj < J.size(); ++jj) {
        for (size_t ci = 0; ci < C.size(); ++ci) ys[jj][ci].push_back(modp::sub(0, x[ci][jj], l));
        ys[jj][C.size()].push_back(det);
      }
    }
    polys[i].resize(J.size());
    for (size_t jj = 0; jj < J.size(); ++jj) polys[i][jj] = modp::interpolate(xs, std::move(ys[jj]), l);
  }
  std::vector<modp::u64> out;
  out.reserve(J.size() * comps * needed * phi);
  std::vector<modp::u64> images(phi);
  for (size_t jj = 0; jj < J.size(); ++jj)
    for (size_t ci = 0; ci < comps; ++ci)
      for (size_t e = 0; e < needed; ++e) {
        for (size_t i = 0; i < phi; ++i) images[i] = polys[i][jj][ci][e];
        const auto coeffs = sp.coefficients(images);
        out.insert(out.end(), coeffs.begin(), coeffs.end());
      }
  return out;
}

}  // namespace detail

/// Rank over K(z) and a kernel basis with Laurent polynomial components.
/// The kernel basis is always certified (it bounds the rank from above);
/// with want_basis = false it is just not mapped back to z.
inline KernelResult exact_kernel(const LaurentMatrix& m, bool want_basis = true) {
  const detail::NormalizedMatrix n = detail::normalize_columns(m);
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  KernelResult res;
  res.columns = cols;

  std::vector<size_t> all_rows(rows), nz;
  std::iota(all_rows.begin(), all_rows.end(), 0);
  for (size_t c = 0; c < cols; ++c)
    if (!n.zero_col[c]) nz.push_back(c);

  std::vector<std::vector<KPoly>> w_basis;
  std::mt19937_64 rng(20260101);
  const size_t max_attempts = 16;
  const size_t max_primes = 256;
  const modp::SplitPrime& sp0 = detail::cached_split_prime(n.N, 0);
  const detail::ModImage img0(n, sp0);
  for (size_t attempt = 0; !nz.empty(); ++attempt) {
    if (attempt == max_attempts)
      throw ComputationError("RankUndetermined", "exact_kernel: no certifying specialization found");
    const modp::u64 t0 = rng() % sp0.l;
    const modp::Echelon e = modp::echelon(img0.specialize(0, all_rows, nz, t0), sp0.l);
    if (e.rank == nz.size()) {
      res.rank = e.rank;
      break;
    }
    std::vector<size_t> R = e.pivot_rows, C, J;
    std::vector<bool> piv(nz.size(), false);
    for (size_t i : e.pivot_cols) {
      C.push_back(nz[i]);
      piv[i] = true;
    }
    for (size_t i = 0; i < nz.size(); ++i)
      if (!piv[i]) J.push_back(nz[i]);
    int64_t bound = 0, max_j = 0;
    for (size_t c : C) bound += n.degree[c];
    for (size_t j : J) max_j = std::max(max_j, n.degree[j]);
    const auto needed = static_cast<size_t>(bound + max_j + 1);
    const size_t phi = sp0.degree();
    const size_t comps = C.size() + 1;

    std::vector<Integer> acc, lifted, prev;
    Integer modulus = 1;
    bool accepted = false;
    for (size_t pi = 0; pi < max_primes; ++pi) {
      const modp::SplitPrime& sp = detail::cached_split_prime(n.N, pi);
      const auto res_p = detail::cramer_residues(n, sp, R, C, J, needed);
      if (acc.empty()) acc.assign(res_p.size(), Integer(0));
      const Integer lp(static_cast<unsigned long>(sp.l));
      Integer minv;
      mpz_invert(minv.get_mpz_t(), Integer(modulus % lp).get_mpz_t(), lp.get_mpz_t());
      lifted.resize(acc.size());
      const Integer next_mod = modulus * lp;
      const Integer halfmod = next_mod / 2;
      for (size_t i = 0; i < acc.size(); ++i) {
        Integer diff = Integer(static_cast<unsigned long>(res_p[i])) - acc[i];
        Integer k = diff * minv;
        mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), lp.get_mpz_t());
        acc[i] += modulus * k;
        lifted[i] = acc[i] > halfmod ? Integer(acc[i] - next_mod) : acc[i];
      }
      modulus = next_mod;
      if (pi == 0 || lifted != prev) {
        prev = lifted;
        continue;
      }
      // Stable: rebuild over K and check exactly.
      w_basis.clear();
      bool ok = true;
      size_t pos = 0;
      for (size_t jj = 0; jj < J.size(); ++jj) {
        std::vector<KPoly> v(cols, KPoly(Variable::z));
        for (size_t ci = 0; ci < comps; ++ci) {
          KPoly poly(Variable::z);
          for (size_t e2 = 0; e2 < needed; ++e2, pos += phi)
            poly.add_term(static_cast<int64_t>(e2),
                          CyclotomicNumber::from_powers(
                              n.N, std::span<const Integer>(lifted.data() + pos, phi)));
          v[ci < C.size() ? C[ci] : J[jj]] = std::move(poly);
        }
        if (ok) ok = detail::annihilates(n, v);
        w_basis.push_back(std::move(v));
      }
      if (ok) {
        res.primes = pi + 1;
        accepted = true;
      }
      break;
    }
    if (accepted) {
      res.rank = C.size();
      break;
    }
    w_basis.clear();
    ++res.retries;
  }

  if (!want_basis) return res;
  for (size_t c = 0; c < cols; ++c)
    if (n.zero_col[c]) {
      std::vector<KPoly> v(cols, KPoly(Variable::z));
      v[c] = KPoly::constant(KNum(1));
      res.basis.push_back(std::move(v));
    }
  for (const auto& v : w_basis) {
    std::vector<KPoly> out(cols, KPoly(Variable::z));
    for (size_t c = 0; c < cols; ++c)
      out[c] = v[c].substitute_power(n.g).shifted(-n.shift[c]).scaled(KNum(Rational(n.scale[c])));
    res.basis.push_back(std::move(out));
  }
  return res;
}

inline size_t exact_rank(const LaurentMatrix& m) { return exact_kernel(m, false).rank; }

}  // namespace lenswrt
