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
 * @file analysis.hpp
 * @brief The f-matrix of L(p,q): rank, kernel, recovery of skein
 * coefficients, the Lambda-membership test and numeric interpolation.
 *
 * Matrix entries are the bare bodies of f_{p,q,c,k}. The column factors
 * (-1)^{c+1} i/sqrt(2p) do not change the rank; they do flip kernel
 * components, so kernel() multiplies component c by (-1)^{c+1} on the way
 * out and its vectors annihilate the signed f-polynomials.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/exact_linalg.hpp"
#include "lenswrt/gauss.hpp"
#include "lenswrt/laurent.hpp"
#include "lenswrt/number_theory.hpp"
#include "lenswrt/numeric.hpp"
#include "lenswrt/skein.hpp"
#include "lenswrt/wrt.hpp"

namespace lenswrt {

/// Row k, column c: body of f_{p,q,c,k}.
inline LaurentMatrix build_f_matrix(const LensSpace& L) {
  const auto cols = static_cast<size_t>(L.half() + 1);
  LaurentMatrix m(static_cast<size_t>(L.p), std::vector<KPoly>(cols, KPoly(Variable::z)));
  for (int64_t k = 0; k < L.p; ++k)
    for (size_t c = 0; c < cols; ++c)
      m[static_cast<size_t>(k)][c] = f_poly(L, static_cast<int64_t>(c), k).body;
  return m;
}

/// The same matrix with the (-1)^{c+1} column signs applied.
inline LaurentMatrix build_signed_f_matrix(const LensSpace& L) {
  LaurentMatrix m = build_f_matrix(L);
  for (auto& row : m)
    for (size_t c = 0; c < row.size(); c += 2) row[c] = -row[c];
  return m;
}

inline size_t rank(const LaurentMatrix& m) { return exact_rank(m); }
inline size_t f_rank(const LensSpace& L) { return rank(build_f_matrix(L)); }

/// Divides out the gcd of the components, moves the lowest exponent to 0
/// and makes the top coefficient of the last nonzero component 1.
inline std::vector<KPoly> normalize_vector(std::vector<KPoly> v) {
  KPoly g(Variable::z);
  for (const auto& c : v)
    if (!c.is_zero()) g = g.is_zero() ? strip_monomial(c) : laurent_gcd(g, c);
  if (g.is_zero()) return v;
  int64_t lo = 0;
  bool first = true;
  for (auto& c : v) {
    if (c.is_zero()) continue;
    auto qt = laurent_exact_divide(c, g);
    if (!qt) throw ComputationError("InternalError", "gcd does not divide a component");
    c = std::move(*qt);
    lo = first ? c.min_degree() : std::min(lo, c.min_degree());
    first = false;
  }
  KNum lead;
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    if (!it->is_zero()) {
      lead = it->leading_coeff();
      break;
    }
  const KNum inv = lead.inverse();
  for (auto& c : v) c = c.shifted(-lo).scaled(inv);
  return v;
}

/// Kernel of the signed f-matrix, one normalized vector per basis element.
inline std::vector<std::vector<KPoly>> kernel(const LensSpace& L) {
  KernelResult res = exact_kernel(build_f_matrix(L));
  std::vector<std::vector<KPoly>> out;
  for (auto& v : res.basis) {
    for (size_t c = 0; c < v.size(); c += 2) v[c] = -v[c];
    out.push_back(normalize_vector(std::move(v)));
  }
  return out;
}

/// True when u and v span the same line over K(z): u_i v_j = u_j v_i.
inline bool same_line(const std::vector<KPoly>& u, const std::vector<KPoly>& v) {
  if (u.size() != v.size()) return false;
  bool u_zero = true, v_zero = true;
  for (size_t i = 0; i < u.size(); ++i) {
    u_zero = u_zero && u[i].is_zero();
    v_zero = v_zero && v[i].is_zero();
  }
  if (u_zero || v_zero) return u_zero && v_zero;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      if (!(u[i] * v[j] == u[j] * v[i])) return false;
  return true;
}

/// c-hat = q^*(c - 1) - 1 (mod p), so that q c-hat + q + 1 = c (mod p).
inline int64_t hat_c(int64_t p, int64_t q, int64_t c) {
  require(p >= 2, "hat_c: p must be >= 2");
  require(std::gcd(q, p) == 1, "hat_c: q must be prime to p", "NotCoprime");
  const int64_t qs = mod_inverse(mod_floor(q, p), p);
  return mod_floor(qs * mod_floor(c - 1, p) - 1, p);
}

struct FullRankCertificate {
  int64_t p = 2, q = 1;
  std::vector<int64_t> rows;     // Delta: the k's
  std::vector<int64_t> colours;  // Gamma: the c's
  std::vector<int64_t> columns;  // c-hat for each colour
  KMatrix matrix;                // G_+(p, q, c-hat, k) = G_p(q k, c)
  KNum determinant;
  bool nonzero = false;
  bool structure_ok = false;
  std::string structure;
};

namespace detail {

inline bool is_twice_odd_prime(int64_t p) {
  return p % 2 == 0 && (p / 2) % 2 == 1 && is_prime(p / 2);
}

inline bool check_prime_structure(const FullRankCertificate& cert) {
  const int64_t p = cert.p, q = cert.q;
  const size_t n = cert.rows.size();
  for (size_t j = 0; j < n; ++j)
    if (!(cert.matrix[0][j] == KNum(j == 0 ? p : 0))) return false;
  if (p == 2) return cert.matrix[1][1] == KNum(2);
  const KNum g10 = gauss_sum(p, 1, 0);
  const int64_t four_inv = mod_floor((p + 1) / 2 * ((p + 1) / 2), p);
  const int64_t lambda_exp = mod_floor(-mod_inverse(q, p) * four_inv, p);
  for (size_t i = 1; i < n; ++i) {
    const auto k = static_cast<int64_t>(i);
    const KNum chi(jacobi_symbol(mod_floor(q * cert.rows[i], p), p));
    for (size_t j = 0; j < n; ++j) {
      const int64_t c = cert.colours[j];
      const KNum expect = chi * g10 * KNum::root_of_unity(p, mod_floor(lambda_exp * c * c % p * k, p));
      if (!(cert.matrix[i][j] == expect)) return false;
    }
  }
  return true;
}

inline bool check_twice_prime_structure(const FullRankCertificate& cert) {
  const int64_t p = cert.p;
  const size_t n = cert.rows.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if ((cert.rows[i] * cert.q - cert.colours[j]) % 2 != 0 && !cert.matrix[i][j].is_zero())
        return false;
  for (size_t j = 0; j + 1 < n; ++j)
    if (!cert.matrix[n - 1][j].is_zero()) return false;
  return cert.matrix[n - 1][n - 1] == KNum(p);
}

}  // namespace detail

/// Row and column selections giving a nonsingular square Gauss-sum matrix
/// for p prime or twice an odd prime.
inline FullRankCertificate fullrank_submatrix(const LensSpace& L) {
  const int64_t p = L.p, q = L.q;
  FullRankCertificate cert;
  cert.p = p;
  cert.q = q;
  const int64_t h = L.half();
  if (is_prime(p)) {
    cert.rows.push_back(0);
    for (int64_t k = 1; k <= h; ++k) cert.rows.push_back(mod_inverse(k, p));
    for (int64_t c = 0; c <= h; ++c) cert.colours.push_back(c);
    cert.structure = p == 2 ? "blocks [2] [2]" : "[p 0; 0 V] with V Vandermonde in lambda^{c^2}";
  } else if (detail::is_twice_odd_prime(p)) {
    const int64_t s = p / 2;
    cert.rows.push_back(0);
    for (int64_t j = 1; j <= (s - 1) / 2; ++j) cert.rows.push_back(2 * mod_inverse(j, s));
    for (int64_t j = 1; j <= s - 2; j += 2) cert.rows.push_back(mod_inverse(j, p));
    cert.rows.push_back(s);
    for (int64_t c = 0; c <= s - 1; c += 2) cert.colours.push_back(c);
    for (int64_t c = 1; c <= s; c += 2) cert.colours.push_back(c);
    cert.structure = "[A 0; 0 B], last row (0 ... 0 2s)";
  } else {
    throw ComputationError("Unsupported",
                           "fullrank_submatrix needs p prime or twice an odd prime, got " +
                               std::to_string(p));
  }
  const size_t n = cert.rows.size();
  for (int64_t c : cert.colours) cert.columns.push_back(hat_c(p, q, c));
  cert.matrix.assign(n, std::vector<KNum>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      cert.matrix[i][j] = g_pm(p, q, cert.columns[j], cert.rows[i], PlusMinus::Plus);
  cert.determinant = determinant(cert.matrix);
  cert.nonzero = !cert.determinant.is_zero();
  cert.structure_ok = is_prime(p) ? detail::check_prime_structure(cert)
                                  : detail::check_twice_prime_structure(cert);
  return cert;
}

/// Solution of sum_c (-1)^{c+1} body_{c,k} x_c = F_k for all k, where
/// F_k is f_link's output (the f_{J,k} polynomial without i/sqrt(2p)).
struct RecoveredSkein {
  int64_t p = 2;
  std::vector<KPoly> numerators;
  KPoly denominator;  // 1 when the solution is polynomial
  std::optional<SkeinElement> a_form;

  bool polynomial() const { return denominator == KPoly::constant(KNum(1)); }
  SkeinVectorZ z_form() const {
    require(polynomial(), "recovered solution is not polynomial", "NonPolynomial");
    return {p, numerators};
  }
};

namespace detail {

/// C(A) from a polynomial in z when every exponent is a multiple of p and
/// every coefficient is rational (A = -z^p).
inline std::optional<APoly> to_a_poly(const KPoly& x, int64_t p) {
  APoly out(Variable::A);
  for (const auto& [e, c] : x.terms()) {
    if (e % p != 0 || !c.is_rational()) return std::nullopt;
    const int64_t n = e / p;
    const Rational v = c.to_rational();
    out.add_term(n, n % 2 == 0 ? v : Rational(-v));
  }
  return out;
}

}  // namespace detail

inline RecoveredSkein recover_skein(const LensSpace& L, const std::vector<KPoly>& fpolys) {
  require(fpolys.size() == static_cast<size_t>(L.p), "recover_skein: need one polynomial per k",
          "LengthMismatch");
  const auto cols = static_cast<size_t>(L.half() + 1);
  LaurentMatrix m = build_signed_f_matrix(L);
  if (exact_rank(m) != cols)
    throw ComputationError("RankDeficient", "f-matrix of L(" + std::to_string(L.p) + "," +
                                                std::to_string(L.q) + ") is rank deficient");
  for (size_t k = 0; k < m.size(); ++k) {
    KPoly f = fpolys[k];
    f.set_variable(Variable::z);
    m[k].push_back(-f);
  }
  const KernelResult res = exact_kernel(m);
  if (res.basis.empty())
    throw ComputationError("Inconsistent", "values are not in the span of the f-polynomials");
  std::vector<KPoly> v = normalize_vector(res.basis.front());
  const KPoly den = v.back();
  if (den.is_zero()) throw ComputationError("InternalError", "degenerate kernel vector");
  v.pop_back();

  RecoveredSkein out;
  out.p = L.p;
  out.denominator = KPoly::constant(KNum(1));
  std::vector<KPoly> quotients;
  bool exact = true;
  for (const auto& c : v) {
    auto qt = laurent_exact_divide(c, den);
    if (!qt) {
      exact = false;
      break;
    }
    quotients.push_back(std::move(*qt));
  }
  if (exact) {
    out.numerators = std::move(quotients);
  } else {
    out.numerators = std::move(v);
    out.denominator = den;
  }
  for (auto& c : out.numerators) c.set_variable(Variable::z);
  if (out.polynomial()) {
    std::vector<APoly> coeffs;
    for (const auto& c : out.numerators) {
      auto a = detail::to_a_poly(c, L.p);
      if (!a) break;
      coeffs.push_back(std::move(*a));
    }
    if (coeffs.size() == cols) out.a_form = SkeinElement(L.p, std::move(coeffs));
  }
  return out;
}

/// Whether some nonzero K(z)-multiple of v has every component in
/// Z[z^p, z^-p] (the image of Lambda under A = -z^p).
///
/// After removing the gcd of the components, such a multiple is a
/// polynomial multiple of v; invariance under z -> xi_p z and under the
/// Galois action on coefficients forces v itself to be a monomial times a
/// K-scalar times a vector over Q[z^p, z^-p]. That reduces to two checks:
/// all exponents agree mod p, and all coefficient ratios are rational.
inline bool lambda_membership(const std::vector<KPoly>& v, int64_t p) {
  require(p >= 2, "lambda_membership: p must be >= 2");
  KPoly g(Variable::z);
  for (const auto& c : v)
    if (!c.is_zero()) g = g.is_zero() ? strip_monomial(c) : laurent_gcd(g, c);
  if (g.is_zero()) return true;
  std::optional<int64_t> residue;
  std::optional<KNum> unit_inv;
  for (const auto& c : v) {
    if (c.is_zero()) continue;
    auto qt = laurent_exact_divide(c, g);
    if (!qt) throw ComputationError("InternalError", "gcd does not divide a component");
    for (const auto& [e, coeff] : qt->terms()) {
      const int64_t r = mod_floor(e, p);
      if (!residue) residue = r;
      if (*residue != r) return false;
      if (!unit_inv) unit_inv = coeff.inverse();
      if (!(coeff * *unit_inv).is_rational()) return false;
    }
  }
  return true;
}

/// Exponent window [lo, hi] that holds f_{J,k} for J with A-degrees in
/// [-deg_a, deg_a].
inline std::pair<int64_t, int64_t> default_window(const LensSpace& L, int64_t deg_a) {
  int64_t lo = 0, hi = 0;
  for (int64_t c = 0; c <= L.half(); ++c) {
    const int64_t mid = L.q * (c * c + 2 * c);
    const int64_t a = mid - 2 * (c + 1), b = mid + 2 * (c + 1);
    lo = c == 0 ? a : std::min(lo, a);
    hi = c == 0 ? b : std::max(hi, b);
  }
  return {L.twelve_p_s + lo - L.p * deg_a, L.twelve_p_s + hi + L.p * deg_a};
}

template <class Real>
struct Interpolation {
  int64_t lo = 0, hi = -1;
  std::vector<Complex<Real>> coeffs;  // coefficient of z^{lo + i}
  Real residual{0};                   // ||A x - b|| / max(1, ||b||)
};

/// Fits the Laurent polynomial on [lo, hi] whose values at xi_{4pr} are
/// sqrt(r) w_r for the samples (r, w_r). Least squares by Householder QR;
/// the default residual tolerance is epsilon^(3/4) of Real.
template <class Real>
Interpolation<Real> interpolate_f(const std::vector<std::pair<int64_t, Complex<Real>>>& samples,
                                  int64_t p, int64_t k, int64_t lo, int64_t hi,
                                  std::optional<Real> tolerance = std::nullopt) {
  using std::abs;
  using std::pow;
  using std::sqrt;
  require(p >= 2, "interpolate_f: p must be >= 2");
  require(hi >= lo, "interpolate_f: empty exponent window");
  Interpolation<Real> out;
  out.lo = lo;
  out.hi = hi;
  const auto n = static_cast<size_t>(hi - lo + 1);
  out.coeffs.assign(n, Complex<Real>());
  if (samples.empty()) return out;
  for (const auto& [r, v] : samples) {
    require(r >= 2, "interpolate_f: levels must be >= 2");
    require(mod_floor(r - k, p) == 0, "interpolate_f: every r must be congruent to k mod p");
  }
  for (size_t i = 0; i < samples.size(); ++i)
    for (size_t j = i + 1; j < samples.size(); ++j)
      require(samples[i].first != samples[j].first, "interpolate_f: repeated level");
  const size_t m = samples.size();
  if (m < n)
    throw ComputationError("UnderDetermined", "interpolate_f: " + std::to_string(m) +
                                                  " samples for " + std::to_string(n) + " unknowns");

  std::vector<std::vector<Complex<Real>>> a(m, std::vector<Complex<Real>>(n));
  std::vector<Complex<Real>> b(m);
  Real bnorm(0);
  for (size_t i = 0; i < m; ++i) {
    const int64_t r = samples[i].first;
    for (size_t j = 0; j < n; ++j) a[i][j] = unit_root<Real>(lo + static_cast<int64_t>(j), 4 * p * r);
    b[i] = samples[i].second * sqrt(Real(r));
    bnorm += norm(b[i]);
  }
  bnorm = sqrt(bnorm);

  Real rmax(0);
  for (size_t j = 0; j < n; ++j) {
    Real xnorm(0);
    for (size_t i = j; i < m; ++i) xnorm += norm(a[i][j]);
    xnorm = sqrt(xnorm);
    if (xnorm == 0) throw ComputationError("BadConditioning", "interpolate_f: singular system");
    const Real a0 = abs(a[j][j]);
    const Complex<Real> phase = a0 == 0 ? Complex<Real>(Real(1)) : a[j][j] / a0;
    const Complex<Real> alpha = -(phase * xnorm);
    std::vector<Complex<Real>> v(m - j);
    for (size_t i = j; i < m; ++i) v[i - j] = a[i][j];
    v[0] -= alpha;
    Real vnorm(0);
    for (const auto& x : v) vnorm += norm(x);
    if (vnorm != 0) {
      auto reflect = [&](auto get) {
        Complex<Real> dot;
        for (size_t i = 0; i < v.size(); ++i) dot += conj(v[i]) * get(i + j);
        dot = dot * (Real(2) / vnorm);
        for (size_t i = 0; i < v.size(); ++i) get(i + j) -= v[i] * dot;
      };
      for (size_t c = j; c < n; ++c) reflect([&](size_t i) -> Complex<Real>& { return a[i][c]; });
      reflect([&](size_t i) -> Complex<Real>& { return b[i]; });
    }
    rmax = std::max(rmax, abs(a[j][j]));
  }
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (size_t j = 0; j < n; ++j)
    if (abs(a[j][j]) <= rmax * eps * Real(static_cast<double>(n)))
      throw ComputationError("BadConditioning", "interpolate_f: numerically singular system");
  for (size_t j = n; j-- > 0;) {
    Complex<Real> s = b[j];
    for (size_t c = j + 1; c < n; ++c) s -= a[j][c] * out.coeffs[c];
    out.coeffs[j] = s / a[j][j];
  }
  Real res(0);
  for (size_t i = n; i < m; ++i) res += norm(b[i]);
  out.residual = sqrt(res) / std::max(Real(1), bnorm);
  // The nodes crowd towards z = 1, so a short window can still fit to
  // ~1e-18; only a residual near working precision counts as a match.
  const Real tol = tolerance ? *tolerance : Real(pow(eps, Real(0.75)));
  if (out.residual > tol)
    throw ComputationError("BadConditioning", "interpolate_f: residual above tolerance");
  return out;
}

}  // namespace lenswrt
