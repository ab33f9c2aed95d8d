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
 * @file wrt.hpp
 * @brief f-polynomials of colored meridians in L(p,q) and WRT evaluation.
 *
 *   f_{p,q,c,k}(z) = (-1)^{c+1} i/sqrt(2p) z^{E + q(c^2+2c)}
 *                    (G_+ z^{2(c+1)} - G_- z^{-2(c+1)}),   E = 12 p s(q,p),
 *
 * and sqrt(r) w_r(L(p,q), mu_c) = f_{p,q,c,r mod p}(xi_{4pr}). The constant
 * i/sqrt(2p) is kept symbolic; bodies live in Q(xi_p)[z, z^-1].
 */

#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/gauss.hpp"
#include "lenswrt/laurent.hpp"
#include "lenswrt/number_theory.hpp"
#include "lenswrt/numeric.hpp"
#include "lenswrt/skein.hpp"

namespace lenswrt {

struct LensSpace {
  int64_t p = 2;
  int64_t q = 1;
  int64_t d = 1;  // q^*_p
  int64_t b = 0;  // (qd - 1)/p
  int64_t phi = 0;
  Rational dedekind;
  int64_t twelve_p_s = 0;  // 12 p s(q,p)

  static LensSpace make(int64_t p, int64_t q) {
    validate_lens(p, q);
    LensSpace L;
    L.p = p;
    L.q = q;
    const Mat2 U = gluing_matrix(p, q);
    L.d = U.d;
    L.b = U.b;
    L.phi = rademacher_phi(p, q);
    L.dedekind = dedekind_sum(q, p);
    const Rational e = 12 * Integer(p) * L.dedekind;
    if (e.get_den() != 1 || !e.get_num().fits_slong_p())
      throw ComputationError("NonIntegralExponent", "12 p s(q,p) is not an integer");
    L.twelve_p_s = e.get_num().get_si();
    if (q * L.d - L.b * p != 1) throw ComputationError("InvalidGluing", "qd - bp != 1");
    return L;
  }

  int64_t half() const { return p / 2; }
};

/// Full value: sign * (i / sqrt(2p)) * body(z).
struct FPolynomial {
  int sign = 1;
  ZPoly body{Variable::z};
  int64_t p = 2, q = 1, c = 0, k = 0;

  /// sign * body, i.e. the polynomial that multiplies i/sqrt(2p).
  ZPoly signed_body() const { return sign > 0 ? body : -body; }

  friend bool operator==(const FPolynomial&, const FPolynomial&) = default;
};

namespace detail {

inline FPolynomial compute_f_poly(const LensSpace& L, int64_t c, int64_t k) {
  FPolynomial f;
  f.p = L.p;
  f.q = L.q;
  f.c = c;
  f.k = k;
  f.sign = mod_floor(c + 1, 2) == 0 ? 1 : -1;
  const int64_t base = L.twelve_p_s + L.q * (c * c + 2 * c);
  const int64_t shift = 2 * (c + 1);
  f.body.add_term(base + shift, g_pm(L.p, L.q, c, k, PlusMinus::Plus));
  f.body.add_term(base - shift, -g_pm(L.p, L.q, c, k, PlusMinus::Minus));
  return f;
}

class FPolyCache {
 public:
  using Key = std::tuple<int64_t, int64_t, int64_t, int64_t>;

  FPolynomial get(const LensSpace& L, int64_t c, int64_t k) {
    const Key key{L.p, L.q, c, k};
    {
      std::shared_lock lock(mutex_);
      auto it = map_.find(key);
      if (it != map_.end()) {
        hits_.fetch_add(1, std::memory_order_relaxed);
        return it->second;
      }
    }
    FPolynomial f = compute_f_poly(L, c, k);
    std::unique_lock lock(mutex_);
    auto [it, inserted] = map_.try_emplace(key, std::move(f));
    (inserted ? misses_ : hits_).fetch_add(1, std::memory_order_relaxed);
    return it->second;
  }

  uint64_t hits() const { return hits_.load(); }
  uint64_t misses() const { return misses_.load(); }
  size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }
  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
    hits_ = 0;
    misses_ = 0;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<Key, FPolynomial> map_;
  std::atomic<uint64_t> hits_{0}, misses_{0};
};

}  // namespace detail

inline detail::FPolyCache& f_poly_cache() {
  static detail::FPolyCache cache;
  return cache;
}

/// f_{p,q,c,k}; k is reduced mod p.
inline FPolynomial f_poly(const LensSpace& L, int64_t c, int64_t k) {
  return f_poly_cache().get(L, c, mod_floor(k, L.p));
}

/// Evaluates sign * i/sqrt(2p) * body(z) at z = xi_{4pr}.
template <class Real>
Complex<Real> evaluate_scaled(const ZPoly& signed_body, int64_t p, int64_t r) {
  using std::sqrt;
  Complex<Real> acc;
  const int64_t N = 4 * p * r;
  for (const auto& [e, coeff] : signed_body.terms())
    acc += coeff.template embed<Real>() * unit_root<Real>(e, N);
  const Complex<Real> i_unit(Real(0), Real(1));
  return acc * i_unit / sqrt(Real(2 * p));
}

/// w_r(L(p,q), mu_c) from the f-polynomial with k = r mod p.
template <class Real>
Complex<Real> eval_meridian(const LensSpace& L, int64_t c, int64_t r) {
  using std::sqrt;
  require(r >= 2, "level r must be >= 2");
  const FPolynomial f = f_poly(L, c, r % L.p);
  return evaluate_scaled<Real>(f.signed_body(), L.p, r) / sqrt(Real(r));
}

/// sum_c (-1)^{c+1} body_c(z) C_c(z); the full f_{J,k} is i/sqrt(2p) times this.
inline ZPoly f_link(const LensSpace& L, const SkeinVectorZ& J, int64_t k) {
  require(J.p == L.p, "f_link: skein order does not match the lens space", "OrderMismatch");
  require(J.coeffs.size() == static_cast<size_t>(L.half() + 1),
          "f_link: expected [p/2]+1 coefficients", "LengthMismatch");
  ZPoly out(Variable::z);
  for (size_t c = 0; c < J.coeffs.size(); ++c) {
    if (J.coeffs[c].is_zero()) continue;
    ZPoly coeff = J.coeffs[c];
    coeff.set_variable(Variable::z);
    out += f_poly(L, static_cast<int64_t>(c), k).signed_body() * coeff;
  }
  return out;
}

inline ZPoly f_link(const LensSpace& L, const SkeinElement& J, int64_t k) {
  require(J.p() == L.p, "f_link: skein order does not match the lens space", "OrderMismatch");
  return f_link(L, to_z_form(J), k);
}

template <class Real, class Skein>
Complex<Real> eval_link(const LensSpace& L, const Skein& J, int64_t r) {
  using std::sqrt;
  require(r >= 2, "level r must be >= 2");
  return evaluate_scaled<Real>(f_link(L, J, r % L.p), L.p, r) / sqrt(Real(r));
}

/// Numeric Jeffrey-type sum for w_r(L(p,q), mu_c), converted from the
/// (-1)^{l-1} mu_{l-1} convention with l = c + 1.
template <class Real>
Complex<Real> jeffrey_oracle(const LensSpace& L, int64_t c, int64_t r) {
  using std::sqrt;
  require(r >= 2, "level r must be >= 2");
  const int64_t p = L.p, q = L.q;
  const int64_t N = 4 * r * p * q;
  const int64_t l = c + 1;
  Complex<Real> sum;
  for (int64_t n = 1; n <= p; ++n) {
    const int64_t gamma = l + 2 * r * n;
    for (int pm : {1, -1}) {
      const auto t = static_cast<__int128>(mod_floor(q * gamma + pm, N));
      const auto e = static_cast<int64_t>((t * t) % N);
      const Complex<Real> term = unit_root<Real>(e, N);
      sum += pm > 0 ? term : -term;
    }
  }
  const Complex<Real> minus_i(Real(0), Real(-1));
  Complex<Real> v = minus_i * unit_root<Real>(-L.phi, 4 * r) * unit_root<Real>(L.b, 4 * r * q) *
                    sum / sqrt(Real(2 * r * p));
  return mod_floor(c, 2) == 0 ? v : -v;
}

/// f_{J,k} = -conj(f_{J,p-k}(conj z)) as an identity of signed bodies:
/// body_k equals the coefficient-wise conjugate of body_{p-k}.
inline bool conjugate_relation_holds(const LensSpace& L, const SkeinVectorZ& J, int64_t k) {
  return f_link(L, J, k) == f_link(L, J, L.p - k).conjugate();
}

}  // namespace lenswrt
