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
 * @file gauss.hpp
 * @brief Generalized Gauss sums G_p(a,b) = sum_{n=0}^{p-1} xi_p^{a n^2 + b n}.
 *
 * Direct summation is always available. Closed forms cover
 *   - a = 0 (mod p): p or 0;
 *   - p prime, a != 0: (a/p) G_p(1,0) xi_p^{-b^2 (4a)^*} (p odd), and the
 *     two-term sum for p = 2;
 *   - p = 2s, s an odd prime: the CRT split G_{2s}(a,b) = G_2(a,b) G_s(va, vb)
 *     with v = (1-s)/2, which vanishes for a, b of opposite parity and reduces
 *     to the previous cases otherwise.
 * The quadratic Gauss sum G_p(1,0) stands in for epsilon(p) sqrt(p) so every
 * closed form stays inside Z[xi_p].
 */

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "lenswrt/cyclotomic.hpp"
#include "lenswrt/errors.hpp"
#include "lenswrt/number_theory.hpp"

namespace lenswrt {

struct GaussSumSpec {
  int64_t p;
  int64_t a;
  int64_t b;

  GaussSumSpec(int64_t modulus, int64_t a_, int64_t b_) : p(modulus) {
    require(modulus >= 2, "Gauss sum modulus must be >= 2");
    a = mod_floor(a_, modulus);
    b = mod_floor(b_, modulus);
  }
  friend bool operator==(const GaussSumSpec&, const GaussSumSpec&) = default;
};

inline CyclotomicNumber gauss_sum(const GaussSumSpec& spec) {
  const int64_t p = spec.p;
  std::vector<Integer> counts(static_cast<size_t>(p), 0);
  for (int64_t n = 0; n < p; ++n) {
    // a, b < p and n < p keep this well inside int64 for any practical p.
    const int64_t e = mod_floor(spec.a * mod_floor(n * n, p) + spec.b * n, p);
    counts[static_cast<size_t>(e)] += 1;
  }
  return CyclotomicNumber::from_powers(p, counts);
}

inline CyclotomicNumber gauss_sum(int64_t p, int64_t a, int64_t b) {
  return gauss_sum(GaussSumSpec(p, a, b));
}

enum class PlusMinus { Plus = 1, Minus = -1 };

/// G_±(p,q,c,k) = G_p(qk, qc + q ± 1).
inline CyclotomicNumber g_pm(int64_t p, int64_t q, int64_t c, int64_t k, PlusMinus sign) {
  require(p >= 2, "g_pm: p must be >= 2");
  require(std::gcd(q, p) == 1, "g_pm: q must be prime to p", "NotCoprime");
  const int64_t pm = static_cast<int64_t>(sign);
  const int64_t qm = mod_floor(q, p);
  return gauss_sum(p, qm * mod_floor(k, p), qm * mod_floor(c, p) + qm + pm);
}

/// True iff p = 0 mod 4 and c is odd; then every G_± vanishes.
inline bool vanishes_mod4(int64_t p, int64_t c) { return p % 4 == 0 && mod_floor(c, 2) == 1; }

namespace detail {

inline CyclotomicNumber closed_form_prime(int64_t p, int64_t a, int64_t b) {
  if (a == 0) return CyclotomicNumber(b == 0 ? p : 0);
  if (p == 2) return CyclotomicNumber((a + b) % 2 == 0 ? 2 : 0);
  // Complete the square: a n^2 + b n = a (n + b (2a)^*)^2 - b^2 (4a)^*.
  const int64_t inv4a = mod_inverse(mod_floor(4 * a, p), p);
  const int64_t shift = mod_floor(-mod_floor(b * b, p) * inv4a, p);
  const int sym = jacobi_symbol(a, p);
  return CyclotomicNumber(sym) * gauss_sum(p, 1, 0) * CyclotomicNumber::root_of_unity(p, shift);
}

}  // namespace detail

/// Closed-form evaluation for the supported cases listed in the file
/// comment; throws ComputationError("UnsupportedCase") otherwise.
inline CyclotomicNumber gauss_closed_form(const GaussSumSpec& spec) {
  const int64_t p = spec.p, a = spec.a, b = spec.b;
  if (a == 0) return CyclotomicNumber(b == 0 ? p : 0).lifted(p);
  if (is_prime(p)) return detail::closed_form_prime(p, a, b).lifted(p);
  const int64_t s = p / 2;
  if (p % 2 == 0 && s % 2 == 1 && is_prime(s)) {
    if ((a - b) % 2 != 0) return CyclotomicNumber(0).lifted(p);
    const int64_t v = (1 - s) / 2;
    const CyclotomicNumber inner =
        detail::closed_form_prime(s, mod_floor(v * a, s), mod_floor(v * b, s));
    return (CyclotomicNumber(2) * inner).lifted(p);
  }
  throw ComputationError("UnsupportedCase",
                         "no closed form for G_" + std::to_string(p) + "(" + std::to_string(a) +
                             "," + std::to_string(b) + ")");
}

inline bool gauss_closed_form_supported(const GaussSumSpec& spec) {
  if (spec.a == 0 || is_prime(spec.p)) return true;
  const int64_t s = spec.p / 2;
  return spec.p % 2 == 0 && s % 2 == 1 && is_prime(s);
}

}  // namespace lenswrt
