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
 * @file selftest.hpp
 * @brief The twelve acceptance checks, shared by `lenswrt selftest` and the
 * acceptance test binary.
 */

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lenswrt/analysis.hpp"
#include "lenswrt/gauss.hpp"
#include "lenswrt/number_theory.hpp"
#include "lenswrt/numeric.hpp"
#include "lenswrt/skein.hpp"
#include "lenswrt/wrt.hpp"

namespace lenswrt {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace selftest {

inline CriterionResult start(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

inline std::vector<int64_t> valid_q(int64_t p) {
  std::vector<int64_t> out;
  for (int64_t q = 1; q < p; ++q)
    if (std::gcd(p, q) == 1) out.push_back(q);
  return out;
}

inline APoly random_apoly(std::mt19937_64& rng, int64_t lo, int64_t hi, int64_t bound) {
  APoly f(Variable::A);
  std::uniform_int_distribution<int64_t> coeff(-bound, bound);
  for (int64_t e = lo; e <= hi; ++e) f.add_term(e, Rational(static_cast<long>(coeff(rng))));
  return f;
}

inline SkeinElement random_skein(std::mt19937_64& rng, int64_t p, int64_t lo, int64_t hi) {
  std::vector<APoly> coeffs;
  for (int64_t c = 0; c <= p / 2; ++c) coeffs.push_back(random_apoly(rng, lo, hi, 5));
  return {p, std::move(coeffs)};
}

/// Kernel generators printed for L(9,1) and L(9,4), over mu_0 .. mu_4.
inline std::vector<KPoly> reference_kernel(int64_t q) {
  auto mono = [](int64_t coeff, int64_t e) { return KPoly::monomial(KNum(coeff), e); };
  const KPoly zero(Variable::z);
  if (q == 1)
    return {zero, mono(-1, 15) + mono(1, 27), mono(1, 12) + mono(-1, 24), mono(-1, 15), mono(1, 0)};
  return {mono(-1, 84) + mono(1, 108), zero, mono(1, 60) + mono(-1, 72), mono(-1, 30),
          mono(1, 0)};
}

inline CriterionResult gauss_base_case() {
  CriterionResult r = start(1, "G_2(1,1) = 2");
  const KNum g = gauss_sum(2, 1, 1);
  r.pass = g == KNum(2);
  r.detail = "G_2(1,1) = " + g.to_string();
  return r;
}

inline CriterionResult mod4_vanishing() {
  CriterionResult r = start(2, "p = 0 mod 4, c odd: f-polynomials and invariants vanish");
  size_t bodies = 0, evals = 0;
  long double worst = 0;
  for (int64_t p : {4, 8, 12})
    for (int64_t q : valid_q(p)) {
      const LensSpace L = LensSpace::make(p, q);
      for (int64_t c = 1; c <= p / 2; c += 2) {
        for (int64_t k = 0; k < p; ++k) {
          if (!f_poly(L, c, k).body.is_zero()) {
            r.detail = "nonzero body at (" + std::to_string(p) + "," + std::to_string(q) + "," +
                       std::to_string(c) + "," + std::to_string(k) + ")";
            return r;
          }
          ++bodies;
        }
        for (int64_t lev = 2; lev <= 40; ++lev, ++evals)
          worst = std::max(worst, abs(eval_meridian<long double>(L, c, lev)));
      }
    }
  r.pass = worst < 1e-10L;
  std::ostringstream os;
  os << bodies << " zero bodies, " << evals << " evaluations, max |w_r| = "
     << static_cast<double>(worst);
  r.detail = os.str();
  return r;
}

inline CriterionResult oracle_equivalence() {
  CriterionResult r = start(3, "f-polynomial evaluation matches the Gauss-sum oracle");
  long double worst = 0;
  size_t count = 0;
  for (int64_t p = 2; p <= 10; ++p)
    for (int64_t q : valid_q(p)) {
      const LensSpace L = LensSpace::make(p, q);
      for (int64_t c = 0; c <= p / 2; ++c)
        for (int64_t lev = 2; lev <= 40; ++lev, ++count)
          worst = std::max(worst, abs(eval_meridian<long double>(L, c, lev) -
                                      jeffrey_oracle<long double>(L, c, lev)));
    }
  r.pass = worst < 1e-9L;
  std::ostringstream os;
  os << count << " comparisons, max |diff| = " << static_cast<double>(worst);
  r.detail = os.str();
  return r;
}

inline CriterionResult conjugate_symmetry() {
  CriterionResult r = start(4, "f_{J,k} = -conj f_{J,p-k}(conj z) for random J");
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int64_t> pick_p(3, 10);
  size_t checks = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int64_t p = pick_p(rng);
    const auto qs = valid_q(p);
    const int64_t q = qs[rng() % qs.size()];
    const LensSpace L = LensSpace::make(p, q);
    const SkeinVectorZ J = to_z_form(random_skein(rng, p, -2, 2));
    for (int64_t k = 1; k < p; ++k, ++checks)
      if (!conjugate_relation_holds(L, J, k)) {
        r.detail = "fails at p=" + std::to_string(p) + " q=" + std::to_string(q) +
                   " k=" + std::to_string(k);
        return r;
      }
  }
  r.pass = true;
  r.detail = std::to_string(checks) + " exact identities";
  return r;
}

inline CriterionResult full_rank_orders() {
  CriterionResult r = start(5, "rank = 1 + [p/2] for p prime or twice an odd prime");
  size_t cases = 0;
  for (int64_t p : {2, 3, 5, 7, 11, 13, 6, 10, 14})
    for (int64_t q : valid_q(p)) {
      const size_t rk = f_rank(LensSpace::make(p, q));
      ++cases;
      if (rk != static_cast<size_t>(p / 2 + 1)) {
        r.detail = "L(" + std::to_string(p) + "," + std::to_string(q) +
                   ") has rank " + std::to_string(rk);
        return r;
      }
    }
  r.pass = true;
  r.detail = std::to_string(cases) + " lens spaces";
  return r;
}

inline CriterionResult deficient_orders() {
  CriterionResult r = start(6, "rank < 1 + [p/2] and rank <= 1 + #_p otherwise");
  std::ostringstream os;
  for (int64_t p : {4, 8, 9, 12, 15, 16, 21, 25}) {
    const auto qs = valid_q(p);
    std::vector<int64_t> sample{qs.front(), qs[qs.size() / 2], qs.back()};
    std::sort(sample.begin(), sample.end());
    sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
    for (int64_t q : sample) {
      const size_t rk = f_rank(LensSpace::make(p, q));
      os << (os.tellp() > 0 ? " " : "") << "L(" << p << "," << q << ")=" << rk;
      if (rk >= static_cast<size_t>(p / 2 + 1) ||
          rk > static_cast<size_t>(1 + count_squares_mod(p))) {
        r.detail = os.str();
        return r;
      }
    }
  }
  r.pass = true;
  r.detail = os.str();
  return r;
}

inline CriterionResult rank_four() {
  CriterionResult r = start(7, "rank 4 for L(9,1) and L(9,4)");
  const size_t a = f_rank(LensSpace::make(9, 1));
  const size_t b = f_rank(LensSpace::make(9, 4));
  r.pass = a == 4 && b == 4;
  r.detail = "ranks " + std::to_string(a) + ", " + std::to_string(b);
  return r;
}

inline CriterionResult kernel_vectors() {
  CriterionResult r = start(8, "kernels of L(9,1), L(9,4) are the expected lines");
  std::ostringstream os;
  bool ok = true;
  for (int64_t q : {1, 4}) {
    const auto K = kernel(LensSpace::make(9, q));
    const bool match = K.size() == 1 && same_line(K.front(), reference_kernel(q));
    os << (q == 1 ? "" : "; ") << "L(9," << q << "): dim " << K.size()
       << (match ? " match" : " mismatch");
    ok = ok && match;
  }
  r.pass = ok;
  r.detail = os.str();
  return r;
}

inline CriterionResult lambda_obstruction() {
  CriterionResult r = start(9, "kernel generators have no multiple in the Lambda image");
  bool ok = !lambda_membership(reference_kernel(1), 9) && !lambda_membership(reference_kernel(4), 9);
  for (size_t c = 0; c < 5; ++c) {
    std::vector<KPoly> e(5, KPoly(Variable::z));
    e[c] = KPoly::constant(KNum(1));
    ok = ok && lambda_membership(e, 9);
  }
  r.pass = ok;
  r.detail = ok ? "both generators rejected, unit vectors accepted" : "membership test disagrees";
  return r;
}

inline CriterionResult recovery_round_trip() {
  CriterionResult r = start(10, "skein coefficients recovered from f_{J,k}");
  std::mt19937_64 rng(10);
  size_t cases = 0;
  for (int64_t p : {3, 5, 7, 6, 10})
    for (int64_t q : valid_q(p)) {
      const LensSpace L = LensSpace::make(p, q);
      const SkeinElement J = random_skein(rng, p, 0, 3);
      std::vector<KPoly> F;
      for (int64_t k = 0; k < p; ++k) F.push_back(f_link(L, J, k));
      const RecoveredSkein got = recover_skein(L, F);
      ++cases;
      if (!got.a_form || !(*got.a_form == J)) {
        r.detail = "mismatch at L(" + std::to_string(p) + "," + std::to_string(q) + ")";
        return r;
      }
    }
  r.pass = true;
  r.detail = std::to_string(cases) + " round trips";
  return r;
}

inline CriterionResult number_theory_oracles() {
  CriterionResult r = start(11, "Dedekind reciprocity and Phi identities for p <= 50");
  size_t cases = 0;
  for (int64_t p = 2; p <= 50; ++p)
    for (int64_t q : valid_q(p)) {
      const Rational lhs = dedekind_sum(q, p) + dedekind_sum(p, q);
      const Rational rhs =
          (Rational(p, q) + Rational(q, p) + Rational(1, p * q)) / 12 - Rational(1, 4);
      const SL2Word w = sl2_expand(p, q);
      const int64_t phi = rademacher_phi(p, q);
      const bool ok = lhs == rhs && w.product() == gluing_matrix(p, q) &&
                      Rational(w.trace() - 3 * w.signature()) == rademacher_phi_closed_form(p, q) &&
                      Rational(phi) == rademacher_phi_closed_form(p, q) && phi_identity_holds(p, q);
      ++cases;
      if (!ok) {
        r.detail = "fails at (" + std::to_string(p) + "," + std::to_string(q) + ")";
        return r;
      }
    }
  r.pass = true;
  r.detail = std::to_string(cases) + " coprime pairs";
  return r;
}

inline CriterionResult section4_constructions() {
  CriterionResult r = start(12, "nonsingular Gauss-sum submatrices and closed forms");
  size_t certs = 0, forms = 0;
  for (int64_t p : {2, 3, 5, 7, 11, 13, 6, 10, 14})
    for (int64_t q : valid_q(p)) {
      const FullRankCertificate c = fullrank_submatrix(LensSpace::make(p, q));
      ++certs;
      if (!c.nonzero || !c.structure_ok) {
        r.detail = "certificate fails at (" + std::to_string(p) + "," + std::to_string(q) + ")";
        return r;
      }
    }
  for (int64_t p = 2; p <= 62; ++p)
    for (int64_t a = 0; a < p; ++a)
      for (int64_t b = 0; b < p; ++b) {
        const GaussSumSpec s(p, a, b);
        if (!gauss_closed_form_supported(s)) continue;
        ++forms;
        if (!(gauss_closed_form(s) == gauss_sum(s))) {
          r.detail = "closed form differs at G_" + std::to_string(p) + "(" + std::to_string(a) +
                     "," + std::to_string(b) + ")";
          return r;
        }
      }
  r.pass = true;
  r.detail = std::to_string(certs) + " certificates, " + std::to_string(forms) + " closed forms";
  return r;
}

}  // namespace selftest

/// Runs every check in order; exceptions count as failures.
inline std::vector<CriterionResult> run_selftest(
    const std::function<void(const CriterionResult&)>& on_result = {}) {
  using Check = CriterionResult (*)();
  const std::vector<std::pair<int, Check>> checks = {
      {1, selftest::gauss_base_case},       {2, selftest::mod4_vanishing},
      {3, selftest::oracle_equivalence},    {4, selftest::conjugate_symmetry},
      {5, selftest::full_rank_orders},      {6, selftest::deficient_orders},
      {7, selftest::rank_four},             {8, selftest::kernel_vectors},
      {9, selftest::lambda_obstruction},    {10, selftest::recovery_round_trip},
      {11, selftest::number_theory_oracles}, {12, selftest::section4_constructions},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, check] : checks) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.id = id;
      r.title = "criterion " + std::to_string(id);
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << " (" << r.detail << ", "
     << r.seconds << " s)";
  return os.str();
}

}  // namespace lenswrt
