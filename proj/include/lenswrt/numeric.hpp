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

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>

#include "lenswrt/errors.hpp"

namespace lenswrt {

using Float128 = boost::multiprecision::cpp_bin_float_quad;
using Float256 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;
using Float512 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<512, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Minimal complex number over an arbitrary real type. std::complex is only
/// specified for the built-in floating types.
template <class Real>
struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }

  friend Complex operator+(Complex x, const Complex& y) { return x += y; }
  friend Complex operator-(Complex x, const Complex& y) { return x -= y; }
  friend Complex operator-(const Complex& x) { return {-x.re, -x.im}; }
  friend Complex operator*(const Complex& x, const Complex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend Complex operator*(const Complex& x, const Real& s) { return {x.re * s, x.im * s}; }
  friend Complex operator/(const Complex& x, const Real& s) { return {x.re / s, x.im / s}; }
  friend Complex operator/(const Complex& x, const Complex& y) {
    const Real n = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
  }
};

template <class Real>
Complex<Real> conj(const Complex<Real>& z) {
  return {z.re, -z.im};
}

template <class Real>
Real norm(const Complex<Real>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class Real>
Real abs(const Complex<Real>& z) {
  using std::sqrt;
  return sqrt(norm(z));
}

template <class Real>
Real pi_value() {
  using std::atan;
  static const Real value = 4 * atan(Real(1));
  return value;
}

/// Number of mantissa bits of Real.
template <class Real>
constexpr int mantissa_bits() {
  return std::numeric_limits<Real>::digits;
}

template <class Real>
Real to_real(const mpz_class& x) {
  if (x.fits_slong_p()) return Real(x.get_si());
  const std::string s = x.get_str();
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<Real>(std::strtold(s.c_str(), nullptr));
  } else {
    return Real(s);
  }
}

template <class Real>
Real to_real(const mpq_class& x) {
  return to_real<Real>(x.get_num()) / to_real<Real>(x.get_den());
}

/// e^{2 pi i num / den}, with the angle reduced exactly before the
/// transcendental evaluation.
template <class Real>
Complex<Real> unit_root(int64_t num, int64_t den) {
  using std::cos;
  using std::sin;
  int64_t r = num % den;
  if (r < 0) r += den;
  const Real angle = 2 * pi_value<Real>() * Real(r) / Real(den);
  return {cos(angle), sin(angle)};
}

/// Runs `fn` with a real type carrying at least `bits` mantissa bits.
/// Supported: <= 53 (double), <= 64 (long double), <= 113, <= 256, <= 512.
/// Every instantiation of `fn` must return the same type.
template <class Fn>
std::invoke_result_t<Fn, double> with_precision(int bits, Fn&& fn) {
  require(bits >= 53, "precision must be at least 53 bits");
  if (bits <= std::numeric_limits<double>::digits) return fn(double{});
  if (bits <= std::numeric_limits<long double>::digits) return fn(static_cast<long double>(0));
  if (bits <= 113) return fn(Float128{});
  if (bits <= 256) return fn(Float256{});
  require(bits <= 512, "precision above 512 bits is not supported");
  return fn(Float512{});
}

}  // namespace lenswrt
