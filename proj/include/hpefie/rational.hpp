// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace hpefie {

// Exact rational scalar used by all symbolic verification paths.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt b = 1;
  for (int i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return b;
}

// (n-1)!! with the convention (-1)!! = 1.
inline BigInt double_factorial(int n) {
  BigInt f = 1;
  for (int i = n; i >= 2; i -= 2) f *= i;
  return f;
}

}  // namespace hpefie
