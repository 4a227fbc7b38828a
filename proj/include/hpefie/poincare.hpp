// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hpefie/poly2.hpp"
#include "hpefie/ref_elements.hpp"

namespace hpefie {

// Radial polynomial bump psi(a) = c_m (1 - |a-center|^2/R^2)^m supported on the
// ball B(center, R) strictly inside the reference triangle, normalized so that
// int_B psi = 1 exactly. All moments int_B psi(a) a1^k a2^l da are rational.
struct SmoothingWeight {
  std::array<Rational, 2> center{Rational(1, 4), Rational(1, 4)};
  Rational radius = Rational(1, 8);
  int power = 2;  // bump exponent; polynomial degree of psi is 2*power

  // Verifies B subset int(K_hat): exact distance comparisons against the three
  // edge lines. Throws if violated.
  void validate() const;
  Rational moment(int k, int l) const;
};

// Pointed Poincare lifting (P_a u)(x) = int_0^1 t u(a + t(x-a)) (x-a) dt,
// a right inverse of the 2D divergence on polynomials: div(P_a u) = u.
VecPoly2<Rational> poincare_pointed(const Poly2<Rational>& u, const std::array<Rational, 2>& a);

// Smoothed lifting (P u)(x) = int_B psi(a) (P_a u)(x) da, expanded symbolically
// in (x, a) and integrated exactly against the moments of psi.
VecPoly2<Rational> poincare_smoothed(const Poly2<Rational>& u, const SmoothingWeight& w);

// Checks P(div RT_p) subset RT_p and P(div X_N(K_hat)) subset X_N(K_hat) for a
// local configuration (p_cell; edge degrees >= p_cell). Residuals are exact;
// `ok` is true only if every lifted divergence lies in the respective space.
struct LiftMembershipReport {
  int p = 0;
  int checked = 0;
  bool rt_closed = true;        // P(div RT_p) subset RT_p
  bool local_space_closed = true;  // with the maximum-rule local span
};

LiftMembershipReport lift_membership_check(int p, const std::array<int, 3>& edge_degrees,
                                           const SmoothingWeight& w);

}  // namespace hpefie
