// SPDX-License-Identifier: Apache-2.0
#include "hpefie/poincare.hpp"

#include <stdexcept>

namespace hpefie {

void SmoothingWeight::validate() const {
  if (radius <= 0) throw std::runtime_error("smoothing weight: radius must be positive");
  if (power < 1) throw std::runtime_error("smoothing weight: power must be >= 1");
  // distance to edge x = 0 is center[0]; to y = 0 is center[1];
  // to x + y = 1 is (1 - cx - cy)/sqrt(2).
  if (!(center[0] > radius) || !(center[1] > radius))
    throw std::runtime_error("smoothing weight: ball leaves the reference triangle");
  const Rational slack = 1 - center[0] - center[1];
  if (!(slack > 0) || !(slack * slack > 2 * radius * radius))
    throw std::runtime_error("smoothing weight: ball crosses the hypotenuse");
}

Rational SmoothingWeight::moment(int k, int l) const {
  // With a = center + R b, |b| <= 1:
  //   M = c_m R^2 sum_{u<=k, v<=l} C(k,u) C(l,v) cx^{k-u} cy^{l-v} R^{u+v} I_uv,
  //   I_uv = int_{|b|<=1} (1-|b|^2)^m b1^u b2^v db
  //        = pi * m! ((u+v)/2)! / (m+(u+v)/2+1)! * (u-1)!!(v-1)!!/(u+v)!!
  // for u, v even (zero otherwise), and c_m = (m+1)/(pi R^2); the pi cancels.
  const int m = power;
  Rational acc(0);
  Rational rp(1);  // R^{u+v} accumulated inside the loop below
  for (int u = 0; u <= k; ++u)
    for (int v = 0; v <= l; ++v) {
      if (u % 2 || v % 2) continue;
      const int h = (u + v) / 2;
      const Rational radial(BigInt(factorial(m) * factorial(h)), BigInt(factorial(m + h + 1)));
      const Rational angular(double_factorial(u - 1) * double_factorial(v - 1),
                             double_factorial(u + v));
      Rational term = Rational(binomial(k, u) * binomial(l, v)) * radial * angular;
      for (int i = 0; i < k - u; ++i) term *= center[0];
      for (int i = 0; i < l - v; ++i) term *= center[1];
      rp = 1;
      for (int i = 0; i < u + v; ++i) rp *= radius;
      acc += term * rp;
    }
  return Rational(m + 1) * acc;
}

namespace {

// u(a + t(x-a)) expanded jointly in (x1,x2,a1,a2), bucketed by the power of t.
// bucket[d] collects the coefficient polynomial of t^d.
std::vector<Poly4<Rational>> ray_expansion(const Poly2<Rational>& u) {
  Poly4<Rational> v1, v2;  // x - a components
  v1.add_term({1, 0, 0, 0}, 1);
  v1.add_term({0, 0, 1, 0}, -1);
  v2.add_term({0, 1, 0, 0}, 1);
  v2.add_term({0, 0, 0, 1}, -1);

  const int deg = u.degree();
  std::vector<std::vector<Poly4<Rational>>> pv1(std::size_t(deg + 1)), pv2(std::size_t(deg + 1));
  pv1[0].resize(1);
  pv1[0][0].add_term({0, 0, 0, 0}, 1);
  pv2[0] = pv1[0];
  for (int i = 1; i <= deg; ++i) {
    pv1[std::size_t(i)] = {pv1[std::size_t(i - 1)][0] * v1};
    pv2[std::size_t(i)] = {pv2[std::size_t(i - 1)][0] * v2};
  }

  std::vector<Poly4<Rational>> bucket(std::size_t(deg + 1));
  for (int d = 0; d <= deg; ++d)
    for (int j = 0; j <= d; ++j) {
      const int mi = d - j, nj = j;
      const Rational& cv = u.coeff(mi, nj);
      if (cv == 0) continue;
      // (a1 + t v1)^mi (a2 + t v2)^nj
      for (int i = 0; i <= mi; ++i)
        for (int jj = 0; jj <= nj; ++jj) {
          Poly4<Rational> term = pv1[std::size_t(i)][0] * pv2[std::size_t(jj)][0];
          Poly4<Rational> amono;
          amono.add_term({0, 0, mi - i, nj - jj}, cv * Rational(binomial(mi, i) * binomial(nj, jj)));
          term = term * amono;
          bucket[std::size_t(i + jj)] += term;
        }
    }
  return bucket;
}

// The lifting as a pair of Poly4 in (x, a):
// P_a u = sum_d (1/(d+2)) * bucket[d] * (x - a).
std::array<Poly4<Rational>, 2> lift_xa(const Poly2<Rational>& u) {
  Poly4<Rational> v1, v2;
  v1.add_term({1, 0, 0, 0}, 1);
  v1.add_term({0, 0, 1, 0}, -1);
  v2.add_term({0, 1, 0, 0}, 1);
  v2.add_term({0, 0, 0, 1}, -1);
  auto bucket = ray_expansion(u);
  std::array<Poly4<Rational>, 2> out;
  for (std::size_t dd = 0; dd < bucket.size(); ++dd) {
    Poly4<Rational> b = bucket[dd];
    b *= Rational(1, BigInt(dd) + 2);
    out[0] += b * v1;
    out[1] += b * v2;
  }
  return out;
}

}  // namespace

VecPoly2<Rational> poincare_pointed(const Poly2<Rational>& u, const std::array<Rational, 2>& a) {
  const auto L = lift_xa(u);
  VecPoly2<Rational> r(L[0].substitute_a(a[0], a[1]), L[1].substitute_a(a[0], a[1]));
  r.x.trim();
  r.y.trim();
  return r;
}

VecPoly2<Rational> poincare_smoothed(const Poly2<Rational>& u, const SmoothingWeight& w) {
  w.validate();
  const auto L = lift_xa(u);
  const int bound = u.degree() + 1;
  auto mom = [&w](int k, int l) { return w.moment(k, l); };
  VecPoly2<Rational> r(L[0].integrate_a(mom, bound), L[1].integrate_a(mom, bound));
  r.x.trim();
  r.y.trim();
  return r;
}

LiftMembershipReport lift_membership_check(int p, const std::array<int, 3>& edge_degrees,
                                           const SmoothingWeight& w) {
  LiftMembershipReport rep;
  rep.p = p;

  const auto rt = build_rt_basis(p);
  for (int i = 0; i < rt.dim(); ++i) {
    const auto lifted = poincare_smoothed(rt.divergences[std::size_t(i)], w);
    ++rep.checked;
    if (!in_rt_space(lifted, p)) rep.rt_closed = false;
  }

  // Local span with the maximum rule: RT0 + per-edge generators + interior.
  std::vector<VecPoly2<Rational>> span;
  int deg_max = p + 1;
  for (int e = 0; e < 3; ++e) {
    span.push_back(rt0_shape(e));
    const auto es = build_edge_space(edge_degrees[std::size_t(e)], e, true);
    for (const auto& g : es.generators) span.push_back(g);
    deg_max = std::max(deg_max, edge_degrees[std::size_t(e)] + 1);
  }
  for (const auto& f : rt.interior_family) span.push_back(f);

  RationalMatrix S(2 * Poly2<Rational>::size_of(deg_max), span.size());
  for (std::size_t c = 0; c < span.size(); ++c) {
    const auto col = field_coords(span[c], deg_max);
    for (std::size_t r = 0; r < col.size(); ++r) S(r, c) = col[r];
  }
  for (const auto& f : span) {
    const auto div = f.divergence();
    if (div.is_zero()) continue;  // divergence-free members lift to zero
    const auto lifted = poincare_smoothed(div, w);
    ++rep.checked;
    if (!in_span(S, field_coords(lifted, deg_max))) rep.local_space_closed = false;
  }
  return rep;
}

}  // namespace hpefie
