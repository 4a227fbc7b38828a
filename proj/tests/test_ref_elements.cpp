// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpefie/ref_elements.hpp"

using namespace hpefie;

namespace {

// Exact rank of the divergence family of a set of fields, in P_deg coordinates.
std::size_t divergence_rank(const std::vector<VecPoly2<Rational>>& fns, int deg) {
  RationalMatrix M(Poly2<Rational>::size_of(deg), fns.size());
  for (std::size_t c = 0; c < fns.size(); ++c) {
    const auto d = fns[c].divergence();
    for (int dd = 0; dd <= d.degree(); ++dd)
      for (int j = 0; j <= dd; ++j) {
        if (dd > deg) {
          REQUIRE(d.coeff(dd - j, j) == Rational(0));
          continue;
        }
        M(Poly2<Rational>::index(dd - j, j), c) = d.coeff(dd - j, j);
      }
  }
  return M.rank();
}

RationalMatrix span_matrix(const std::vector<VecPoly2<Rational>>& fns, int deg) {
  RationalMatrix S(2 * Poly2<Rational>::size_of(deg), fns.size());
  for (std::size_t c = 0; c < fns.size(); ++c) {
    const auto col = field_coords(fns[c], deg);
    for (std::size_t r = 0; r < col.size(); ++r) S(r, c) = col[r];
  }
  return S;
}

}  // namespace

TEST_CASE("RT dimensions and family sizes for p = 0..6") {
  for (int p = 0; p <= 6; ++p) {
    const auto rt = build_rt_basis(p);
    CHECK(rt.dim() == (p + 1) * (p + 3));
    CHECK(int(rt.edge_family.size()) == 3 * (p + 1));
    CHECK(int(rt.interior_family.size()) == p * (p + 1));
    // all shape functions independent
    CHECK(span_matrix([&] {
            std::vector<VecPoly2<Rational>> all;
            for (int i = 0; i < rt.dim(); ++i) all.push_back(rt.shape(i));
            return all;
          }(), p + 1).rank() == std::size_t(rt.dim()));
  }
}

TEST_CASE("interior family has vanishing normal traces") {
  for (int p = 1; p <= 4; ++p) {
    const auto rt = build_rt_basis(p);
    for (const auto& f : rt.interior_family)
      for (int e = 0; e < 3; ++e)
        for (const auto& c : edge_flux_trace(f, e)) CHECK(c == Rational(0));
  }
}

TEST_CASE("divergence family spans P_p exactly") {
  for (int p = 0; p <= 6; ++p) {
    const auto rt = build_rt_basis(p);
    std::vector<VecPoly2<Rational>> all;
    for (int i = 0; i < rt.dim(); ++i) all.push_back(rt.shape(i));
    CHECK(divergence_rank(all, p) == std::size_t((p + 1) * (p + 2) / 2));
  }
}

TEST_CASE("RT0 canonical shapes") {
  for (int i = 0; i < 3; ++i) {
    const auto w = rt0_shape(i);
    CHECK(w.divergence().coeff(0, 0) == Rational(2));
    for (int e = 0; e < 3; ++e) {
      const auto t = edge_flux_trace(w, e);
      if (e == i) {
        // constant flux density, total flux 1
        CHECK(t[0] == Rational(1));
        for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] == Rational(0));
      } else {
        for (const auto& c : t) CHECK(c == Rational(0));
      }
    }
  }
}

TEST_CASE("edge space generators: count, divergence-free, membership, support") {
  // paper index set: p_E = 3 has (alpha,beta) in {(1,3),(2,2),(3,1)}
  const auto e3 = build_edge_space(3, 0, true);
  CHECK(e3.generators.size() == 3);
  // p_E = 0 gives the empty set
  CHECK(build_edge_space(0, 1, true).generators.empty());

  for (int pe = 1; pe <= 6; ++pe)
    for (int le = 0; le < 3; ++le) {
      const auto es = build_edge_space(pe, le, true);
      CHECK(int(es.generators.size()) == pe);
      for (const auto& g : es.generators) {
        CHECK(g.divergence().is_zero());
        CHECK(in_rt_space(g, pe));
        if (pe >= 1) CHECK(!in_rt_space(g, pe - 1));
        // normal trace vanishes on the two other edges
        for (int e = 0; e < 3; ++e) {
          if (e == le) continue;
          for (const auto& c : edge_flux_trace(g, e)) CHECK(c == Rational(0));
        }
      }
      // traces on the own edge span the zero-mean subspace of P_pe
      RationalMatrix T(std::size_t(pe) + 1, es.generators.size());
      for (std::size_t c = 0; c < es.generators.size(); ++c) {
        const auto t = edge_flux_trace(es.generators[c], le);
        Rational mean(0);
        for (std::size_t k = 0; k < t.size(); ++k) {
          T(k, c) = t[k];
          mean += t[k] / Rational(int(k) + 1);
        }
        CHECK(mean == Rational(0));
      }
      CHECK(T.rank() == std::size_t(pe));
    }
}

TEST_CASE("orientation-reversed edge space spans the same space") {
  const auto a = build_edge_space(2, 0, true);
  const auto b = build_edge_space(2, 0, false);
  const auto S = span_matrix(a.generators, 3);
  for (const auto& g : b.generators) CHECK(in_span(S, field_coords(g, 3)));
}

TEST_CASE("maximum-rule local space: eq:10/eq:16/eq:17 identities") {
  // cell degree 1, one incident edge raised to degree 3
  const int p_cell = 1;
  const std::array<int, 3> p_edge{3, 1, 1};
  std::vector<VecPoly2<Rational>> span;
  for (int e = 0; e < 3; ++e) {
    span.push_back(rt0_shape(e));
    for (const auto& g : build_edge_space(p_edge[std::size_t(e)], e, true).generators)
      span.push_back(g);
  }
  const auto rt1 = build_rt_basis(p_cell);
  for (const auto& f : rt1.interior_family) span.push_back(f);

  const int deg = 4;
  const auto S = span_matrix(span, deg);
  // dimension: 3 + sum p_E + p(p+1) and the blocks are independent
  CHECK(S.rank() == span.size());
  CHECK(span.size() == std::size_t(3 + 3 + 1 + 1 + 1 * 2));

  // RT_{p_K} subset X_N(K): every RT_1 shape is in the span
  for (int i = 0; i < rt1.dim(); ++i) CHECK(in_span(S, field_coords(rt1.shape(i), deg)));
  // the span is strictly larger than RT_{p_K} (eq:16)
  bool all_in_rt1 = true;
  for (const auto& f : span)
    if (!in_rt_space(f, p_cell)) all_in_rt1 = false;
  CHECK(!all_in_rt1);

  // normal trace space on each edge is exactly P_{p_E}
  for (int e = 0; e < 3; ++e) {
    const int pe = p_edge[std::size_t(e)];
    RationalMatrix T(std::size_t(pe + 1), span.size());
    for (std::size_t c = 0; c < span.size(); ++c) {
      const auto t = edge_flux_trace(span[c], e);
      for (std::size_t k = 0; k < t.size(); ++k) {
        REQUIRE(int(k) <= pe);
        T(k, c) = t[k];
      }
    }
    CHECK(T.rank() == std::size_t(pe + 1));
  }

  // divergence of the local span equals P_{p_K} despite the raised edge degree
  CHECK(divergence_rank(span, p_cell) == std::size_t((p_cell + 1) * (p_cell + 2) / 2));
  for (const auto& f : span) {
    const auto d = f.divergence();
    for (int dd = p_cell + 1; dd <= d.degree(); ++dd)
      for (int j = 0; j <= dd; ++j) CHECK(d.coeff(dd - j, j) == Rational(0));
  }
}

TEST_CASE("scalar basis: dimensions and curl relations") {
  // q_K = q_E = 0: hats only
  const auto s0 = build_scalar_basis(0, {0, 0, 0}, {true, true, true});
  CHECK(s0.hats.size() == 3);
  for (int e = 0; e < 3; ++e) CHECK(s0.edge_bubbles[std::size_t(e)].empty());
  CHECK(s0.interior_bubbles.empty());

  // q = 1: one bubble per edge (degree 2), no interior bubble
  const auto s1 = build_scalar_basis(1, {1, 1, 1}, {true, true, true});
  for (int e = 0; e < 3; ++e) CHECK(s1.edge_bubbles[std::size_t(e)].size() == 1);
  CHECK(s1.interior_bubbles.empty());

  // curls of all members are divergence-free; edge-bubble curls are the
  // edge-space generators
  for (int e = 0; e < 3; ++e) {
    const auto es = build_edge_space(1, e, true);
    const auto diff = ref_curl(s1.edge_bubbles[std::size_t(e)][0]) - es.generators[0];
    CHECK(diff.is_zero());
  }
  for (const auto& h : s1.hats) CHECK(ref_curl(h).divergence().is_zero());
}

TEST_CASE("eq:14: curl of interior bubbles equals divergence-free interior span") {
  for (int p = 2; p <= 5; ++p) {
    const auto& data = ref_cell_data(p);
    CHECK(data.bubbles.size() == std::size_t(p * (p - 1) / 2));
    // divergence-free interior subspace has the same dimension
    RationalMatrix D(Poly2<Rational>::size_of(p), data.interior.size());
    for (std::size_t c = 0; c < data.interior.size(); ++c) {
      const auto d = data.interior[c].divergence();
      for (int dd = 0; dd <= d.degree(); ++dd)
        for (int j = 0; j <= dd; ++j) D(Poly2<Rational>::index(dd - j, j), c) = d.coeff(dd - j, j);
    }
    const auto kernel = nullspace(D);
    CHECK(kernel.size() == data.bubbles.size());

    // each bubble curl reproduces exactly from its stored interior coordinates
    for (std::size_t i = 0; i < data.bubbles.size(); ++i) {
      VecPoly2<Rational> acc(Poly2<Rational>(0), Poly2<Rational>(0));
      for (std::size_t k = 0; k < data.interior.size(); ++k) {
        VecPoly2<Rational> t = data.interior[k];
        t.x *= data.bubble_curl_coords[i][k];
        t.y *= data.bubble_curl_coords[i][k];
        acc += t;
      }
      CHECK((acc - data.bubble_curls[i]).is_zero());
    }
  }
}

TEST_CASE("reference cell data: orthogonality and divergence coordinates") {
  const auto& d = ref_cell_data(3);
  for (std::size_t i = 0; i < d.interior.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      CHECK(l2_inner(d.interior[i], d.interior[j]) == Rational(0));
  for (std::size_t i = 0; i < d.qbasis.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) CHECK(l2_inner(d.qbasis[i], d.qbasis[j]) == Rational(0));
  // divq reproduces div(interior[i]) exactly
  for (std::size_t i = 0; i < d.interior.size(); ++i) {
    Poly2<Rational> acc(0);
    for (std::size_t j = 0; j < d.qbasis.size(); ++j) acc += d.divq[i][j] * d.qbasis[j];
    CHECK((acc - d.interior[i].divergence()).is_zero());
  }
}
