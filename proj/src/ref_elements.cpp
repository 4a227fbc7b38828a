// SPDX-License-Identifier: Apache-2.0
#include "hpefie/ref_elements.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace hpefie {

namespace {

const std::array<std::array<Rational, 2>, 3> kVerts = {{{Rational(0), Rational(0)},
                                                        {Rational(1), Rational(0)},
                                                        {Rational(0), Rational(1)}}};

}  // namespace

std::array<Rational, 2> ref_vertex(int i) { return kVerts[std::size_t(i)]; }

std::array<Rational, 2> ref_edge_start(int i) {
  const int a = (i + 1) % 3;
  return kVerts[std::size_t(a)];
}

std::array<Rational, 2> ref_edge_dir(int i) {
  const int a = (i + 1) % 3, b = (i + 2) % 3;
  return {kVerts[std::size_t(b)][0] - kVerts[std::size_t(a)][0],
          kVerts[std::size_t(b)][1] - kVerts[std::size_t(a)][1]};
}

std::array<Rational, 2> ref_edge_scaled_normal(int i) {
  const auto d = ref_edge_dir(i);
  return {d[1], -d[0]};
}

Poly2<Rational> barycentric(int i) {
  Poly2<Rational> p(1);
  switch (i) {
    case 0:
      p.at(0, 0) = 1;
      p.at(1, 0) = -1;
      p.at(0, 1) = -1;
      break;
    case 1:
      p.at(1, 0) = 1;
      break;
    default:
      p.at(0, 1) = 1;
  }
  return p;
}

Rational l2_inner(const Poly2<Rational>& a, const Poly2<Rational>& b) {
  return (a * b).integral_unit_triangle();
}

Rational l2_inner(const VecPoly2<Rational>& a, const VecPoly2<Rational>& b) {
  return (a.x * b.x).integral_unit_triangle() + (a.y * b.y).integral_unit_triangle();
}

namespace {

// 1D restriction of a bivariate polynomial to local edge i in traversal
// parameter s: coefficients of p(start + s*dir).
std::vector<Rational> edge_restrict(const Poly2<Rational>& p, int local_edge) {
  const auto a = ref_edge_start(local_edge);
  const auto d = ref_edge_dir(local_edge);
  const int deg = p.degree();
  // powers of the two affine 1D polynomials x(s), y(s)
  std::vector<std::vector<Rational>> px(std::size_t(deg + 1)), py(std::size_t(deg + 1));
  px[0] = {Rational(1)};
  py[0] = {Rational(1)};
  auto mul_affine = [](const std::vector<Rational>& q, const Rational& c0, const Rational& c1) {
    std::vector<Rational> r(q.size() + 1, Rational(0));
    for (std::size_t k = 0; k < q.size(); ++k) {
      r[k] += q[k] * c0;
      r[k + 1] += q[k] * c1;
    }
    return r;
  };
  for (int k = 1; k <= deg; ++k) {
    px[std::size_t(k)] = mul_affine(px[std::size_t(k - 1)], a[0], d[0]);
    py[std::size_t(k)] = mul_affine(py[std::size_t(k - 1)], a[1], d[1]);
  }
  std::vector<Rational> out(std::size_t(deg + 1), Rational(0));
  for (int dd = 0; dd <= deg; ++dd)
    for (int j = 0; j <= dd; ++j) {
      const Rational& cv = p.coeff(dd - j, j);
      if (cv == 0) continue;
      const auto& qx = px[std::size_t(dd - j)];
      const auto& qy = py[std::size_t(j)];
      for (std::size_t u = 0; u < qx.size(); ++u)
        for (std::size_t v = 0; v < qy.size(); ++v) out[u + v] += cv * qx[u] * qy[v];
    }
  return out;
}

}  // namespace

std::vector<Rational> edge_flux_trace(const VecPoly2<Rational>& v, int local_edge) {
  const auto n = ref_edge_scaled_normal(local_edge);
  Poly2<Rational> dotted = v.x * Poly2<Rational>::constant(n[0]);
  dotted += v.y * Poly2<Rational>::constant(n[1]);
  return edge_restrict(dotted, local_edge);
}

std::vector<Rational> field_coords(const VecPoly2<Rational>& v, int deg) {
  const std::size_t S = Poly2<Rational>::size_of(deg);
  std::vector<Rational> c(2 * S, Rational(0));
  auto put = [&](const Poly2<Rational>& p, std::size_t off) {
    for (int d = 0; d <= p.degree(); ++d)
      for (int j = 0; j <= d; ++j) {
        if (d > deg && p.coeff(d - j, j) != 0) throw std::runtime_error("field_coords: degree overflow");
        if (d <= deg) c[off + Poly2<Rational>::index(d - j, j)] = p.coeff(d - j, j);
      }
  };
  put(v.x, 0);
  put(v.y, S);
  return c;
}

namespace {

std::vector<VecPoly2<Rational>> rt_spanning_set(int p) {
  std::vector<VecPoly2<Rational>> fns;
  for (int d = 0; d <= p; ++d)
    for (int j = 0; j <= d; ++j) {
      const auto m = Poly2<Rational>::monomial(d - j, j);
      fns.emplace_back(m, Poly2<Rational>(0));
      fns.emplace_back(Poly2<Rational>(0), m);
    }
  const auto X = Poly2<Rational>::monomial(1, 0);
  const auto Y = Poly2<Rational>::monomial(0, 1);
  for (int i = 0; i <= p; ++i) {
    const auto h = Poly2<Rational>::monomial(p - i, i);
    fns.emplace_back(X * h, Y * h);
  }
  return fns;
}

// Rows: for each edge, trace coefficients 0..p; columns: spanning functions.
RationalMatrix trace_matrix(const std::vector<VecPoly2<Rational>>& fns, int p) {
  RationalMatrix M(std::size_t(3 * (p + 1)), fns.size());
  for (std::size_t c = 0; c < fns.size(); ++c)
    for (int e = 0; e < 3; ++e) {
      const auto t = edge_flux_trace(fns[c], e);
      for (std::size_t k = 0; k < t.size(); ++k) {
        if (int(k) > p) {
          if (t[k] != 0) throw std::runtime_error("RT trace degree exceeds p");
          continue;
        }
        M(std::size_t(e * (p + 1)) + k, c) = t[k];
      }
    }
  return M;
}

VecPoly2<Rational> combine(const std::vector<VecPoly2<Rational>>& fns,
                           const std::vector<Rational>& coeff) {
  VecPoly2<Rational> acc(Poly2<Rational>(0), Poly2<Rational>(0));
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (coeff[i] == 0) continue;
    VecPoly2<Rational> t = fns[i];
    t.x *= coeff[i];
    t.y *= coeff[i];
    acc += t;
  }
  acc.x.trim();
  acc.y.trim();
  return acc;
}

}  // namespace

RTBasis build_rt_basis(int p) {
  if (p < 0 || p > kMaxSymbolicDegree) throw std::runtime_error("build_rt_basis: degree out of range");
  RTBasis basis;
  basis.p = p;
  basis.spanning = rt_spanning_set(p);
  const auto M = trace_matrix(basis.spanning, p);

  // Edge family: preimages of the canonical traces s^m on a single edge.
  for (int e = 0; e < 3; ++e)
    for (int m = 0; m <= p; ++m) {
      std::vector<Rational> target(std::size_t(3 * (p + 1)), Rational(0));
      target[std::size_t(e * (p + 1) + m)] = 1;
      auto sol = solve_exact(M, target);
      if (!sol) throw std::runtime_error("RT trace map not surjective");
      basis.edge_family.push_back(combine(basis.spanning, *sol));
    }
  // Interior family: nullspace of the trace map.
  for (const auto& v : nullspace(M)) basis.interior_family.push_back(combine(basis.spanning, v));

  if (int(basis.edge_family.size()) != 3 * (p + 1) || int(basis.interior_family.size()) != p * (p + 1))
    throw std::runtime_error("RT family sizes wrong");
  for (int i = 0; i < basis.dim(); ++i) basis.divergences.push_back(basis.shape(i).divergence());
  return basis;
}

VecPoly2<Rational> rt0_shape(int local_edge) {
  const auto v = ref_vertex(local_edge);
  Poly2<Rational> px(1), py(1);
  px.at(1, 0) = 1;
  px.at(0, 0) = -v[0];
  py.at(0, 1) = 1;
  py.at(0, 0) = -v[1];
  return VecPoly2<Rational>(px, py);
}

bool in_rt_space(const VecPoly2<Rational>& v, int p) {
  const auto span = rt_spanning_set(p);
  const int deg = p + 1;
  for (const auto& comp : {v.x, v.y})
    for (int d = deg + 1; d <= comp.degree(); ++d)
      for (int j = 0; j <= d; ++j)
        if (comp.coeff(d - j, j) != 0) return false;
  RationalMatrix S(2 * Poly2<Rational>::size_of(deg), span.size());
  for (std::size_t c = 0; c < span.size(); ++c) {
    const auto col = field_coords(span[c], deg);
    for (std::size_t r = 0; r < col.size(); ++r) S(r, c) = col[r];
  }
  return in_span(S, field_coords(v, deg));
}

EdgeSpaceBasis build_edge_space(int p_edge, int local_edge, bool start_is_first) {
  if (p_edge < 0 || p_edge > kMaxSymbolicDegree)
    throw std::runtime_error("build_edge_space: degree out of range");
  EdgeSpaceBasis b;
  b.p_edge = p_edge;
  b.local_edge = local_edge;
  const auto lv = std::array<int, 2>{(local_edge + 1) % 3, (local_edge + 2) % 3};
  b.start = start_is_first ? lv[0] : lv[1];
  b.end = start_is_first ? lv[1] : lv[0];
  const auto ls = barycentric(b.start);
  const auto le = barycentric(b.end);
  for (int alpha = 1; alpha <= p_edge; ++alpha) {
    const int beta = p_edge + 1 - alpha;
    Poly2<Rational> phi = Poly2<Rational>::constant(Rational(binomial(p_edge + 1, alpha)));
    for (int i = 0; i < alpha; ++i) phi = phi * ls;
    for (int i = 0; i < beta; ++i) phi = phi * le;
    b.bubbles.push_back(phi);
    b.generators.push_back(ref_curl(phi));
  }
  return b;
}

ScalarBasis build_scalar_basis(int q_cell, const std::array<int, 3>& q_edge,
                               const std::array<bool, 3>& start_is_first) {
  ScalarBasis s;
  s.q_cell = q_cell;
  s.q_edge = q_edge;
  for (int i = 0; i < 3; ++i) s.hats.push_back(barycentric(i));
  for (int e = 0; e < 3; ++e)
    s.edge_bubbles[std::size_t(e)] =
        build_edge_space(q_edge[std::size_t(e)], e, start_is_first[std::size_t(e)]).bubbles;
  const auto vol = barycentric(0) * barycentric(1) * barycentric(2);
  for (int d = 0; d <= q_cell - 2; ++d)
    for (int j = 0; j <= d; ++j) s.interior_bubbles.push_back(vol * Poly2<Rational>::monomial(d - j, j));
  return s;
}

const RefCellData& ref_cell_data(int p) {
  static std::map<int, RefCellData> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;

  RefCellData d;
  d.p = p;

  // L2-orthogonalized interior RT family.
  const auto rt = build_rt_basis(p);
  for (const auto& f : rt.interior_family) {
    VecPoly2<Rational> g = f;
    for (std::size_t k = 0; k < d.interior.size(); ++k) {
      const Rational c = l2_inner(g, d.interior[k]) / d.interior_norm2[k];
      VecPoly2<Rational> t = d.interior[k];
      t.x *= c;
      t.y *= c;
      g -= t;
    }
    g.x.trim();
    g.y.trim();
    d.interior.push_back(g);
    d.interior_norm2.push_back(l2_inner(g, g));
  }

  // Orthogonal scalar basis of P_p, constant first.
  for (int dd = 0; dd <= p; ++dd)
    for (int j = 0; j <= dd; ++j) {
      Poly2<Rational> g = Poly2<Rational>::monomial(dd - j, j);
      for (std::size_t k = 0; k < d.qbasis.size(); ++k) {
        const Rational c = l2_inner(g, d.qbasis[k]) / d.qnorm2[k];
        g -= c * d.qbasis[k];
      }
      g.trim();
      d.qbasis.push_back(g);
      d.qnorm2.push_back(l2_inner(g, g));
    }

  for (const auto& f : d.interior) {
    const auto div = f.divergence();
    std::vector<Rational> row(d.qbasis.size());
    for (std::size_t j = 0; j < d.qbasis.size(); ++j) row[j] = l2_inner(div, d.qbasis[j]) / d.qnorm2[j];
    d.divq.push_back(std::move(row));
  }

  const auto vol = barycentric(0) * barycentric(1) * barycentric(2);
  for (int dd = 0; dd <= p - 2; ++dd)
    for (int j = 0; j <= dd; ++j) d.bubbles.push_back(vol * Poly2<Rational>::monomial(dd - j, j));
  for (const auto& b : d.bubbles) d.bubble_curls.push_back(ref_curl(b));
  for (const auto& c : d.bubble_curls) {
    std::vector<Rational> row(d.interior.size());
    for (std::size_t k = 0; k < d.interior.size(); ++k)
      row[k] = l2_inner(c, d.interior[k]) / d.interior_norm2[k];
    d.bubble_curl_coords.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < d.bubbles.size(); ++i) {
    std::vector<Rational> row(d.bubbles.size());
    for (std::size_t j = 0; j < d.bubbles.size(); ++j)
      row[j] = l2_inner(d.bubble_curls[i], d.bubble_curls[j]);
    d.bubble_stiffness.push_back(std::move(row));
  }

  return cache.emplace(p, std::move(d)).first->second;
}

}  // namespace hpefie
