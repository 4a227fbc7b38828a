// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <vector>

#include "hpefie/linalg_exact.hpp"
#include "hpefie/poly2.hpp"

namespace hpefie {

// Largest polynomial degree supported by the exact-arithmetic paths.
inline constexpr int kMaxSymbolicDegree = 6;

// Reference triangle: vertices (0,0), (1,0), (0,1). Local edge i is opposite
// vertex i and is traversed (1,2), (2,0), (0,1) along the cell boundary.
std::array<Rational, 2> ref_vertex(int i);
// Start point and direction of local edge i in traversal order.
std::array<Rational, 2> ref_edge_start(int i);
std::array<Rational, 2> ref_edge_dir(int i);
// Outward normal scaled by the edge length, so that
// int_E v.n ds = int_0^1 v(start + s*dir) . scaled_normal ds exactly.
std::array<Rational, 2> ref_edge_scaled_normal(int i);

// Barycentric coordinate polynomials lambda_0 = 1-x-y, lambda_1 = x, lambda_2 = y.
Poly2<Rational> barycentric(int i);

Rational l2_inner(const Poly2<Rational>& a, const Poly2<Rational>& b);
Rational l2_inner(const VecPoly2<Rational>& a, const VecPoly2<Rational>& b);

// Coefficients (degree 0..deg) of v . scaled_normal along local edge i,
// in the traversal parameter s in [0,1].
std::vector<Rational> edge_flux_trace(const VecPoly2<Rational>& v, int local_edge);

// Coordinates of a vector polynomial field in the flat monomial coefficient
// space of vector polynomials of degree <= deg (x block then y block).
std::vector<Rational> field_coords(const VecPoly2<Rational>& v, int deg);

// Raviart-Thomas space RT_p = (P_p)^2 + x*(homogeneous P_p) on the reference
// triangle, dim (p+1)(p+3), split into an edge-flux family (3(p+1) functions,
// normal traces spanning P_p on each edge) and an interior family (p(p+1)
// functions with vanishing normal trace), classified by exact normal-trace
// elimination.
struct RTBasis {
  int p = 0;
  std::vector<VecPoly2<Rational>> edge_family;      // grouped by edge, then trace degree
  std::vector<VecPoly2<Rational>> interior_family;
  std::vector<VecPoly2<Rational>> spanning;         // raw spanning set of RT_p
  std::vector<Poly2<Rational>> divergences;         // of edge_family ++ interior_family

  int dim() const { return int(edge_family.size() + interior_family.size()); }
  const VecPoly2<Rational>& shape(int i) const {
    return i < int(edge_family.size()) ? edge_family[std::size_t(i)]
                                       : interior_family[std::size_t(i) - edge_family.size()];
  }
};

RTBasis build_rt_basis(int p);

// Lowest-order shapes W_i = x - v_i with unit outward flux across edge i and
// vanishing normal trace on the other two edges.
VecPoly2<Rational> rt0_shape(int local_edge);

// Exact membership of a field in RT_p.
bool in_rt_space(const VecPoly2<Rational>& v, int p);

// Edge space for an edge of degree p_E: the surface curls of the hat-function
// products psi_1^a psi_2^b with a+b = p_E+1 and a,b >= 1, restricted to one
// adjacent cell. start/end are the local vertex indices realizing the global
// edge direction; bubbles carry a Bernstein binomial scaling.
struct EdgeSpaceBasis {
  int p_edge = 0;
  int local_edge = 0;
  int start = 0, end = 0;
  std::vector<Poly2<Rational>> bubbles;          // alpha = 1..p_edge
  std::vector<VecPoly2<Rational>> generators;    // ref_curl(bubbles)
};

EdgeSpaceBasis build_edge_space(int p_edge, int local_edge, bool start_is_first);

// Scalar potential basis on the reference cell: vertex hats, per-edge bubble
// products matching the edge-space generators, and interior bubbles up to
// degree q_K+1 (lambda_0*lambda_1*lambda_2 times monomials).
struct ScalarBasis {
  int q_cell = 0;
  std::array<int, 3> q_edge{0, 0, 0};
  std::vector<Poly2<Rational>> hats;                          // 3
  std::array<std::vector<Poly2<Rational>>, 3> edge_bubbles;   // per local edge
  std::vector<Poly2<Rational>> interior_bubbles;
};

ScalarBasis build_scalar_basis(int q_cell, const std::array<int, 3>& q_edge,
                               const std::array<bool, 3>& start_is_first);

// Exact per-degree reference data shared by assembly and interpolation:
// L2-orthogonalized interior RT basis, orthogonal scalar basis of P_p, the
// divergence coordinates of the interior basis, interior scalar bubbles with
// their curls, and the H1 stiffness of the bubbles.
struct RefCellData {
  int p = 0;
  std::vector<VecPoly2<Rational>> interior;   // L2-orthogonal
  std::vector<Rational> interior_norm2;
  std::vector<Poly2<Rational>> qbasis;        // orthogonal, first entry constant 1
  std::vector<Rational> qnorm2;
  // div(interior[i]) expanded in qbasis: divq[i][j]
  std::vector<std::vector<Rational>> divq;
  std::vector<Poly2<Rational>> bubbles;       // interior scalar bubbles, degree <= p+1
  std::vector<VecPoly2<Rational>> bubble_curls;
  // bubble_curls[i] expanded in the interior basis
  std::vector<std::vector<Rational>> bubble_curl_coords;
  // H1 (stiffness) Gram of the bubbles
  std::vector<std::vector<Rational>> bubble_stiffness;
};

const RefCellData& ref_cell_data(int p);

}  // namespace hpefie
