// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace hpefie {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

enum class SurfaceKind { Closed, Screen };

struct MeshEdge {
  int v0 = -1, v1 = -1;        // global direction v0 -> v1 with v0 < v1
  std::array<int, 2> cell{-1, -1};
  std::array<int, 2> sign{0, 0};  // +1 if the cell traverses the edge v0 -> v1
  bool boundary = false;
};

// Affine chart Phi(xhat) = A*xhat + t mapping the reference triangle
// (0,0),(1,0),(0,1) onto the stored vertices of a cell.
struct AffineChart {
  Eigen::Matrix<double, 3, 2> A;
  Vec3 t;
  Eigen::Matrix2d G;       // A^T A
  Eigen::Matrix2d Ginv;
  double J = 0.0;          // sqrt(det G) = 2*area
  Vec3 normal;             // (a1 x a2)/J

  Vec3 map(const Vec2& xh) const { return A * xh + t; }
  // Contravariant (Piola) push-forward of a reference vector value.
  Vec3 piola(const Vec2& vh) const { return A * vh / J; }
  // Inverse Piola pull-back of a physical tangential value.
  Vec2 piola_pull(const Vec3& v) const { return J * (Ginv * (A.transpose() * v)); }
};

struct SurfaceMesh {
  SurfaceKind kind = SurfaceKind::Closed;
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<MeshEdge> edges;
  // cell_edges[k][i] = global index of the edge opposite local vertex i.
  std::vector<std::array<int, 3>> cell_edges;
  // cell_edge_sign[k][i] = +1 if cell k traverses that edge from lower to
  // higher global vertex index.
  std::vector<std::array<int, 3>> cell_edge_sign;

  int num_cells() const { return int(triangles.size()); }
  int num_edges() const { return int(edges.size()); }
  int num_vertices() const { return int(vertices.size()); }
  int num_boundary_edges() const;

  AffineChart chart(int cell) const;
  double cell_area(int cell) const;
  // Local endpoints (as local vertex indices 0..2) of local edge i of a cell,
  // in the cell's traversal order.
  static std::array<int, 2> local_edge_vertices(int local_edge);
  // Physical point on edge e at normalized arc parameter s in [0,1]
  // (measured along the global direction v0 -> v1).
  Vec3 edge_point(int edge, double s) const;
  double edge_length(int edge) const;
  // In-plane outward normal of edge `local_edge` of `cell`.
  Vec3 edge_outward_normal(int cell, int local_edge) const;
};

struct ShapeRegularityReport {
  std::vector<double> rho;  // circumradius / inradius per cell
  std::vector<double> h;    // longest edge per cell
  double rho_max = 0.0;
  double h_max = 0.0;
};

struct DegreeMap {
  std::vector<int> cell_degree;
  std::vector<int> edge_degree;
};

// Builds and fully validates a mesh from raw data. Throws std::runtime_error
// on violated invariants (degenerate cell, >2 cells per edge, non-orientable,
// kind mismatch).
SurfaceMesh build_mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles,
                       SurfaceKind kind);

SurfaceMesh load_mesh(const std::string& path);
SurfaceMesh load_mesh(const std::string& path, SurfaceKind expected);
void save_mesh(const SurfaceMesh& mesh, const std::string& path);

DegreeMap derive_edge_degrees(const SurfaceMesh& mesh, std::vector<int> cell_degrees);

ShapeRegularityReport shape_regularity_report(const SurfaceMesh& mesh);

// Uniform midpoint refinement; each triangle splits into 4, surface kind is
// preserved. Children of cell k are cells 4k..4k+3 with reference maps
// child_ref -> parent_ref recorded for field transfer.
struct RefinedMesh {
  SurfaceMesh mesh;
  std::vector<int> parent;                    // per child cell
  std::vector<Eigen::Matrix2d> ref_A;         // xh_parent = ref_A*xh_child + ref_b
  std::vector<Vec2> ref_b;
};

RefinedMesh refine_uniform(const SurfaceMesh& mesh);

}  // namespace hpefie
