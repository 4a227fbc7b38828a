// SPDX-License-Identifier: Apache-2.0
#include "hpefie/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hpefie {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error("mesh: " + msg); }

}  // namespace

int SurfaceMesh::num_boundary_edges() const {
  int n = 0;
  for (const auto& e : edges) n += e.boundary ? 1 : 0;
  return n;
}

std::array<int, 2> SurfaceMesh::local_edge_vertices(int local_edge) {
  // Edge i is opposite vertex i; traversal order follows the cell boundary.
  switch (local_edge) {
    case 0: return {1, 2};
    case 1: return {2, 0};
    default: return {0, 1};
  }
}

AffineChart SurfaceMesh::chart(int cell) const {
  const auto& t = triangles.at(std::size_t(cell));
  const Vec3 p0 = vertices[std::size_t(t[0])];
  AffineChart c;
  c.A.col(0) = vertices[std::size_t(t[1])] - p0;
  c.A.col(1) = vertices[std::size_t(t[2])] - p0;
  c.t = p0;
  c.G = c.A.transpose() * c.A;
  const double det = c.G.determinant();
  if (!(det > 0.0)) fail("degenerate triangle " + std::to_string(cell));
  c.J = std::sqrt(det);
  c.Ginv = c.G.inverse();
  c.normal = c.A.col(0).cross(c.A.col(1)) / c.J;
  return c;
}

double SurfaceMesh::cell_area(int cell) const {
  const auto& t = triangles[std::size_t(cell)];
  const Vec3 a = vertices[std::size_t(t[1])] - vertices[std::size_t(t[0])];
  const Vec3 b = vertices[std::size_t(t[2])] - vertices[std::size_t(t[0])];
  return 0.5 * a.cross(b).norm();
}

Vec3 SurfaceMesh::edge_point(int edge, double s) const {
  const auto& e = edges[std::size_t(edge)];
  return (1.0 - s) * vertices[std::size_t(e.v0)] + s * vertices[std::size_t(e.v1)];
}

double SurfaceMesh::edge_length(int edge) const {
  const auto& e = edges[std::size_t(edge)];
  return (vertices[std::size_t(e.v1)] - vertices[std::size_t(e.v0)]).norm();
}

Vec3 SurfaceMesh::edge_outward_normal(int cell, int local_edge) const {
  const auto& t = triangles[std::size_t(cell)];
  const auto lv = local_edge_vertices(local_edge);
  const Vec3 p = vertices[std::size_t(t[std::size_t(lv[0])])];
  const Vec3 q = vertices[std::size_t(t[std::size_t(lv[1])])];
  const Vec3 tangent = (q - p).normalized();
  return tangent.cross(chart(cell).normal);
}

SurfaceMesh build_mesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles,
                       SurfaceKind kind) {
  SurfaceMesh m;
  m.kind = kind;
  m.vertices = std::move(vertices);
  m.triangles = std::move(triangles);

  const int nv = m.num_vertices();
  for (const auto& t : m.triangles) {
    for (int v : t)
      if (v < 0 || v >= nv) fail("vertex index out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) fail("repeated vertex in triangle");
  }
  for (int v = 0; v < nv; ++v)
    for (int w = v + 1; w < nv; ++w)
      if ((m.vertices[std::size_t(v)] - m.vertices[std::size_t(w)]).norm() == 0.0)
        fail("duplicated vertex coordinates");

  for (int k = 0; k < m.num_cells(); ++k) {
    if (!(m.cell_area(k) > 0.0)) fail("degenerate triangle " + std::to_string(k));
  }

  // Deterministic edge table, lexicographic by sorted vertex pair.
  std::map<std::pair<int, int>, int> index;
  for (const auto& t : m.triangles)
    for (int i = 0; i < 3; ++i) {
      const auto lv = SurfaceMesh::local_edge_vertices(i);
      int a = t[std::size_t(lv[0])], b = t[std::size_t(lv[1])];
      if (a > b) std::swap(a, b);
      index.emplace(std::make_pair(a, b), -1);
    }
  int id = 0;
  for (auto& [key, val] : index) {
    val = id++;
    MeshEdge e;
    e.v0 = key.first;
    e.v1 = key.second;
    m.edges.push_back(e);
  }

  m.cell_edges.assign(std::size_t(m.num_cells()), {-1, -1, -1});
  m.cell_edge_sign.assign(std::size_t(m.num_cells()), {0, 0, 0});
  for (int k = 0; k < m.num_cells(); ++k) {
    const auto& t = m.triangles[std::size_t(k)];
    for (int i = 0; i < 3; ++i) {
      const auto lv = SurfaceMesh::local_edge_vertices(i);
      const int a = t[std::size_t(lv[0])], b = t[std::size_t(lv[1])];
      const int e = index.at({std::min(a, b), std::max(a, b)});
      m.cell_edges[std::size_t(k)][std::size_t(i)] = e;
      const int sign = (a < b) ? +1 : -1;
      m.cell_edge_sign[std::size_t(k)][std::size_t(i)] = sign;
      auto& edge = m.edges[std::size_t(e)];
      if (edge.cell[0] == -1) {
        edge.cell[0] = k;
        edge.sign[0] = sign;
      } else if (edge.cell[1] == -1) {
        edge.cell[1] = k;
        edge.sign[1] = sign;
      } else {
        fail("edge with more than two adjacent triangles");
      }
    }
  }

  int boundary = 0;
  for (auto& e : m.edges) {
    e.boundary = (e.cell[1] == -1);
    boundary += e.boundary ? 1 : 0;
    if (!e.boundary && e.sign[0] == e.sign[1]) fail("non-orientable: edge traversed twice in the same direction");
  }
  if (kind == SurfaceKind::Closed && boundary > 0)
    fail("kind mismatch: closed surface requested but boundary edges present");
  if (kind == SurfaceKind::Screen && boundary == 0)
    fail("kind mismatch: screen requested but surface is closed");

  return m;
}

SurfaceMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "hpbem-mesh" || version != 1) fail("bad header in " + path);
  std::string kind_str;
  in >> kind_str;
  SurfaceKind kind;
  if (kind_str == "closed")
    kind = SurfaceKind::Closed;
  else if (kind_str == "screen")
    kind = SurfaceKind::Screen;
  else
    fail("unknown surface kind '" + kind_str + "'");
  int nv = 0, nt = 0;
  in >> nv >> nt;
  if (!in || nv <= 0 || nt <= 0) fail("bad counts in " + path);
  std::vector<Vec3> verts;
  verts.resize(std::size_t(nv));
  for (auto& v : verts) in >> v.x() >> v.y() >> v.z();
  std::vector<std::array<int, 3>> tris;
  tris.resize(std::size_t(nt));
  for (auto& t : tris) in >> t[0] >> t[1] >> t[2];
  if (!in) fail("truncated file " + path);

  auto mesh = build_mesh(std::move(verts), std::move(tris), kind);

  // Conformity: no vertex may sit in the interior of another cell's edge.
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    const Vec3 p = mesh.vertices[std::size_t(v)];
    for (const auto& e : mesh.edges) {
      if (e.v0 == v || e.v1 == v) continue;
      const Vec3 a = mesh.vertices[std::size_t(e.v0)];
      const Vec3 b = mesh.vertices[std::size_t(e.v1)];
      const Vec3 d = b - a;
      const double len2 = d.squaredNorm();
      const double s = (p - a).dot(d) / len2;
      if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
      const double dist = (p - (a + s * d)).norm();
      if (dist < 1e-10 * std::sqrt(len2)) fail("non-conforming mesh: hanging vertex");
    }
  }
  return mesh;
}

SurfaceMesh load_mesh(const std::string& path, SurfaceKind expected) {
  auto m = load_mesh(path);
  if (m.kind != expected) fail("kind mismatch between file and request");
  return m;
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  out.precision(17);
  out << "hpbem-mesh 1\n" << (mesh.kind == SurfaceKind::Closed ? "closed" : "screen") << "\n";
  out << mesh.num_vertices() << " " << mesh.num_cells() << "\n";
  for (const auto& v : mesh.vertices) out << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const auto& t : mesh.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

DegreeMap derive_edge_degrees(const SurfaceMesh& mesh, std::vector<int> cell_degrees) {
  if (int(cell_degrees.size()) != mesh.num_cells()) fail("degree list length mismatch");
  for (int p : cell_degrees)
    if (p < 0) fail("negative polynomial degree");
  DegreeMap dm;
  dm.cell_degree = std::move(cell_degrees);
  dm.edge_degree.assign(std::size_t(mesh.num_edges()), 0);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& edge = mesh.edges[std::size_t(e)];
    int p = dm.cell_degree[std::size_t(edge.cell[0])];
    if (edge.cell[1] >= 0) p = std::max(p, dm.cell_degree[std::size_t(edge.cell[1])]);
    dm.edge_degree[std::size_t(e)] = p;
  }
  return dm;
}

ShapeRegularityReport shape_regularity_report(const SurfaceMesh& mesh) {
  ShapeRegularityReport r;
  r.rho.resize(std::size_t(mesh.num_cells()));
  r.h.resize(std::size_t(mesh.num_cells()));
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const auto& t = mesh.triangles[std::size_t(k)];
    const Vec3 p0 = mesh.vertices[std::size_t(t[0])];
    const Vec3 p1 = mesh.vertices[std::size_t(t[1])];
    const Vec3 p2 = mesh.vertices[std::size_t(t[2])];
    const double a = (p1 - p2).norm(), b = (p2 - p0).norm(), c = (p0 - p1).norm();
    const double area = mesh.cell_area(k);
    const double s = 0.5 * (a + b + c);
    const double circum = a * b * c / (4.0 * area);
    const double inr = area / s;
    r.rho[std::size_t(k)] = circum / inr;
    r.h[std::size_t(k)] = std::max({a, b, c});
    r.rho_max = std::max(r.rho_max, r.rho[std::size_t(k)]);
    r.h_max = std::max(r.h_max, r.h[std::size_t(k)]);
  }
  return r;
}

RefinedMesh refine_uniform(const SurfaceMesh& mesh) {
  RefinedMesh out;
  std::vector<Vec3> verts = mesh.vertices;
  // One new vertex per edge.
  std::vector<int> mid(std::size_t(mesh.num_edges()));
  for (int e = 0; e < mesh.num_edges(); ++e) {
    mid[std::size_t(e)] = int(verts.size());
    verts.push_back(mesh.edge_point(e, 0.5));
  }
  std::vector<std::array<int, 3>> tris;
  tris.reserve(std::size_t(4 * mesh.num_cells()));
  out.parent.reserve(std::size_t(4 * mesh.num_cells()));
  out.ref_A.reserve(std::size_t(4 * mesh.num_cells()));
  out.ref_b.reserve(std::size_t(4 * mesh.num_cells()));

  const Eigen::Matrix2d half = 0.5 * Eigen::Matrix2d::Identity();
  for (int k = 0; k < mesh.num_cells(); ++k) {
    const auto& t = mesh.triangles[std::size_t(k)];
    const int m01 = mid[std::size_t(mesh.cell_edges[std::size_t(k)][2])];  // edge (v0,v1)
    const int m12 = mid[std::size_t(mesh.cell_edges[std::size_t(k)][0])];  // edge (v1,v2)
    const int m20 = mid[std::size_t(mesh.cell_edges[std::size_t(k)][1])];  // edge (v2,v0)
    auto push = [&](std::array<int, 3> tri, const Eigen::Matrix2d& A, const Vec2& b) {
      tris.push_back(tri);
      out.parent.push_back(k);
      out.ref_A.push_back(A);
      out.ref_b.push_back(b);
    };
    push({t[0], m01, m20}, half, Vec2(0.0, 0.0));
    push({m01, t[1], m12}, half, Vec2(0.5, 0.0));
    push({m20, m12, t[2]}, half, Vec2(0.0, 0.5));
    // Central child (m01, m12, m20): parent coords of its corners are
    // (1/2,0), (1/2,1/2), (0,1/2).
    Eigen::Matrix2d Ac;
    Ac << 0.0, -0.5, 0.5, 0.5;
    push({m01, m12, m20}, Ac, Vec2(0.5, 0.0));
  }
  out.mesh = build_mesh(std::move(verts), std::move(tris), mesh.kind);
  return out;
}

}  // namespace hpefie
