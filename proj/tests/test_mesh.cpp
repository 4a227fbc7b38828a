// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hpefie/mesh.hpp"

using namespace hpefie;

namespace {

SurfaceMesh make_cube() {
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                         {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  // Two triangles per face, outward-oriented.
  std::vector<std::array<int, 3>> t = {
      {0, 2, 1}, {0, 3, 2},  // z = 0, normal -z
      {4, 5, 6}, {4, 6, 7},  // z = 1, normal +z
      {0, 1, 5}, {0, 5, 4},  // y = 0, normal -y
      {2, 3, 7}, {2, 7, 6},  // y = 1, normal +y
      {1, 2, 6}, {1, 6, 5},  // x = 1, normal +x
      {3, 0, 4}, {3, 4, 7},  // x = 0, normal -x
  };
  return build_mesh(v, t, SurfaceKind::Closed);
}

SurfaceMesh make_single_triangle() {
  return build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}, SurfaceKind::Screen);
}

// L-shaped screen: [0,2]x[0,1] plus [0,1]x[1,2], six right triangles.
SurfaceMesh make_l_screen() {
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0},
                         {1, 1, 0}, {2, 1, 0}, {0, 2, 0}, {1, 2, 0}};
  std::vector<std::array<int, 3>> t = {{0, 1, 4}, {0, 4, 3}, {1, 2, 5},
                                       {1, 5, 4}, {3, 4, 7}, {3, 7, 6}};
  return build_mesh(v, t, SurfaceKind::Screen);
}

}  // namespace

TEST_CASE("single flat triangle as screen") {
  const auto m = make_single_triangle();
  CHECK(m.num_cells() == 1);
  CHECK(m.num_edges() == 3);
  CHECK(m.num_boundary_edges() == 3);
}

TEST_CASE("unit cube topology") {
  const auto m = make_cube();
  CHECK(m.num_cells() == 12);
  CHECK(m.num_edges() == 18);
  CHECK(m.num_boundary_edges() == 0);
  // Euler: V - E + F = 2
  CHECK(m.num_vertices() - m.num_edges() + m.num_cells() == 2);
}

TEST_CASE("L-shaped screen boundary count matches hand enumeration") {
  const auto m = make_l_screen();
  CHECK(m.num_cells() == 6);
  // Hand count of the perimeter: (0,1),(1,2),(2,5),(5,4),(4,7),(7,6),(6,3),(3,0) = 8.
  CHECK(m.num_boundary_edges() == 8);
  CHECK(m.num_edges() == 13);
}

TEST_CASE("orientability and edge signs") {
  const auto m = make_cube();
  for (const auto& e : m.edges) {
    REQUIRE(!e.boundary);
    CHECK(e.sign[0] * e.sign[1] == -1);
  }
}

TEST_CASE("rejects non-orientable input") {
  // Second triangle traverses the shared edge (1,2) in the same direction.
  CHECK_THROWS(build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}},
                          {{0, 1, 2}, {3, 1, 2}}, SurfaceKind::Screen));
}

TEST_CASE("rejects degenerate and over-shared edges") {
  CHECK_THROWS(build_mesh({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, {{0, 1, 2}}, SurfaceKind::Screen));
  CHECK_THROWS(build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, -1, 0}},
                          {{0, 1, 2}, {0, 3, 1}, {0, 1, 4}}, SurfaceKind::Screen));
}

TEST_CASE("kind mismatch detection") {
  CHECK_THROWS(build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}, SurfaceKind::Closed));
}

TEST_CASE("chart of reference-like and scaled triangles") {
  const auto m = make_single_triangle();
  const auto c = m.chart(0);
  CHECK(c.A(0, 0) == doctest::Approx(1.0));
  CHECK(c.A(1, 1) == doctest::Approx(1.0));
  CHECK(c.J == doctest::Approx(1.0));

  const double h = 0.25;
  const auto ms = build_mesh({{0, 0, 0}, {h, 0, 0}, {0, h, 0}}, {{0, 1, 2}}, SurfaceKind::Screen);
  CHECK(ms.chart(0).J == doctest::Approx(h * h));
}

TEST_CASE("tilted 3-4-5 right triangle has J = 2*area = 12") {
  // Right triangle with legs 3 and 4 placed in a tilted plane.
  const Vec3 p0(0.2, -0.1, 0.4);
  Vec3 u(1, 2, 2);
  u.normalize();
  Vec3 w(2, -2, 1);
  w.normalize();
  const auto m = build_mesh({p0, p0 + 3.0 * u, p0 + 4.0 * w}, {{0, 1, 2}}, SurfaceKind::Screen);
  const auto c = m.chart(0);
  // area oracle via the cross product
  const double area = 0.5 * (3.0 * u).cross(4.0 * w).norm();
  CHECK(c.J == doctest::Approx(2.0 * area));
  CHECK(c.J == doctest::Approx(12.0));
}

TEST_CASE("shape regularity report") {
  // Equilateral triangle: circumradius/inradius = 2.
  const auto eq = build_mesh({{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}}, {{0, 1, 2}},
                             SurfaceKind::Screen);
  const auto r1 = shape_regularity_report(eq);
  CHECK(r1.rho[0] == doctest::Approx(2.0));

  const auto ref = make_single_triangle();
  CHECK(shape_regularity_report(ref).h[0] == doctest::Approx(std::sqrt(2.0)));

  // Cube of isoceles right triangles: one rho for every cell.
  const auto cube = make_cube();
  const auto rc = shape_regularity_report(cube);
  for (double rho : rc.rho) CHECK(rho == doctest::Approx(rc.rho[0]));
  // direct formula oracle for the unit right isoceles triangle:
  // a=1, b=1, c=sqrt(2), A=1/2: R = c/2 = sqrt(2)/2, r = A/s
  const double s = 0.5 * (2.0 + std::sqrt(2.0));
  const double oracle = (std::sqrt(2.0) / 2.0) / (0.5 / s);
  CHECK(rc.rho[0] == doctest::Approx(oracle));
}

TEST_CASE("maximum rule") {
  // Two triangles sharing an edge, degrees 2 and 4.
  const auto m = build_mesh({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}},
                            {{0, 1, 2}, {1, 3, 2}}, SurfaceKind::Screen);
  const auto dm = derive_edge_degrees(m, {2, 4});
  int shared = -1;
  for (int e = 0; e < m.num_edges(); ++e)
    if (!m.edges[std::size_t(e)].boundary) shared = e;
  REQUIRE(shared >= 0);
  CHECK(dm.edge_degree[std::size_t(shared)] == 4);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& edge = m.edges[std::size_t(e)];
    if (edge.boundary) CHECK(dm.edge_degree[std::size_t(e)] == dm.cell_degree[std::size_t(edge.cell[0])]);
  }

  // uniform degrees stay uniform
  const auto uni = derive_edge_degrees(m, {3, 3});
  for (int e = 0; e < m.num_edges(); ++e) CHECK(uni.edge_degree[std::size_t(e)] == 3);

  // monotonicity: raising any p_K never lowers any p_E
  const auto base = derive_edge_degrees(m, {1, 2});
  const auto raised = derive_edge_degrees(m, {4, 2});
  for (int e = 0; e < m.num_edges(); ++e)
    CHECK(raised.edge_degree[std::size_t(e)] >= base.edge_degree[std::size_t(e)]);
}

TEST_CASE("mesh file round trip and validation") {
  const auto cube = make_cube();
  const std::string path = "test_mesh_roundtrip.txt";
  save_mesh(cube, path);
  const auto loaded = load_mesh(path, SurfaceKind::Closed);
  CHECK(loaded.num_cells() == cube.num_cells());
  CHECK(loaded.num_edges() == cube.num_edges());
  CHECK_THROWS(load_mesh(path, SurfaceKind::Screen));
  std::remove(path.c_str());

  CHECK_THROWS(load_mesh("does_not_exist.txt"));

  // hanging vertex rejected
  {
    std::ofstream out("test_mesh_hanging.txt");
    out << "hpbem-mesh 1\nscreen\n5 3\n";
    out << "0 0 0\n2 0 0\n0 2 0\n1 0 0\n1 -1 0\n";
    out << "0 1 2\n0 3 4\n3 1 4\n";
  }
  CHECK_THROWS(load_mesh("test_mesh_hanging.txt"));
  std::remove("test_mesh_hanging.txt");
}

TEST_CASE("uniform refinement") {
  const auto cube = make_cube();
  const auto r = refine_uniform(cube);
  CHECK(r.mesh.num_cells() == 48);
  CHECK(r.mesh.num_edges() == 72);
  CHECK(r.mesh.kind == SurfaceKind::Closed);
  CHECK(r.mesh.num_vertices() - r.mesh.num_edges() + r.mesh.num_cells() == 2);

  // h halves, shape regularity preserved for the self-similar split
  const auto s0 = shape_regularity_report(cube);
  const auto s1 = shape_regularity_report(r.mesh);
  CHECK(s1.h_max == doctest::Approx(0.5 * s0.h_max));
  CHECK(s1.rho_max == doctest::Approx(s0.rho_max));

  // child reference maps land inside the parent cell
  for (int c = 0; c < r.mesh.num_cells(); ++c) {
    const Vec2 centroid(1.0 / 3, 1.0 / 3);
    const Vec2 pp = r.ref_A[std::size_t(c)] * centroid + r.ref_b[std::size_t(c)];
    const Vec3 via_parent = cube.chart(r.parent[std::size_t(c)]).map(pp);
    const Vec3 direct = r.mesh.chart(c).map(centroid);
    CHECK((via_parent - direct).norm() < 1e-14);
  }

  // screen boundary edge count doubles
  const auto l = make_l_screen();
  const auto lr = refine_uniform(l);
  CHECK(lr.mesh.num_boundary_edges() == 2 * l.num_boundary_edges());
  CHECK(lr.mesh.kind == SurfaceKind::Screen);
}
