// SPDX-License-Identifier: Apache-2.0
#include "hpefie/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <mutex>
#include <stdexcept>

namespace hpefie {

namespace {
std::mutex g_cache_mutex;
}

const std::vector<QuadNode1D>& gauss_legendre(int n) {
  static std::map<int, std::vector<QuadNode1D>> cache;
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n < 1) throw std::runtime_error("gauss_legendre: order must be >= 1");

  // Golub-Welsch on the Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<QuadNode1D> nodes;
  nodes.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    nodes[std::size_t(i)].x = 0.5 * (es.eigenvalues()(i) + 1.0);
    const double v0 = es.eigenvectors()(0, i);
    nodes[std::size_t(i)].w = v0 * v0;  // 2*v0^2 on [-1,1], halved for [0,1]
  }
  return cache.emplace(n, std::move(nodes)).first->second;
}

const std::vector<TriNode>& triangle_rule(int n) {
  static std::map<int, std::vector<TriNode>> cache;
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  const auto& gl = gauss_legendre(n);
  std::vector<TriNode> nodes;
  nodes.reserve(std::size_t(n) * std::size_t(n));
  for (const auto& a : gl)
    for (const auto& b : gl) {
      TriNode t;
      t.xy = Vec2(a.x, b.x * (1.0 - a.x));
      t.w = a.w * b.w * (1.0 - a.x);
      nodes.push_back(t);
    }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return cache.emplace(n, std::move(nodes)).first->second;
}

namespace {

Vec2 ray(double u) { return Vec2(1.0 - u, u); }

// Identical panels: relative coordinate z = y - x split into six sign sectors;
// in each, z = xi*d(w), the x-polygon is the shrunk triangle l + (1-xi)*K_hat,
// and the inner triangle is covered by a corner map. Weight xi*(1-xi)^2*mu.
void build_identical(int q, std::vector<PairNode>& out) {
  const auto& gl = gauss_legendre(q);
  struct Sector {
    Vec2 (*d)(double);
    Vec2 (*l)(double, double);
  };
  static const Sector sectors[6] = {
      {[](double w) { return Vec2(1.0 - w, w); }, [](double, double) { return Vec2(0, 0); }},
      {[](double w) { return Vec2(w - 1.0, -w); },
       [](double xi, double w) { return Vec2(xi * (1.0 - w), xi * w); }},
      {[](double w) { return Vec2(1.0, -w); }, [](double xi, double w) { return Vec2(0.0, xi * w); }},
      {[](double w) { return Vec2(w, -1.0); }, [](double xi, double) { return Vec2(0.0, xi); }},
      {[](double w) { return Vec2(-w, 1.0); }, [](double xi, double w) { return Vec2(xi * w, 0.0); }},
      {[](double w) { return Vec2(-1.0, w); }, [](double xi, double) { return Vec2(xi, 0.0); }}};
  for (const auto& sec : sectors)
    for (const auto& gxi : gl)
      for (const auto& gw : gl)
        for (const auto& gmu : gl)
          for (const auto& gnu : gl) {
            const double xi = gxi.x, w = gw.x, mu = gmu.x, nu = gnu.x;
            const Vec2 x = sec.l(xi, w) + (1.0 - xi) * mu * ray(nu);
            const Vec2 y = x + xi * sec.d(w);
            const double wt = gxi.w * gw.w * gmu.w * gnu.w * xi * (1.0 - xi) * (1.0 - xi) * mu;
            out.push_back({x, y, wt});
          }
}

// Common edge: canonical configuration has the shared edge from (0,0) to
// (1,0) in both panels with matching physical parametrization. The singular
// directions (y1-x1, x2, y2) are scaled radially; eight polynomial charts
// cover the max-norm sectors.
void build_common_edge(int q, std::vector<PairNode>& out) {
  const auto& gl = gauss_legendre(q);
  auto emit = [&out](const Vec2& x, const Vec2& y, double wt, bool swap) {
    if (swap)
      out.push_back({y, x, wt});
    else
      out.push_back({x, y, wt});
  };
  for (int swap = 0; swap < 2; ++swap) {
    for (const auto& g1 : gl)
      for (const auto& g2 : gl)
        for (const auto& g3 : gl)
          for (const auto& g4 : gl) {
            const double t1 = g1.x, t2 = g2.x, t3 = g3.x, t4 = g4.x;
            const double gw = g1.w * g2.w * g3.w * g4.w;
            {
              // x2 dominant, delta >= 0, tau1 + tau2 <= 1
              const double tau1 = t2 * (1.0 - t3), tau2 = t2 * t3;
              const double rho = t1;
              const double x1 = (1.0 - rho) * t4;
              emit(Vec2(x1, rho), Vec2(x1 + rho * tau2, rho * tau1),
                   gw * rho * rho * (1.0 - rho) * t2, swap);
            }
            {
              // x2 dominant, delta >= 0, tau1 + tau2 >= 1
              const double tau1 = 1.0 - t2 * (1.0 - t3), tau2 = 1.0 - t2 * t3;
              const double s = tau1 + tau2;
              const double rho = t1 / s;
              const double x1 = (1.0 - t1) * t4;
              emit(Vec2(x1, rho), Vec2(x1 + rho * tau2, rho * tau1),
                   gw * rho * rho * (1.0 - t1) * t2 / s, swap);
            }
            {
              // x2 dominant, delta <= 0
              const double tau1 = t2, tau = t3;
              const double rho = t1 / (1.0 + tau);
              const double x1 = rho * tau + (1.0 - t1) * t4;
              emit(Vec2(x1, rho), Vec2(x1 - rho * tau, rho * tau1),
                   gw * rho * rho * (1.0 - t1) / (1.0 + tau), swap);
            }
            if (swap == 0) {
              {
                // |delta| dominant, delta = +rho
                const double tau1 = t2, tau2 = t3;
                const double rho = t1 / (1.0 + tau2);
                const double x1 = (1.0 - t1) * t4;
                emit(Vec2(x1, rho * tau1), Vec2(x1 + rho, rho * tau2),
                     gw * rho * rho * (1.0 - t1) / (1.0 + tau2), false);
              }
              {
                // |delta| dominant, delta = -rho
                const double tau1 = t2, tau2 = t3;
                const double rho = t1 / (1.0 + tau1);
                const double x1 = rho + (1.0 - t1) * t4;
                emit(Vec2(x1, rho * tau1), Vec2(x1 - rho, rho * tau2),
                     gw * rho * rho * (1.0 - t1) / (1.0 + tau1), false);
              }
            }
          }
  }
}

// Common vertex at the reference origin of both panels: two radial-ordering
// charts with weight s^3 t.
void build_common_vertex(int q, std::vector<PairNode>& out) {
  const auto& gl = gauss_legendre(q);
  for (const auto& gs : gl)
    for (const auto& gt : gl)
      for (const auto& gu : gl)
        for (const auto& gw : gl) {
          const double s = gs.x, t = gt.x, u = gu.x, w = gw.x;
          const double wt = gs.w * gt.w * gu.w * gw.w * s * s * s * t;
          out.push_back({s * ray(u), s * t * ray(w), wt});
          out.push_back({s * t * ray(u), s * ray(w), wt});
        }
}

void build_disjoint(int q, std::vector<PairNode>& out) {
  const auto& tri = triangle_rule(q);
  for (const auto& a : tri)
    for (const auto& b : tri) out.push_back({a.xy, b.xy, a.w * b.w});
}

}  // namespace

const PanelPairRule& panel_pair_rule(PairClass cls, int order) {
  static std::map<std::pair<int, int>, PanelPairRule> cache;
  const auto key = std::make_pair(int(cls), order);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  if (order < 1) throw std::runtime_error("panel_pair_rule: order must be >= 1");

  PanelPairRule rule;
  rule.cls = cls;
  rule.order = order;
  switch (cls) {
    case PairClass::Identical: build_identical(order, rule.nodes); break;
    case PairClass::CommonEdge: build_common_edge(order, rule.nodes); break;
    case PairClass::CommonVertex: build_common_vertex(order, rule.nodes); break;
    case PairClass::Disjoint: build_disjoint(order, rule.nodes); break;
  }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

}  // namespace hpefie
