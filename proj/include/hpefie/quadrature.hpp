// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "hpefie/mesh.hpp"

namespace hpefie {

struct QuadNode1D {
  double x = 0, w = 0;
};

// Gauss-Legendre nodes/weights on [0,1].
const std::vector<QuadNode1D>& gauss_legendre(int n);

struct TriNode {
  Vec2 xy;
  double w = 0;
};

// Collapsed tensor rule on the reference triangle, n*n nodes; integrates
// bivariate polynomials of total degree <= 2n-2 exactly.
const std::vector<TriNode>& triangle_rule(int n);

enum class PairClass { Identical, CommonEdge, CommonVertex, Disjoint };

struct PairNode {
  Vec2 x, y;
  double w = 0;
};

// Regularized product rule on K_hat x K_hat for one panel-pair adjacency
// class: a finite list of polynomial chart images of [0,1]^4 tensor-Gauss
// points. The charts tile the pair domain exactly, so for any integrable F
// the rule converges to the true product integral; for kernels singular at
// x = y (on the shared entity, in the canonical configuration) every chart
// integrand is analytic.
struct PanelPairRule {
  PairClass cls = PairClass::Disjoint;
  int order = 0;
  std::vector<PairNode> nodes;
};

const PanelPairRule& panel_pair_rule(PairClass cls, int order);

}  // namespace hpefie
