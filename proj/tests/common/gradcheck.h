/**
 * Copyright 2026 The cagnn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
// Random small encoder + head instances and a central-difference check of
// the analytic gradients of both training losses.

#ifndef CAGNN_TESTS_GRADCHECK_H_
#define CAGNN_TESTS_GRADCHECK_H_

#include <algorithm>
#include <random>

#include "cagnn/autodiff.h"
#include "cagnn/model.h"
#include "common/oracles.h"

namespace cagnn::testing {

struct GradCase {
  Graph graph;
  DenseMatrix x;
  DenseMatrix q;
  ModelParams params;
  NegativeSamples neg;
};

// n <= 10, m <= 8, d <= 4, k <= 3; at least one edge.
inline GradCase make_grad_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(3, 10), md(1, 8), dd(1, 4), kd(2, 3);
  GradCase c;
  int n = nd(rng), m = md(rng), d = dd(rng), k = kd(rng);
  do {
    c.graph = random_graph(n, 0.4, rng);
  } while (c.graph.empty_edges());
  c.x = random_matrix(n, m, rng);
  c.q = random_stochastic(n, k, rng);
  c.params = init_params({m, d, d, d, k}, rng);
  for (DenseMatrix* t : c.params.tensors()) {
    *t = random_matrix(static_cast<int>(t->rows()), static_cast<int>(t->cols()), rng);
  }
  c.neg = sample_negatives(c.graph.num_edges(), c.graph.num_nodes(), 3, rng);
  return c;
}

struct GradCheckResult {
  double cross_entropy = 0.0;   // worst relative error over all tensors
  double reconstruction = 0.0;  // GCN tensors only; the head is not involved
};

inline GradCheckResult gradient_check(GradCase& c, double step = 1e-5) {
  NormalizedAdjacency s = normalize_adjacency(c.graph);
  SparseMatrix xs = to_sparse(c.x);
  auto ce = [&] { return cross_entropy_loss(head_logits(gcn_forward(s, c.x, c.params), c.params), c.q); };
  auto rec = [&] {
    Tape t;
    return t.scalar(
        t.edge_reconstruction(t.constant(gcn_forward(s, c.x, c.params)), c.graph.edges(), c.neg));
  };
  GradCheckResult out;
  for (bool is_ce : {true, false}) {
    Tape t;
    BoundParams b = bind(t, c.params);
    Var h = gcn_forward(t, s, xs, b);
    Var loss = is_ce ? t.softmax_cross_entropy(head_logits(t, h, b), c.q)
                     : t.edge_reconstruction(h, c.graph.edges(), c.neg);
    t.backward(loss);
    Gradients g = collect_gradients(t, b);
    auto tensors = c.params.tensors();
    for (std::size_t i = 0; i < tensors.size(); ++i) {
      if (!is_ce && i >= c.params.num_gcn_tensors()) continue;
      DenseMatrix num = is_ce ? numeric_gradient(ce, tensors[i], step)
                              : numeric_gradient(rec, tensors[i], step);
      double err = max_relative_error(g.tensors[i], num);
      double& worst = is_ce ? out.cross_entropy : out.reconstruction;
      worst = std::max(worst, err);
    }
  }
  return out;
}

}  // namespace cagnn::testing

#endif  // CAGNN_TESTS_GRADCHECK_H_
