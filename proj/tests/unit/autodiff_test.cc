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
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "cagnn/autodiff.h"
#include "cagnn/model.h"
#include "common/gradcheck.h"
#include "common/oracles.h"

namespace cagnn {
namespace {

TEST(Tape, SquareHasDerivativeSix) {
  Tape t;
  Var w = t.variable(DenseMatrix::Constant(1, 1, 3.0));
  Var f = t.sum(t.hadamard(w, w));
  t.backward(f);
  EXPECT_DOUBLE_EQ(t.scalar(f), 9.0);
  EXPECT_DOUBLE_EQ(t.grad(w)(0, 0), 6.0);
}

TEST(Tape, CrossEntropyGradientIsPMinusQ) {
  Tape t;
  DenseMatrix logits(1, 3);
  logits << 0.3, -1.2, 2.0;
  DenseMatrix q(1, 3);
  q << 0.2, 0.5, 0.3;
  Var z = t.variable(logits);
  t.backward(t.softmax_cross_entropy(z, q));
  DenseMatrix p = softmax_rows(logits);
  EXPECT_LE((t.grad(z) - (p - q)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Loss, CrossEntropyExamples) {
  DenseMatrix c(1, 2);
  c << 1.0, 0.0;
  DenseMatrix logits(1, 2);
  logits << std::log(0.8), std::log(0.2);
  EXPECT_NEAR(cross_entropy_loss(logits, c), -std::log(0.8), 1e-12);
  EXPECT_NEAR(cross_entropy_loss(logits, c), 0.22314, 1e-5);
  logits << 60.0, -60.0;
  EXPECT_LT(cross_entropy_loss(logits, c), 1e-50);
  for (int k : {2, 3, 7}) {
    DenseMatrix u = DenseMatrix::Constant(4, k, 1.0 / k);
    EXPECT_NEAR(cross_entropy_loss(DenseMatrix::Zero(4, k), u), std::log(k), 1e-12);
  }
}

TEST(Loss, CrossEntropyRejectsNaN) {
  DenseMatrix logits(1, 2);
  logits << std::nan(""), 0.0;
  DenseMatrix c(1, 2);
  c << 1.0, 0.0;
  EXPECT_THROW(cross_entropy_loss(logits, c), std::invalid_argument);
}

TEST(Loss, CrossEntropyBoundedBelowByTargetEntropy) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    DenseMatrix logits = testing::random_matrix(6, 4, rng, -3, 3);
    DenseMatrix q = testing::random_stochastic(6, 4, rng);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < q.size(); ++i) entropy -= q.data()[i] * std::log(q.data()[i]);
    entropy /= 6.0;
    EXPECT_GE(cross_entropy_loss(logits, q), entropy - 1e-12);
    // Equality when p = q.
    DenseMatrix exact = q.array().log();
    EXPECT_NEAR(cross_entropy_loss(exact, q), entropy, 1e-12);
  }
}

TEST(Softmax, RowsSumToOne) {
  std::mt19937_64 rng(1);
  DenseMatrix p = softmax_rows(testing::random_matrix(50, 3, rng, -40, 40));
  for (Eigen::Index i = 0; i < p.rows(); ++i) EXPECT_NEAR(p.row(i).sum(), 1.0, 1e-12);
}

TEST(Loss, ReconstructionZeroEmbeddings) {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  for (int ratio : {1, 3, 5}) {
    EXPECT_NEAR(reconstruction_loss(DenseMatrix::Zero(4, 3), g, ratio, 9),
                (1 + ratio) * std::log(2.0), 1e-12);
  }
}

TEST(Loss, ReconstructionPositiveTermVanishes) {
  // h0 . h1 large, negatives (always node 2 or 3) orthogonal to h0 in the
  // large-margin limit: pick h2, h3 pointing away so sig(-h0.hneg) -> 1.
  Graph g(4, {{0, 1}});
  DenseMatrix h(4, 2);
  h << 40, 0, 40, 0, -40, 0, -40, 0;
  // Negatives can hit node 0 or 1 too; use a seed and compare to the
  // explicit sum over the sampled negatives.
  std::mt19937_64 rng(4);
  NegativeSamples neg = sample_negatives(1, 4, 2, rng);
  double expected = -log_sigmoid(h.row(0).dot(h.row(1)));
  for (int t : neg.targets) expected -= log_sigmoid(-h.row(0).dot(h.row(t)));
  EXPECT_NEAR(reconstruction_loss(h, g, 2, 4), expected, 1e-12);
  EXPECT_LT(-log_sigmoid(h.row(0).dot(h.row(1))), 1e-300);
}

TEST(Loss, ReconstructionDeterministicAndRejectsEmptyGraph) {
  std::mt19937_64 rng(8);
  Graph g = testing::random_graph(10, 0.4, rng);
  DenseMatrix h = testing::random_matrix(10, 4, rng);
  EXPECT_EQ(reconstruction_loss(h, g, 5, 123), reconstruction_loss(h, g, 5, 123));
  EXPECT_THROW(reconstruction_loss(h, Graph(10), 5, 1), std::invalid_argument);
}

TEST(Model, GcnForwardExamples) {
  NormalizedAdjacency s = normalize_adjacency(Graph(1));
  ModelParams p;
  p.gcn_weights = {DenseMatrix::Ones(1, 1), DenseMatrix::Ones(1, 1)};
  p.head_w1 = DenseMatrix::Ones(1, 1);
  p.head_b1 = DenseMatrix::Zero(1, 1);
  p.head_w2 = DenseMatrix::Ones(1, 1);
  p.head_b2 = DenseMatrix::Zero(1, 1);
  DenseMatrix x = DenseMatrix::Constant(1, 1, 2.0);
  EXPECT_DOUBLE_EQ(gcn_forward(s, x, p)(0, 0), 2.0);
  p.gcn_weights[0](0, 0) = -1.0;
  EXPECT_DOUBLE_EQ(gcn_forward(s, x, p)(0, 0), 0.0);

  std::mt19937_64 rng(2);
  ModelParams q = init_params({3, 5, 4, 4, 2}, rng);
  NormalizedAdjacency s2 = normalize_adjacency(Graph(2, {{0, 1}}));
  DenseMatrix same(2, 3);
  same << 1, 2, 3, 1, 2, 3;
  DenseMatrix h = gcn_forward(s2, same, q);
  EXPECT_EQ(h.row(0), h.row(1));
}

TEST(Model, ShapeMismatchThrows) {
  std::mt19937_64 rng(2);
  ModelParams q = init_params({3, 5, 4, 4, 2}, rng);
  NormalizedAdjacency s = normalize_adjacency(Graph(2));
  EXPECT_THROW(gcn_forward(s, DenseMatrix::Zero(2, 4), q), std::invalid_argument);
  EXPECT_THROW(gcn_forward(s, DenseMatrix::Zero(3, 3), q), std::invalid_argument);
  EXPECT_THROW(head_logits(DenseMatrix::Zero(2, 5), q), std::invalid_argument);
}

TEST(Model, HeadExamples) {
  std::mt19937_64 rng(6);
  ModelParams q = init_params({3, 4, 4, 4, 3}, rng);
  q.head_w1.setZero();
  q.head_w2.setZero();
  DenseMatrix h = testing::random_matrix(5, 4, rng);
  DenseMatrix logits = head_logits(h, q);
  EXPECT_EQ(logits, DenseMatrix::Zero(5, 3));
  DenseMatrix p = softmax_rows(logits);
  EXPECT_NEAR(p(2, 1), 1.0 / 3.0, 1e-15);

  // Identity-like head with d = k: ReLU(H I) I equals H on nonnegative H.
  ModelParams id = init_params({3, 4, 3, 3, 3}, rng);
  id.head_w1 = DenseMatrix::Identity(3, 3);
  id.head_w2 = DenseMatrix::Identity(3, 3);
  DenseMatrix hp = testing::random_matrix(4, 3, rng, 0.0, 2.0);
  EXPECT_EQ(head_logits(hp, id), hp);
}

TEST(Model, PermutationEquivariance) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 8;
    Graph g = testing::random_graph(n, 0.4, rng);
    DenseMatrix x = testing::random_matrix(n, 5, rng);
    ModelParams p = init_params({5, 6, 4, 4, 3}, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> pe;
    for (const Edge& e : g.edges()) pe.emplace_back(perm[e.u], perm[e.v]);
    DenseMatrix px(n, 5);
    for (int i = 0; i < n; ++i) px.row(perm[i]) = x.row(i);
    DenseMatrix h = gcn_forward(normalize_adjacency(g), x, p);
    DenseMatrix ph = gcn_forward(normalize_adjacency(Graph(n, pe)), px, p);
    for (int i = 0; i < n; ++i) {
      EXPECT_LE((ph.row(perm[i]) - h.row(i)).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(GradientCheck, BothLossesMatchFiniteDifferences) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    testing::GradCase c = testing::make_grad_case(rng);
    testing::GradCheckResult r = testing::gradient_check(c);
    EXPECT_LT(r.cross_entropy, 1e-4) << "trial " << trial;
    EXPECT_LT(r.reconstruction, 1e-4) << "trial " << trial;
  }
}

}  // namespace
}  // namespace cagnn
