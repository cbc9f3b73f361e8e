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
#include <random>

#include <gtest/gtest.h>

#include "cagnn/kmeans.h"
#include "common/oracles.h"

namespace cagnn {
namespace {

DenseMatrix blobs(int per_blob, int k, int d, double spread, std::mt19937_64& rng) {
  DenseMatrix centres = testing::random_matrix(k, d, rng, -10.0, 10.0);
  std::normal_distribution<double> noise(0.0, spread);
  DenseMatrix x(per_blob * k, d);
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = centres(i % k, j) + noise(rng);
  }
  return x;
}

TEST(KMeans, TwoWellSeparatedPairs) {
  DenseMatrix x(4, 1);
  x << 0.0, 0.1, 10.0, 10.1;
  KMeansResult r = kmeans(x, 2, 3);
  EXPECT_EQ(r.labels[0], r.labels[1]);
  EXPECT_EQ(r.labels[2], r.labels[3]);
  EXPECT_NE(r.labels[0], r.labels[2]);
  EXPECT_NEAR(r.objective, 0.0025, 1e-12);
}

TEST(KMeans, IdenticalPointsWithKEqualN) {
  DenseMatrix x = DenseMatrix::Constant(5, 3, 2.5);
  KMeansResult r = kmeans(x, 5, 1);
  EXPECT_EQ(r.objective, 0.0);
  std::vector<int> counts(5, 0);
  for (int l : r.labels) ++counts[l];
  for (int c : counts) EXPECT_EQ(c, 1);
}

TEST(KMeans, RejectsBadK) {
  DenseMatrix x = DenseMatrix::Zero(3, 2);
  EXPECT_THROW(kmeans(x, 0, 1), std::invalid_argument);
  EXPECT_THROW(kmeans(x, 4, 1), std::invalid_argument);
}

TEST(KMeans, LloydMatchesTextbookOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    int k = 2 + trial % 4;
    DenseMatrix x = blobs(6 + trial % 5, k, 1 + trial % 3, 1.5, rng);
    std::mt19937_64 seed_rng(trial);
    DenseMatrix init = kmeans_plus_plus(x, k, seed_rng);
    KMeansResult lib = lloyd(x, init, 300);
    testing::LloydOracleResult ref = testing::lloyd_oracle(x, init, 300);
    EXPECT_EQ(lib.labels, ref.labels) << "trial " << trial;
    EXPECT_LE((lib.centroids - ref.centroids).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(lib.objective, ref.objective, 1e-9);
  }
}

TEST(KMeans, ObjectiveNeverIncreases) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    DenseMatrix x = testing::random_matrix(60, 3, rng);
    std::mt19937_64 seed_rng(trial);
    KMeansResult r = lloyd(x, kmeans_plus_plus(x, 5, seed_rng), 300);
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
      EXPECT_LE(r.objective_trace[i], r.objective_trace[i - 1] + 1e-12);
    }
  }
}

TEST(KMeans, EmptyClusterStealsFarthestPoint) {
  DenseMatrix x(4, 1);
  x << 0.0, 1.0, 2.0, 9.0;
  DenseMatrix init(2, 1);
  init << 1.0, 100.0;  // nobody is closest to the second centre
  KMeansResult r = lloyd(x, init, 300);
  std::vector<int> counts(2, 0);
  for (int l : r.labels) ++counts[l];
  EXPECT_GT(counts[0], 0);
  EXPECT_GT(counts[1], 0);
  EXPECT_NE(r.labels[3], r.labels[0]);
}

TEST(KMeans, TranslationInvariantLabelsAndObjective) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    DenseMatrix x = blobs(10, 3, 2, 1.0, rng);
    Eigen::RowVectorXd shift = testing::random_matrix(1, 2, rng, -50, 50);
    DenseMatrix y = x.rowwise() + shift;
    KMeansResult a = kmeans(x, 3, 5);
    KMeansResult b = kmeans(y, 3, 5);
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_NEAR(a.objective, b.objective, 1e-8);
  }
}

TEST(KMeans, DeterministicForSeed) {
  std::mt19937_64 rng(2);
  DenseMatrix x = testing::random_matrix(50, 4, rng);
  KMeansResult a = kmeans(x, 4, 77);
  KMeansResult b = kmeans(x, 4, 77);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.centroids, b.centroids);
}

TEST(Assignments, OneHotAndArgmaxTies) {
  AssignmentMatrix c = one_hot({2, 0, 1}, 3);
  EXPECT_EQ(hard_labels(c), (LabelVector{2, 0, 1}));
  AssignmentMatrix tie(1, 3);
  tie << 0.4, 0.4, 0.2;
  EXPECT_EQ(hard_labels(tie), LabelVector{0});
  EXPECT_THROW(one_hot({3}, 3), std::out_of_range);
}

}  // namespace
}  // namespace cagnn
