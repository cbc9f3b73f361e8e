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
#ifndef CAGNN_KMEANS_H_
#define CAGNN_KMEANS_H_

#include <cstdint>
#include <random>
#include <vector>

#include "cagnn/types.h"

namespace cagnn {

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
};

struct KMeansResult {
  LabelVector labels;
  DenseMatrix centroids;          // k x d
  double objective = 0.0;         // (1/n) sum of squared distances
  int iterations = 0;
  std::vector<double> objective_trace;  // one entry per Lloyd iteration
};

// k-means++ seeding: first centre uniform, the rest drawn with probability
// proportional to squared distance to the nearest chosen centre.
DenseMatrix kmeans_plus_plus(const DenseMatrix& points, int k, std::mt19937_64& rng);

// Lloyd iterations from the given centroids until the assignment stops
// changing or max_iterations is reached. Ties go to the smallest cluster
// index. An empty cluster takes the point farthest from its own centroid.
KMeansResult lloyd(const DenseMatrix& points, DenseMatrix centroids, int max_iterations);

// Best of `restarts` seeded runs (lowest objective, then lowest restart
// index). Restart r draws from an engine seeded with (seed, r).
KMeansResult kmeans(const DenseMatrix& points, int k, std::uint64_t seed,
                    const KMeansOptions& options = {});

double kmeans_objective(const DenseMatrix& points, const DenseMatrix& centroids,
                        const LabelVector& labels);

AssignmentMatrix one_hot(const LabelVector& labels, int k);

// Row-wise argmax; ties go to the smallest index.
LabelVector hard_labels(const AssignmentMatrix& c);

}  // namespace cagnn

#endif  // CAGNN_KMEANS_H_
