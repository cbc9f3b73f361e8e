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
#include "cagnn/kmeans.h"

#include <limits>
#include <stdexcept>
#include <string>

namespace cagnn {

namespace {

std::mt19937_64 restart_engine(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

// Squared distances of every point to every centroid, via
// |x|^2 - 2 x.c + |c|^2 so the bulk of the work is one matrix product.
DenseMatrix squared_distances(const DenseMatrix& points, const DenseMatrix& centroids) {
  Vector pn = points.rowwise().squaredNorm();
  Vector cn = centroids.rowwise().squaredNorm();
  DenseMatrix d = -2.0 * (points * centroids.transpose());
  d.colwise() += pn;
  d.rowwise() += cn.transpose();
  return d.cwiseMax(0.0);
}

void recompute_centroids(const DenseMatrix& points, const LabelVector& labels,
                         DenseMatrix& centroids) {
  std::vector<int> counts(static_cast<std::size_t>(centroids.rows()), 0);
  centroids.setZero();
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    centroids.row(labels[i]) += points.row(i);
    ++counts[labels[i]];
  }
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    if (counts[c] > 0) centroids.row(c) /= counts[c];
  }
}

}  // namespace

DenseMatrix kmeans_plus_plus(const DenseMatrix& points, int k, std::mt19937_64& rng) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeans: k=" + std::to_string(k) + " must be in [1, n=" +
                                std::to_string(n) + "]");
  }
  DenseMatrix centroids(k, points.cols());
  std::uniform_int_distribution<Eigen::Index> first(0, n - 1);
  centroids.row(0) = points.row(first(rng));
  Vector d2 = (points.rowwise() - centroids.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    double total = d2.sum();
    Eigen::Index pick = n - 1;
    if (total > 0.0) {
      double target = unit(rng) * total;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = first(rng);
    }
    centroids.row(c) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - centroids.row(c)).rowwise().squaredNorm());
  }
  return centroids;
}

double kmeans_objective(const DenseMatrix& points, const DenseMatrix& centroids,
                        const LabelVector& labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    total += (points.row(i) - centroids.row(labels[i])).squaredNorm();
  }
  return points.rows() > 0 ? total / static_cast<double>(points.rows()) : 0.0;
}

KMeansResult lloyd(const DenseMatrix& points, DenseMatrix centroids, int max_iterations) {
  const Eigen::Index n = points.rows();
  const int k = static_cast<int>(centroids.rows());
  KMeansResult result;
  LabelVector labels(static_cast<std::size_t>(n), -1);
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    DenseMatrix d2 = squared_distances(points, centroids);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index c = 0;
      for (Eigen::Index j = 1; j < k; ++j) {
        if (d2(i, j) < d2(i, c)) c = j;
      }
      dist[i] = d2(i, c);
      if (c != labels[i]) {
        labels[i] = static_cast<int>(c);
        changed = true;
      }
    }
    // Repair empty clusters by stealing the point farthest from its centroid
    // among clusters that can spare one.
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int l : labels) ++counts[l];
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      Eigen::Index far = -1;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[labels[i]] > 1 && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      if (far < 0) break;
      --counts[labels[far]];
      labels[far] = c;
      ++counts[c];
      dist[far] = 0.0;
      changed = true;
    }
    recompute_centroids(points, labels, centroids);
    result.objective_trace.push_back(kmeans_objective(points, centroids, labels));
    result.iterations = iter + 1;
    if (!changed) break;
  }
  result.objective = result.objective_trace.empty()
                         ? kmeans_objective(points, centroids, labels)
                         : result.objective_trace.back();
  result.labels = std::move(labels);
  result.centroids = std::move(centroids);
  return result;
}

KMeansResult kmeans(const DenseMatrix& points, int k, std::uint64_t seed,
                    const KMeansOptions& options) {
  if (k < 1 || k > points.rows()) {
    throw std::invalid_argument("kmeans: k=" + std::to_string(k) + " must be in [1, n=" +
                                std::to_string(points.rows()) + "]");
  }
  if (options.restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");
  KMeansResult best;
  bool have_best = false;
  for (int r = 0; r < options.restarts; ++r) {
    std::mt19937_64 rng = restart_engine(seed, r);
    KMeansResult run = lloyd(points, kmeans_plus_plus(points, k, rng), options.max_iterations);
    if (!have_best || run.objective < best.objective) {
      best = std::move(run);
      have_best = true;
    }
  }
  return best;
}

AssignmentMatrix one_hot(const LabelVector& labels, int k) {
  AssignmentMatrix c = AssignmentMatrix::Zero(static_cast<Eigen::Index>(labels.size()), k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= k) throw std::out_of_range("one_hot: label out of range");
    c(static_cast<Eigen::Index>(i), labels[i]) = 1.0;
  }
  return c;
}

LabelVector hard_labels(const AssignmentMatrix& c) {
  LabelVector out(static_cast<std::size_t>(c.rows()));
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < c.cols(); ++j) {
      if (c(i, j) > c(i, best)) best = j;
    }
    out[i] = static_cast<int>(best);
  }
  return out;
}

}  // namespace cagnn
