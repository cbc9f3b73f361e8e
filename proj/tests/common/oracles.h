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
// Independent reference implementations and instance generators shared by
// the unit tests and the acceptance binary. They are deliberately naive:
// plain loops, no shared code paths with the library beyond the data types.

#ifndef CAGNN_TESTS_ORACLES_H_
#define CAGNN_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "cagnn/graph.h"
#include "cagnn/types.h"

namespace cagnn::testing {

// ------------------------------------------------------------ generators

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

inline DenseMatrix random_matrix(int rows, int cols, std::mt19937_64& rng, double lo = -1.0,
                                 double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

// Rows drawn from a Dirichlet(alpha) distribution.
inline DenseMatrix random_stochastic(int rows, int cols, std::mt19937_64& rng,
                                     double alpha = 1.0) {
  std::gamma_distribution<double> g(alpha, 1.0);
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols; ++j) s += m(i, j) = g(rng) + 1e-12;
    m.row(i) /= s;
  }
  return m;
}

inline LabelVector random_labels(int n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(0, k - 1);
  LabelVector v(static_cast<std::size_t>(n));
  for (int& x : v) x = u(rng);
  return v;
}

// Two cliques of `size` nodes joined by one bridge edge (size-1, size).
// Features are Gaussian around +/- `separation` per cluster.
inline Dataset two_clique_dataset(int size, int dims, double separation, double noise,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise);
  Dataset d;
  std::vector<Edge> edges;
  for (int block = 0; block < 2; ++block) {
    int base = block * size;
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) edges.emplace_back(base + i, base + j);
    }
  }
  edges.emplace_back(size - 1, size);
  d.graph = Graph(static_cast<std::size_t>(2 * size), edges);
  d.features.resize(2 * size, dims);
  d.labels.resize(2 * size);
  for (int i = 0; i < 2 * size; ++i) {
    int label = i < size ? 0 : 1;
    d.labels[i] = label;
    for (int j = 0; j < dims; ++j) {
      d.features(i, j) = (label == 0 ? separation : -separation) * (j % 2 == 0 ? 1 : -1) +
                         gauss(rng);
    }
  }
  d.num_classes = 2;
  return d;
}

// ------------------------------------------------------ finite differences

// Central difference of f at every entry of *param, step h.
inline DenseMatrix numeric_gradient(const std::function<double()>& f, DenseMatrix* param,
                                    double h = 1e-5) {
  DenseMatrix g(param->rows(), param->cols());
  for (Eigen::Index i = 0; i < param->size(); ++i) {
    double saved = param->data()[i];
    param->data()[i] = saved + h;
    double up = f();
    param->data()[i] = saved - h;
    double down = f();
    param->data()[i] = saved;
    g.data()[i] = (up - down) / (2.0 * h);
  }
  return g;
}

// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor).
inline double max_relative_error(const DenseMatrix& a, const DenseMatrix& b,
                                 double floor = 1e-6) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double x = a.data()[i], y = b.data()[i];
    double denom = std::max({std::abs(x), std::abs(y), floor});
    worst = std::max(worst, std::abs(x - y) / denom);
  }
  return worst;
}

// ------------------------------------------------------------- OT oracles

// Classic Sinkhorn: alternately rescale all rows then all columns of m0
// until both marginal errors fall below tol.
inline DenseMatrix sinkhorn_oracle(const DenseMatrix& m0, const Vector& r, const Vector& c,
                                   double tol = 1e-14, int max_rounds = 200000) {
  DenseMatrix m = m0;
  for (int round = 0; round < max_rounds; ++round) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j);
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) *= r[i] / s;
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double s = 0.0;
      for (Eigen::Index i = 0; i < m.rows(); ++i) s += m(i, j);
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) *= c[j] / s;
    }
    double err = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j);
      err = std::max(err, std::abs(s - r[i]));
    }
    if (err < tol) break;
  }
  return m;
}

inline double rho_oracle(double a, double b) {
  return a == 0.0 ? b : b - a + a * std::log(a / b);
}

// ---------------------------------------------------------- Lloyd oracle

struct LloydOracleResult {
  LabelVector labels;
  DenseMatrix centroids;
  double objective = 0.0;
};

// Textbook Lloyd from fixed centroids with the same conventions as the
// library: nearest centroid by squared distance (ties to the lower index),
// empty clusters take the farthest point of a cluster with >1 member.
inline LloydOracleResult lloyd_oracle(const DenseMatrix& x, DenseMatrix centroids,
                                      int max_iterations) {
  const int n = static_cast<int>(x.rows()), k = static_cast<int>(centroids.rows()),
            d = static_cast<int>(x.cols());
  LabelVector labels(n, -1);
  std::vector<double> dist(n, 0.0);
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        double s = 0.0;
        for (int j = 0; j < d; ++j) s += (x(i, j) - centroids(c, j)) * (x(i, j) - centroids(c, j));
        if (s < best_d) {
          best_d = s;
          best = c;
        }
      }
      dist[i] = best_d;
      if (labels[i] != best) {
        labels[i] = best;
        changed = true;
      }
    }
    std::vector<int> count(k, 0);
    for (int l : labels) ++count[l];
    for (int c = 0; c < k; ++c) {
      if (count[c] > 0) continue;
      int far = -1;
      for (int i = 0; i < n; ++i) {
        if (count[labels[i]] > 1 && (far < 0 || dist[i] > dist[far])) far = i;
      }
      if (far < 0) break;
      --count[labels[far]];
      labels[far] = c;
      ++count[c];
      dist[far] = 0.0;
      changed = true;
    }
    for (int c = 0; c < k; ++c) {
      if (count[c] == 0) continue;
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
          if (labels[i] == c) s += x(i, j);
        }
        centroids(c, j) = s / count[c];
      }
    }
    if (!changed) break;
  }
  double obj = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      double diff = x(i, j) - centroids(labels[i], j);
      obj += diff * diff;
    }
  }
  return {labels, centroids, obj / n};
}

// ------------------------------------------------------- metric oracles

struct F1Oracle {
  double micro = 0.0;
  double macro = 0.0;
};

// From a dense confusion matrix conf[truth][pred].
inline F1Oracle f1_oracle(const LabelVector& pred, const LabelVector& truth) {
  int k = 0;
  for (int v : pred) k = std::max(k, v + 1);
  for (int v : truth) k = std::max(k, v + 1);
  std::vector<std::vector<long>> conf(k, std::vector<long>(k, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) ++conf[truth[i]][pred[i]];
  long diag = 0, total = 0;
  double macro = 0.0;
  int present = 0;
  for (int c = 0; c < k; ++c) {
    long row = 0, col = 0;
    for (int j = 0; j < k; ++j) {
      row += conf[c][j];
      col += conf[j][c];
    }
    diag += conf[c][c];
    total += row;
    if (row + col == 0) continue;
    ++present;
    long tp = conf[c][c], fp = col - tp, fn = row - tp;
    macro += (2 * tp + fp + fn) > 0 ? 2.0 * tp / static_cast<double>(2 * tp + fp + fn) : 0.0;
  }
  F1Oracle o;
  o.micro = total > 0 ? static_cast<double>(diag) / static_cast<double>(total) : 0.0;
  o.macro = present > 0 ? macro / present : 0.0;
  return o;
}

// 2 I / (H(a) + H(b)) from the dense contingency table, natural log.
inline double nmi_oracle(const LabelVector& a, const LabelVector& b) {
  int ka = 0, kb = 0;
  for (int v : a) ka = std::max(ka, v + 1);
  for (int v : b) kb = std::max(kb, v + 1);
  const double n = static_cast<double>(a.size());
  std::vector<std::vector<long>> joint(ka, std::vector<long>(kb, 0));
  std::vector<long> ca(ka, 0), cb(kb, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++joint[a[i]][b[i]];
    ++ca[a[i]];
    ++cb[b[i]];
  }
  double ha = 0.0, hb = 0.0;
  for (long c : ca) {
    if (c > 0) ha -= (c / n) * std::log(c / n);
  }
  for (long c : cb) {
    if (c > 0) hb -= (c / n) * std::log(c / n);
  }
  if (ha + hb == 0.0) return 0.0;
  double hab = 0.0;
  for (int x = 0; x < ka; ++x) {
    for (int y = 0; y < kb; ++y) {
      if (joint[x][y] > 0) hab -= (joint[x][y] / n) * std::log(joint[x][y] / n);
    }
  }
  double mi = ha + hb - hab;
  return 2.0 * mi / (ha + hb);
}

}  // namespace cagnn::testing

#endif  // CAGNN_TESTS_ORACLES_H_
