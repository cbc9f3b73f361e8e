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
#include "cagnn/evaluate.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cagnn/autodiff.h"
#include "cagnn/kmeans.h"
#include "cagnn/metrics.h"

namespace cagnn {

namespace {

std::uint64_t derive_seed(std::uint64_t seed, int stream, std::uint32_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), tag};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean_of(v), s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size());
}

void check_inputs(const EmbeddingMatrix& h, const LabelVector& truth) {
  if (static_cast<std::size_t>(h.rows()) != truth.size()) {
    throw std::invalid_argument("embedding rows (" + std::to_string(h.rows()) +
                                ") != label count (" + std::to_string(truth.size()) + ")");
  }
  if (truth.empty()) throw std::invalid_argument("evaluation needs at least one node");
  if (!h.allFinite()) throw std::invalid_argument("embeddings contain non-finite values");
}

void accumulate_per_class(EvalReport& r, const F1Scores& f) {
  if (r.precision.size() < f.precision.size()) {
    r.precision.resize(f.precision.size(), 0.0);
    r.recall.resize(f.recall.size(), 0.0);
  }
  for (std::size_t c = 0; c < f.precision.size(); ++c) {
    r.precision[c] += f.precision[c];
    r.recall[c] += f.recall[c];
  }
}

void finish(EvalReport& r) {
  r.micro_f1 = mean_of(r.run_micro_f1);
  r.macro_f1 = mean_of(r.run_macro_f1);
  r.nmi = mean_of(r.run_nmi);
  r.micro_f1_std = std_of(r.run_micro_f1);
  r.macro_f1_std = std_of(r.run_macro_f1);
  r.nmi_std = std_of(r.run_nmi);
  for (double& p : r.precision) p /= r.runs;
  for (double& p : r.recall) p /= r.runs;
}

DenseMatrix take_rows(const DenseMatrix& m, const std::vector<int>& idx) {
  DenseMatrix out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = m.row(idx[i]);
  return out;
}

LabelVector take(const LabelVector& v, const std::vector<int>& idx) {
  LabelVector out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

}  // namespace

EvalReport evaluate_clustering(const EmbeddingMatrix& h, const LabelVector& truth,
                               int num_classes, std::uint64_t seed,
                               const ClusteringEvalOptions& options) {
  check_inputs(h, truth);
  if (options.runs < 1) throw std::invalid_argument("evaluate_clustering: runs must be >= 1");
  EvalReport r;
  r.task = "cluster";
  r.seed = seed;
  r.runs = options.runs;
  KMeansOptions km;
  km.restarts = options.restarts;
  for (int run = 0; run < options.runs; ++run) {
    KMeansResult res = kmeans(h, num_classes, derive_seed(seed, run, 0x6b6d), km);
    LabelVector mapped = map_clusters_to_classes(res.labels, truth);
    F1Scores f = micro_macro_f1(mapped, truth);
    r.run_micro_f1.push_back(f.micro);
    r.run_macro_f1.push_back(f.macro);
    r.run_nmi.push_back(nmi(res.labels, truth));
    accumulate_per_class(r, f);
  }
  finish(r);
  return r;
}

void LogisticRegression::fit(const DenseMatrix& x, const LabelVector& y, int num_classes) {
  const Eigen::Index n = x.rows(), d = x.cols();
  if (n == 0 || static_cast<std::size_t>(n) != y.size()) {
    throw std::invalid_argument("LogisticRegression::fit: bad training data");
  }
  mean_ = x.colwise().mean().transpose();
  scale_ = ((x.rowwise() - mean_.transpose()).colwise().squaredNorm() / n).cwiseSqrt();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (!(scale_[j] > 1e-12)) scale_[j] = 1.0;
  }
  DenseMatrix z(n, d + 1);
  z.leftCols(d) = (x.rowwise() - mean_.transpose()).array().rowwise() / scale_.transpose().array();
  z.col(d).setOnes();
  DenseMatrix target = DenseMatrix::Zero(n, num_classes);
  for (Eigen::Index i = 0; i < n; ++i) target(i, y[i]) = 1.0;

  // Power iteration for the largest eigenvalue of Z'Z / n.
  Vector v = Vector::Ones(d + 1).normalized();
  double lambda = 1.0;
  for (int it = 0; it < 50; ++it) {
    Vector w = z.transpose() * (z * v);
    lambda = w.norm();
    if (lambda == 0.0) break;
    v = w / lambda;
  }
  const double lipschitz = 0.5 * lambda / n + l2_;
  const double step = 1.0 / lipschitz;

  auto gradient = [&](const DenseMatrix& w) {
    DenseMatrix g = z.transpose() * (softmax_rows(z * w) - target) / static_cast<double>(n);
    g.topRows(d) += l2_ * w.topRows(d);
    return g;
  };

  DenseMatrix w = DenseMatrix::Zero(d + 1, num_classes);
  DenseMatrix look = w;
  double t = 1.0;
  for (int it = 0; it < max_iterations_; ++it) {
    DenseMatrix next = look - step * gradient(look);
    double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    look = next + ((t - 1.0) / t_next) * (next - w);
    double moved = (next - w).cwiseAbs().maxCoeff();
    w = std::move(next);
    t = t_next;
    if (moved < 1e-7) break;
  }
  weights_ = std::move(w);
}

DenseMatrix LogisticRegression::decision_function(const DenseMatrix& x) const {
  if (weights_.size() == 0) throw std::logic_error("LogisticRegression: not fitted");
  const Eigen::Index d = x.cols();
  if (d != mean_.size()) throw std::invalid_argument("LogisticRegression: feature width changed");
  DenseMatrix zs =
      (x.rowwise() - mean_.transpose()).array().rowwise() / scale_.transpose().array();
  DenseMatrix out = zs * weights_.topRows(d);
  out.rowwise() += weights_.row(d);
  return out;
}

LabelVector LogisticRegression::predict(const DenseMatrix& x) const {
  return hard_labels(decision_function(x));
}

EvalReport evaluate_classification(const EmbeddingMatrix& h, const LabelVector& truth,
                                   std::uint64_t seed,
                                   const ClassificationEvalOptions& options) {
  check_inputs(h, truth);
  if (options.runs < 1) throw std::invalid_argument("evaluate_classification: runs must be >= 1");
  if (options.l2_grid.empty()) throw std::invalid_argument("evaluate_classification: empty grid");
  const int n = static_cast<int>(truth.size());
  const int num_classes = *std::max_element(truth.begin(), truth.end()) + 1;
  std::vector<bool> in_truth(num_classes, false);
  for (int t : truth) in_truth[t] = true;
  const int needed = static_cast<int>(std::count(in_truth.begin(), in_truth.end(), true));
  int n_train = static_cast<int>(std::lround(options.train_fraction * n));
  n_train = std::clamp(n_train, std::min(needed, n - 1), n - 1);
  if (n_train < 1) throw std::invalid_argument("evaluate_classification: too few nodes");

  EvalReport r;
  r.task = "classify";
  r.seed = seed;
  r.runs = options.runs;
  for (int run = 0; run < options.runs; ++run) {
    std::mt19937_64 rng(derive_seed(seed, run, 0x6c72));
    std::vector<int> order(n);
    bool covered = false;
    for (int attempt = 0; attempt < options.split_attempts && !covered; ++attempt) {
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<bool> seen(num_classes, false);
      for (int i = 0; i < n_train; ++i) seen[truth[order[i]]] = true;
      covered = seen == in_truth;
    }
    if (!covered) {
      throw std::runtime_error("evaluate_classification: no split covering every class after " +
                               std::to_string(options.split_attempts) + " attempts");
    }
    std::vector<int> train_idx(order.begin(), order.begin() + n_train);
    std::vector<int> test_idx(order.begin() + n_train, order.end());
    DenseMatrix x_train = take_rows(h, train_idx);
    LabelVector y_train = take(truth, train_idx);

    // Cross-validated choice of the penalty; ties keep the earlier grid value.
    const int folds = std::min(options.folds, n_train);
    double best_l2 = options.l2_grid.front();
    double best_acc = -1.0;
    if (folds >= 2) {
      for (double l2 : options.l2_grid) {
        double acc = 0.0;
        for (int f = 0; f < folds; ++f) {
          std::vector<int> fit_idx, val_idx;
          for (int i = 0; i < n_train; ++i) (i % folds == f ? val_idx : fit_idx).push_back(i);
          LogisticRegression lr(l2, options.max_iterations);
          lr.fit(take_rows(x_train, fit_idx), take(y_train, fit_idx), num_classes);
          acc += accuracy(lr.predict(take_rows(x_train, val_idx)), take(y_train, val_idx));
        }
        if (acc > best_acc) {
          best_acc = acc;
          best_l2 = l2;
        }
      }
    }
    LogisticRegression lr(best_l2, options.max_iterations);
    lr.fit(x_train, y_train, num_classes);
    LabelVector pred = lr.predict(take_rows(h, test_idx));
    F1Scores f = micro_macro_f1(pred, take(truth, test_idx));
    r.run_micro_f1.push_back(f.micro);
    r.run_macro_f1.push_back(f.macro);
    r.chosen_l2.push_back(best_l2);
    accumulate_per_class(r, f);
  }
  finish(r);
  return r;
}

KeyValues to_key_values(const EvalReport& r) {
  KeyValues kv;
  kv["task"] = r.task;
  kv["seed"] = std::to_string(r.seed);
  kv["runs"] = std::to_string(r.runs);
  kv["micro_f1"] = format_double(r.micro_f1);
  kv["macro_f1"] = format_double(r.macro_f1);
  kv["micro_f1_std"] = format_double(r.micro_f1_std);
  kv["macro_f1_std"] = format_double(r.macro_f1_std);
  if (r.task == "cluster") {
    kv["nmi"] = format_double(r.nmi);
    kv["nmi_std"] = format_double(r.nmi_std);
  }
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
  };
  kv["run_micro_f1"] = join(r.run_micro_f1);
  kv["run_macro_f1"] = join(r.run_macro_f1);
  if (!r.run_nmi.empty()) kv["run_nmi"] = join(r.run_nmi);
  if (!r.chosen_l2.empty()) kv["chosen_l2"] = join(r.chosen_l2);
  for (std::size_t c = 0; c < r.precision.size(); ++c) {
    kv["class_" + std::to_string(c) + "_precision"] = format_double(r.precision[c]);
    kv["class_" + std::to_string(c) + "_recall"] = format_double(r.recall[c]);
  }
  return kv;
}

void write_report(const std::filesystem::path& path, const EvalReport& report) {
  write_key_values(path, to_key_values(report));
}

std::string summary_line(const EvalReport& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << r.task << ": micro_f1=" << r.micro_f1 << " macro_f1=" << r.macro_f1;
  if (r.task == "cluster") out << " nmi=" << r.nmi;
  out << " runs=" << r.runs;
  return out.str();
}

}  // namespace cagnn
