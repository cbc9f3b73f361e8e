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
#ifndef CAGNN_EVALUATE_H_
#define CAGNN_EVALUATE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cagnn/io.h"
#include "cagnn/types.h"

namespace cagnn {

struct EvalReport {
  std::string task;  // "cluster" or "classify"
  std::uint64_t seed = 0;
  int runs = 0;
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  double nmi = 0.0;  // clustering only
  double micro_f1_std = 0.0;
  double macro_f1_std = 0.0;
  double nmi_std = 0.0;
  std::vector<double> run_micro_f1;
  std::vector<double> run_macro_f1;
  std::vector<double> run_nmi;
  // Per-class precision and recall, averaged over runs.
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> chosen_l2;  // classification: penalty picked per run
};

struct ClusteringEvalOptions {
  int runs = 10;
  int restarts = 10;
};

// k-means with k = num_classes on H, clusters mapped to classes by majority
// vote, metrics averaged over runs. Run r uses a seed derived from (seed, r).
EvalReport evaluate_clustering(const EmbeddingMatrix& h, const LabelVector& truth,
                               int num_classes, std::uint64_t seed,
                               const ClusteringEvalOptions& options = {});

struct ClassificationEvalOptions {
  int runs = 10;
  double train_fraction = 0.1;
  int folds = 5;
  std::vector<double> l2_grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  int max_iterations = 300;
  int split_attempts = 10;
};

// Multinomial logistic regression with an l2 penalty, fit by accelerated
// full-batch gradient descent on standardised features.
class LogisticRegression {
 public:
  LogisticRegression(double l2, int max_iterations) : l2_(l2), max_iterations_(max_iterations) {}

  void fit(const DenseMatrix& x, const LabelVector& y, int num_classes);
  LabelVector predict(const DenseMatrix& x) const;
  DenseMatrix decision_function(const DenseMatrix& x) const;

 private:
  double l2_;
  int max_iterations_;
  Vector mean_;
  Vector scale_;
  DenseMatrix weights_;  // (d + 1) x k, last row is the bias
};

// Random train/test split per run; the penalty is chosen by cross-validated
// accuracy on the training part; test micro/macro F1 averaged over runs.
EvalReport evaluate_classification(const EmbeddingMatrix& h, const LabelVector& truth,
                                   std::uint64_t seed,
                                   const ClassificationEvalOptions& options = {});

KeyValues to_key_values(const EvalReport& report);
void write_report(const std::filesystem::path& path, const EvalReport& report);
std::string summary_line(const EvalReport& report);

}  // namespace cagnn

#endif  // CAGNN_EVALUATE_H_
