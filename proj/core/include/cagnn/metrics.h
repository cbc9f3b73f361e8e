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
#ifndef CAGNN_METRICS_H_
#define CAGNN_METRICS_H_

#include <vector>

#include "cagnn/types.h"

namespace cagnn {

// Maps every cluster id to the majority ground-truth class among its
// members (ties to the smallest class id) and returns the mapped labels.
LabelVector map_clusters_to_classes(const LabelVector& pred, const LabelVector& truth);

struct ConfusionCounts {
  std::vector<long> tp;
  std::vector<long> fp;
  std::vector<long> fn;
  std::vector<bool> present;  // class occurs in truth or prediction
};

ConfusionCounts confusion_counts(const LabelVector& pred, const LabelVector& truth);

struct F1Scores {
  double micro = 0.0;
  double macro = 0.0;
  std::vector<double> precision;  // per class, 0 when undefined
  std::vector<double> recall;
  std::vector<double> f1;
};

// Macro averages only classes present in either vector.
F1Scores micro_macro_f1(const LabelVector& pred, const LabelVector& truth);

// 2 I(a;b) / (H(a) + H(b)), natural log; 0 when both entropies vanish.
double nmi(const LabelVector& a, const LabelVector& b);

double accuracy(const LabelVector& pred, const LabelVector& truth);

}  // namespace cagnn

#endif  // CAGNN_METRICS_H_
