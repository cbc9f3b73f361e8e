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
#include "cagnn/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace cagnn {

namespace {

void check_pair(const LabelVector& a, const LabelVector& b, const char* who) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(who) + ": length mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                ")");
  }
  for (int v : a) {
    if (v < 0) throw std::invalid_argument(std::string(who) + ": negative label");
  }
  for (int v : b) {
    if (v < 0) throw std::invalid_argument(std::string(who) + ": negative label");
  }
}

int num_labels(const LabelVector& v) {
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end()) + 1;
}

double entropy(const std::vector<long>& counts, double n) {
  double h = 0.0;
  for (long c : counts) {
    if (c > 0) {
      double p = static_cast<double>(c) / n;
      h -= p * std::log(p);
    }
  }
  return h;
}

}  // namespace

LabelVector map_clusters_to_classes(const LabelVector& pred, const LabelVector& truth) {
  check_pair(pred, truth, "map_clusters_to_classes");
  if (pred.empty()) throw std::invalid_argument("map_clusters_to_classes: empty input");
  const int clusters = num_labels(pred);
  const int classes = num_labels(truth);
  std::vector<std::vector<long>> votes(clusters, std::vector<long>(classes, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) ++votes[pred[i]][truth[i]];
  std::vector<int> mapping(clusters, 0);
  for (int c = 0; c < clusters; ++c) {
    mapping[c] = static_cast<int>(std::max_element(votes[c].begin(), votes[c].end()) -
                                  votes[c].begin());
  }
  LabelVector out(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) out[i] = mapping[pred[i]];
  return out;
}

ConfusionCounts confusion_counts(const LabelVector& pred, const LabelVector& truth) {
  check_pair(pred, truth, "confusion_counts");
  const int k = std::max(num_labels(pred), num_labels(truth));
  ConfusionCounts cc;
  cc.tp.assign(k, 0);
  cc.fp.assign(k, 0);
  cc.fn.assign(k, 0);
  cc.present.assign(k, false);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    cc.present[pred[i]] = true;
    cc.present[truth[i]] = true;
    if (pred[i] == truth[i]) {
      ++cc.tp[pred[i]];
    } else {
      ++cc.fp[pred[i]];
      ++cc.fn[truth[i]];
    }
  }
  return cc;
}

F1Scores micro_macro_f1(const LabelVector& pred, const LabelVector& truth) {
  ConfusionCounts cc = confusion_counts(pred, truth);
  F1Scores s;
  const std::size_t k = cc.tp.size();
  s.precision.assign(k, 0.0);
  s.recall.assign(k, 0.0);
  s.f1.assign(k, 0.0);
  long tp = 0, fp = 0, fn = 0;
  double macro_sum = 0.0;
  int macro_count = 0;
  for (std::size_t c = 0; c < k; ++c) {
    tp += cc.tp[c];
    fp += cc.fp[c];
    fn += cc.fn[c];
    if (cc.tp[c] + cc.fp[c] > 0) {
      s.precision[c] = static_cast<double>(cc.tp[c]) / static_cast<double>(cc.tp[c] + cc.fp[c]);
    }
    if (cc.tp[c] + cc.fn[c] > 0) {
      s.recall[c] = static_cast<double>(cc.tp[c]) / static_cast<double>(cc.tp[c] + cc.fn[c]);
    }
    long denom = 2 * cc.tp[c] + cc.fp[c] + cc.fn[c];
    if (denom > 0) s.f1[c] = 2.0 * static_cast<double>(cc.tp[c]) / static_cast<double>(denom);
    if (cc.present[c]) {
      macro_sum += s.f1[c];
      ++macro_count;
    }
  }
  long micro_denom = 2 * tp + fp + fn;
  s.micro = micro_denom > 0 ? 2.0 * static_cast<double>(tp) / static_cast<double>(micro_denom)
                            : 0.0;
  s.macro = macro_count > 0 ? macro_sum / macro_count : 0.0;
  return s;
}

double nmi(const LabelVector& a, const LabelVector& b) {
  check_pair(a, b, "nmi");
  if (a.empty()) throw std::invalid_argument("nmi: empty input");
  const int ka = num_labels(a), kb = num_labels(b);
  const double n = static_cast<double>(a.size());
  std::vector<long> ca(ka, 0), cb(kb, 0);
  std::map<std::pair<int, int>, long> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++ca[a[i]];
    ++cb[b[i]];
    ++joint[{a[i], b[i]}];
  }
  double ha = entropy(ca, n), hb = entropy(cb, n);
  if (ha + hb == 0.0) return 0.0;
  // I = H(a) + H(b) - H(a, b); identical partitions give exactly 1.
  double hab = 0.0;
  for (const auto& [key, count] : joint) {
    double p = static_cast<double>(count) / n;
    hab -= p * std::log(p);
  }
  double mi = ha + hb - hab;
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

double accuracy(const LabelVector& pred, const LabelVector& truth) {
  check_pair(pred, truth, "accuracy");
  if (pred.empty()) return 0.0;
  long hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == truth[i];
  return static_cast<double>(hit) / static_cast<double>(pred.size());
}

}  // namespace cagnn
