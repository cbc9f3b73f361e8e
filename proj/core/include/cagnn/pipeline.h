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
#ifndef CAGNN_PIPELINE_H_
#define CAGNN_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "cagnn/adam.h"
#include "cagnn/checkpoint.h"
#include "cagnn/evaluate.h"
#include "cagnn/graph.h"
#include "cagnn/kmeans.h"
#include "cagnn/model.h"
#include "cagnn/ot.h"
#include "cagnn/refine.h"

namespace cagnn {

struct TrainConfig {
  std::string dataset = "cora";
  int num_clusters = 10;
  int hidden_dim = 64;
  int embed_dim = 64;
  int head_hidden = 64;
  double lr = 0.01;
  double weight_decay = 0.0008;
  int epochs = 15;           // E
  int warmup = 1;            // W
  int updates = 7;           // U
  int pretrain_epochs = 500;
  int steps_per_epoch = 1;   // full-batch optimiser steps per epoch
  int neg_ratio = 5;
  OTConfig ot;
  RefineConfig refine;
  bool soft_refine = false;
  KMeansOptions kmeans;
  std::uint64_t seed = 0;

  static TrainConfig cora();
  static TrainConfig citeseer();
  static TrainConfig pubmed();
};

void validate(const TrainConfig& config);

// s_i = floor((E - W) i / (U + 1)) + W for i = 1..U, clipped into [W + 1, E]
// and deduplicated. Integer arithmetic throughout.
std::vector<int> update_schedule(int epochs, int warmup, int updates);

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  double purity = 0.0;
  double col_min = 0.0;  // smallest column sum of C
  double col_max = 0.0;
  std::size_t num_edges = 0;
  bool updated = false;  // C updated and graph refined this epoch
};

struct TrainResult {
  EmbeddingMatrix embeddings;  // computed on the final refined graph
  AssignmentMatrix assignments;
  ModelParams params;
  AdamState adam;
  Graph graph;                       // final refined graph
  std::vector<double> edge_weights;  // soft variant only, aligned with E0
  std::vector<int> schedule;
  std::vector<double> pretrain_losses;
  std::vector<EpochRecord> trace;
  std::mt19937_64 rng;
};

struct TrainHooks {
  std::function<void(const EpochRecord&)> on_epoch;
  // Called after every assignment update with the full resumable state.
  std::function<void(const Checkpoint&)> on_checkpoint;
  // Called after every assignment update with the new C and graph.
  std::function<void(int epoch, const AssignmentMatrix&, const Graph&)> on_update;
};

// E_pre epochs of Adam on the reconstruction loss, GCN weights only.
// Throws DivergenceError on a non-finite loss.
void pretrain(const Dataset& data, const TrainConfig& config, ModelParams& params,
              std::mt19937_64& rng, std::vector<double>* losses = nullptr);

TrainResult train(const Dataset& data, const TrainConfig& config, const TrainHooks& hooks = {});

enum class Variant { kFull, kNoRefine, kAddOnly, kRemoveOnly, kSoft };

Variant parse_variant(std::string_view name);
std::string_view variant_name(Variant v);
TrainConfig apply_variant(TrainConfig config, Variant v);

struct AblationResult {
  Variant variant = Variant::kFull;
  TrainResult train;
  EvalReport clustering;
  double truth_purity_original = 0.0;  // label agreement over E0
  double truth_purity_refined = 0.0;   // label agreement over the final graph
};

AblationResult run_ablation(const Dataset& data, const TrainConfig& config, Variant variant,
                            const ClusteringEvalOptions& eval = {});

// Fraction of edges whose endpoints share a ground-truth label (1 if none).
double label_purity(const Graph& g, const LabelVector& labels);

void write_trace_csv(std::ostream& out, const std::vector<EpochRecord>& trace);

}  // namespace cagnn

#endif  // CAGNN_PIPELINE_H_
