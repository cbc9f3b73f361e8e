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
#include "cagnn/pipeline.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cagnn/io.h"

namespace cagnn {

TrainConfig TrainConfig::cora() { return TrainConfig{}; }

TrainConfig TrainConfig::citeseer() {
  TrainConfig c;
  c.dataset = "citeseer";
  c.num_clusters = 11;
  c.epochs = 60;
  c.warmup = 8;
  c.updates = 7;
  c.pretrain_epochs = 250;
  return c;
}

TrainConfig TrainConfig::pubmed() {
  TrainConfig c;
  c.dataset = "pubmed";
  c.num_clusters = 5;
  c.epochs = 50;
  c.warmup = 2;
  c.updates = 6;
  c.pretrain_epochs = 500;
  return c;
}

void validate(const TrainConfig& c) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
  if (c.num_clusters < 2) fail("num_clusters must be >= 2");
  if (c.hidden_dim < 1 || c.embed_dim < 1 || c.head_hidden < 1) fail("widths must be >= 1");
  if (!(c.lr > 0.0)) fail("lr must be > 0");
  if (c.weight_decay < 0.0) fail("weight_decay must be >= 0");
  if (c.epochs < 1) fail("epochs must be >= 1");
  if (c.warmup < 0 || c.warmup >= c.epochs) fail("warmup must satisfy 0 <= W < E");
  if (c.updates < 0) fail("updates must be >= 0");
  if (c.pretrain_epochs < 0) fail("pretrain_epochs must be >= 0");
  if (c.steps_per_epoch < 1) fail("steps_per_epoch must be >= 1");
  if (c.neg_ratio < 1) fail("neg_ratio must be >= 1");
  if (!(c.ot.mu > 0.0)) fail("mu must be > 0");
  if (c.ot.iters < 1) fail("ot_iters must be >= 1");
  if (!(c.refine.tau_a >= 0.0 && c.refine.tau_a <= 1.0)) fail("tau_a must be in [0, 1]");
  if (c.refine.tau_r && !(*c.refine.tau_r >= 0.0 && *c.refine.tau_r <= 1.0)) {
    fail("tau_r must be in [0, 1]");
  }
  if (c.kmeans.restarts < 1) fail("kmeans_restarts must be >= 1");
}

std::vector<int> update_schedule(int epochs, int warmup, int updates) {
  if (warmup < 0 || warmup >= epochs || updates < 1) {
    throw std::invalid_argument("update_schedule: need 0 <= W < E and U >= 1, got E=" +
                                std::to_string(epochs) + " W=" + std::to_string(warmup) +
                                " U=" + std::to_string(updates));
  }
  std::vector<int> s;
  const long long span = epochs - warmup;
  for (int i = 1; i <= updates; ++i) {
    long long e = span * i / (updates + 1) + warmup;
    e = std::clamp<long long>(e, warmup + 1, epochs);
    if (s.empty() || s.back() != e) s.push_back(static_cast<int>(e));
  }
  return s;
}

namespace {

void check_dataset(const Dataset& data) {
  if (static_cast<std::size_t>(data.features.rows()) != data.graph.num_nodes()) {
    throw std::invalid_argument("dataset: feature rows (" + std::to_string(data.features.rows()) +
                                ") != nodes (" + std::to_string(data.graph.num_nodes()) + ")");
  }
  if (!data.features.allFinite()) throw std::invalid_argument("dataset: non-finite features");
}

void check_finite(double loss, const char* phase, int epoch) {
  if (!std::isfinite(loss)) {
    throw DivergenceError(std::string(phase) + " diverged at epoch " + std::to_string(epoch) +
                          ": loss is " + std::to_string(loss));
  }
}

std::pair<double, double> column_sum_range(const AssignmentMatrix& c) {
  Eigen::RowVectorXd cols = c.colwise().sum();
  return {cols.minCoeff(), cols.maxCoeff()};
}

}  // namespace

void pretrain(const Dataset& data, const TrainConfig& config, ModelParams& params,
              std::mt19937_64& rng, std::vector<double>* losses) {
  if (config.pretrain_epochs == 0) return;
  check_dataset(data);
  const Graph& g = data.graph;
  if (g.empty_edges()) throw std::invalid_argument("pretrain: graph has no edges");
  check_shapes(params, static_cast<std::size_t>(data.features.cols()));
  NormalizedAdjacency s = normalize_adjacency(g);
  SparseMatrix x = to_sparse(data.features);
  std::vector<DenseMatrix*> gcn;
  for (auto& w : params.gcn_weights) gcn.push_back(&w);
  AdamState adam = make_adam_state(gcn, {config.lr, 0.9, 0.999, 1e-8, config.weight_decay});
  for (int epoch = 1; epoch <= config.pretrain_epochs; ++epoch) {
    NegativeSamples neg = sample_negatives(g.num_edges(), g.num_nodes(), config.neg_ratio, rng);
    Tape tape;
    BoundParams b = bind(tape, params);
    Var loss = tape.edge_reconstruction(gcn_forward(tape, s, x, b), g.edges(), neg);
    check_finite(tape.scalar(loss), "pretraining", epoch);
    if (losses) losses->push_back(tape.scalar(loss));
    tape.backward(loss);
    std::vector<DenseMatrix> grads;
    for (Var v : b.gcn) grads.push_back(tape.grad(v));
    adam_step(gcn, grads, adam);
  }
}

TrainResult train(const Dataset& data, const TrainConfig& config, const TrainHooks& hooks) {
  validate(config);
  check_dataset(data);
  const Graph& original = data.graph;
  const int n = static_cast<int>(original.num_nodes());
  if (config.num_clusters > n) {
    throw std::invalid_argument("config: num_clusters (" + std::to_string(config.num_clusters) +
                                ") exceeds node count (" + std::to_string(n) + ")");
  }

  TrainResult out;
  out.rng.seed(config.seed);
  ModelShape shape{static_cast<int>(data.features.cols()), config.hidden_dim, config.embed_dim,
                   config.head_hidden, config.num_clusters};
  out.params = init_params(shape, out.rng);
  pretrain(data, config, out.params, out.rng, &out.pretrain_losses);

  SparseMatrix x = to_sparse(data.features);
  NormalizedAdjacency s = normalize_adjacency(original);
  EmbeddingMatrix h = gcn_forward(s, data.features, out.params);
  KMeansResult init = kmeans(h, config.num_clusters, out.rng(), config.kmeans);
  AssignmentMatrix c = one_hot(init.labels, config.num_clusters);

  out.graph = original;
  if (config.updates > 0) {
    out.schedule = update_schedule(config.epochs, config.warmup, config.updates);
  }
  std::vector<DenseMatrix*> tensors = out.params.tensors();
  out.adam = make_adam_state(tensors, {config.lr, 0.9, 0.999, 1e-8, config.weight_decay});
  const bool refine_any = config.refine.add_enabled || config.refine.remove_enabled;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    EpochRecord rec;
    rec.epoch = epoch;
    for (int step = 0; step < config.steps_per_epoch; ++step) {
      Tape tape;
      BoundParams b = bind(tape, out.params);
      Var logits = head_logits(tape, gcn_forward(tape, s, x, b), b);
      Var loss = tape.softmax_cross_entropy(logits, c);
      rec.loss = tape.scalar(loss);
      check_finite(rec.loss, "training", epoch);
      tape.backward(loss);
      Gradients g = collect_gradients(tape, b);
      adam_step(tensors, g.tensors, out.adam);
    }

    if (std::binary_search(out.schedule.begin(), out.schedule.end(), epoch)) {
      rec.updated = true;
      h = gcn_forward(s, data.features, out.params);
      c = update_assignments(head_logits(h, out.params), config.ot);
      if (config.soft_refine) {
        out.edge_weights = soft_refine_weights(original, c);
        s = normalize_adjacency(original, out.edge_weights);
      } else if (refine_any) {
        out.graph = refine_topology(original, out.graph, c, config.refine);
        s = normalize_adjacency(out.graph);
      }
      if (hooks.on_update) hooks.on_update(epoch, c, out.graph);
      if (hooks.on_checkpoint) hooks.on_checkpoint(Checkpoint{out.params, out.adam, out.rng, epoch});
    }

    rec.purity = purity(out.graph, c, /*quiet=*/true);
    std::tie(rec.col_min, rec.col_max) = column_sum_range(c);
    rec.num_edges = out.graph.num_edges();
    out.trace.push_back(rec);
    if (hooks.on_epoch) hooks.on_epoch(rec);
  }

  out.embeddings = gcn_forward(s, data.features, out.params);
  out.assignments = std::move(c);
  return out;
}

Variant parse_variant(std::string_view name) {
  if (name == "full") return Variant::kFull;
  if (name == "no-refine") return Variant::kNoRefine;
  if (name == "add-only") return Variant::kAddOnly;
  if (name == "remove-only") return Variant::kRemoveOnly;
  if (name == "soft") return Variant::kSoft;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (expected full, no-refine, add-only, remove-only or soft)");
}

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::kFull: return "full";
    case Variant::kNoRefine: return "no-refine";
    case Variant::kAddOnly: return "add-only";
    case Variant::kRemoveOnly: return "remove-only";
    case Variant::kSoft: return "soft";
  }
  return "full";
}

TrainConfig apply_variant(TrainConfig config, Variant v) {
  config.soft_refine = false;
  switch (v) {
    case Variant::kFull:
      config.refine.add_enabled = config.refine.remove_enabled = true;
      break;
    case Variant::kNoRefine:
      config.refine.add_enabled = config.refine.remove_enabled = false;
      break;
    case Variant::kAddOnly:
      config.refine.add_enabled = true;
      config.refine.remove_enabled = false;
      break;
    case Variant::kRemoveOnly:
      config.refine.add_enabled = false;
      config.refine.remove_enabled = true;
      break;
    case Variant::kSoft:
      config.refine.add_enabled = config.refine.remove_enabled = false;
      config.soft_refine = true;
      break;
  }
  return config;
}

double label_purity(const Graph& g, const LabelVector& labels) {
  if (labels.size() != g.num_nodes()) {
    throw std::invalid_argument("label_purity: label count does not match node count");
  }
  if (g.empty_edges()) return 1.0;
  std::size_t same = 0;
  for (const Edge& e : g.edges()) same += labels[e.u] == labels[e.v];
  return static_cast<double>(same) / static_cast<double>(g.num_edges());
}

AblationResult run_ablation(const Dataset& data, const TrainConfig& config, Variant variant,
                            const ClusteringEvalOptions& eval) {
  AblationResult r;
  r.variant = variant;
  r.train = train(data, apply_variant(config, variant));
  if (!data.labels.empty()) {
    r.clustering = evaluate_clustering(r.train.embeddings, data.labels, data.num_classes,
                                       config.seed, eval);
    r.truth_purity_original = label_purity(data.graph, data.labels);
    r.truth_purity_refined = label_purity(r.train.graph, data.labels);
  }
  return r;
}

void write_trace_csv(std::ostream& out, const std::vector<EpochRecord>& trace) {
  out << "epoch,loss,purity,col_sum_min,col_sum_max,edges,updated\n";
  for (const EpochRecord& r : trace) {
    out << r.epoch << ',' << format_double(r.loss) << ',' << format_double(r.purity) << ','
        << format_double(r.col_min) << ',' << format_double(r.col_max) << ',' << r.num_edges
        << ',' << (r.updated ? 1 : 0) << '\n';
  }
}

}  // namespace cagnn
