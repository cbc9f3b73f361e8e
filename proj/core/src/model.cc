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
#include "cagnn/model.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cagnn {

std::vector<DenseMatrix*> ModelParams::tensors() {
  std::vector<DenseMatrix*> out;
  for (auto& w : gcn_weights) out.push_back(&w);
  out.insert(out.end(), {&head_w1, &head_b1, &head_w2, &head_b2});
  return out;
}

std::vector<const DenseMatrix*> ModelParams::tensors() const {
  std::vector<const DenseMatrix*> out;
  for (const auto& w : gcn_weights) out.push_back(&w);
  out.insert(out.end(), {&head_w1, &head_b1, &head_w2, &head_b2});
  return out;
}

namespace {

DenseMatrix glorot(int fan_in, int fan_out, std::mt19937_64& rng) {
  double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  DenseMatrix w(fan_in, fan_out);
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = dist(rng);
  return w;
}

}  // namespace

ModelParams init_params(const ModelShape& shape, std::mt19937_64& rng) {
  if (shape.input_dim <= 0 || shape.hidden_dim <= 0 || shape.embed_dim <= 0 ||
      shape.head_hidden <= 0 || shape.num_clusters <= 0) {
    throw std::invalid_argument("init_params: all dimensions must be positive");
  }
  ModelParams p;
  p.gcn_weights.push_back(glorot(shape.input_dim, shape.hidden_dim, rng));
  p.gcn_weights.push_back(glorot(shape.hidden_dim, shape.embed_dim, rng));
  p.head_w1 = glorot(shape.embed_dim, shape.head_hidden, rng);
  p.head_b1 = DenseMatrix::Zero(1, shape.head_hidden);
  p.head_w2 = glorot(shape.head_hidden, shape.num_clusters, rng);
  p.head_b2 = DenseMatrix::Zero(1, shape.num_clusters);
  return p;
}

void check_shapes(const ModelParams& params, std::size_t input_dim) {
  if (params.gcn_weights.empty()) throw std::invalid_argument("model has no GCN layers");
  Eigen::Index width = static_cast<Eigen::Index>(input_dim);
  for (std::size_t l = 0; l < params.gcn_weights.size(); ++l) {
    if (params.gcn_weights[l].rows() != width) {
      throw std::invalid_argument("GCN layer " + std::to_string(l + 1) + " expects " +
                                  std::to_string(params.gcn_weights[l].rows()) +
                                  " inputs, got " + std::to_string(width));
    }
    width = params.gcn_weights[l].cols();
  }
  if (params.head_w1.rows() != width || params.head_b1.rows() != 1 ||
      params.head_b1.cols() != params.head_w1.cols() ||
      params.head_w2.rows() != params.head_w1.cols() || params.head_b2.rows() != 1 ||
      params.head_b2.cols() != params.head_w2.cols()) {
    throw std::invalid_argument("classifier head shapes are inconsistent");
  }
}

std::vector<Var> BoundParams::all() const {
  std::vector<Var> out = gcn;
  out.insert(out.end(), {w1, b1, w2, b2});
  return out;
}

BoundParams bind(Tape& tape, const ModelParams& params) {
  BoundParams b;
  for (const auto& w : params.gcn_weights) b.gcn.push_back(tape.variable(w));
  b.w1 = tape.variable(params.head_w1);
  b.b1 = tape.variable(params.head_b1);
  b.w2 = tape.variable(params.head_w2);
  b.b2 = tape.variable(params.head_b2);
  return b;
}

Var gcn_forward(Tape& tape, const NormalizedAdjacency& s, const SparseMatrix& x,
                const BoundParams& params) {
  if (static_cast<std::size_t>(x.rows()) != s.size()) {
    throw std::invalid_argument("gcn_forward: feature rows (" + std::to_string(x.rows()) +
                                ") do not match graph size (" + std::to_string(s.size()) +
                                ")");
  }
  if (params.gcn.empty()) throw std::invalid_argument("gcn_forward: no layers");
  if (tape.value(params.gcn.front()).rows() != x.cols()) {
    throw std::invalid_argument("gcn_forward: layer 1 expects " +
                                std::to_string(tape.value(params.gcn.front()).rows()) +
                                " features, got " + std::to_string(x.cols()));
  }
  // First layer: S (X W1); X is a constant sparse operand.
  Var h = tape.sparse_matmul(s.matrix, tape.sparse_matmul(x, params.gcn.front()));
  for (std::size_t l = 1; l < params.gcn.size(); ++l) {
    h = tape.relu(h);
    h = tape.sparse_matmul(s.matrix, tape.matmul(h, params.gcn[l]));
  }
  return h;
}

Var head_logits(Tape& tape, Var embeddings, const BoundParams& params) {
  Var z = tape.relu(tape.add_row_bias(tape.matmul(embeddings, params.w1), params.b1));
  return tape.add_row_bias(tape.matmul(z, params.w2), params.b2);
}

Gradients collect_gradients(const Tape& tape, const BoundParams& params) {
  Gradients g;
  for (Var v : params.all()) {
    const DenseMatrix& grad = tape.grad(v);
    if (grad.size() == 0) {
      g.tensors.push_back(DenseMatrix::Zero(tape.value(v).rows(), tape.value(v).cols()));
    } else {
      g.tensors.push_back(grad);
    }
  }
  return g;
}

EmbeddingMatrix gcn_forward(const NormalizedAdjacency& s, const FeatureMatrix& x,
                            const ModelParams& params) {
  check_shapes(params, static_cast<std::size_t>(x.cols()));
  SparseMatrix xs = to_sparse(x);
  Tape tape;
  BoundParams b = bind(tape, params);
  return tape.value(gcn_forward(tape, s, xs, b));
}

DenseMatrix head_logits(const EmbeddingMatrix& h, const ModelParams& params) {
  if (h.cols() != params.head_w1.rows()) {
    throw std::invalid_argument("head_logits: embedding width " + std::to_string(h.cols()) +
                                " does not match head input " +
                                std::to_string(params.head_w1.rows()));
  }
  Tape tape;
  BoundParams b = bind(tape, params);
  return tape.value(head_logits(tape, tape.constant(h), b));
}

double cross_entropy_loss(const DenseMatrix& logits, const AssignmentMatrix& c) {
  Tape tape;
  return tape.scalar(tape.softmax_cross_entropy(tape.constant(logits), c));
}

NegativeSamples sample_negatives(std::size_t num_edges, std::size_t num_nodes, int ratio,
                                 std::mt19937_64& rng) {
  if (ratio < 1) throw std::invalid_argument("negative ratio must be >= 1");
  if (num_nodes == 0) throw std::invalid_argument("cannot sample negatives from 0 nodes");
  NegativeSamples neg;
  neg.ratio = ratio;
  neg.targets.resize(num_edges * static_cast<std::size_t>(ratio));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(num_nodes) - 1);
  for (int& t : neg.targets) t = pick(rng);
  return neg;
}

double reconstruction_loss(const EmbeddingMatrix& h, const Graph& g, int neg_ratio,
                           std::uint64_t seed) {
  if (g.empty_edges()) throw std::invalid_argument("reconstruction_loss: empty edge set");
  std::mt19937_64 rng(seed);
  NegativeSamples neg = sample_negatives(g.num_edges(), g.num_nodes(), neg_ratio, rng);
  Tape tape;
  return tape.scalar(tape.edge_reconstruction(tape.constant(h), g.edges(), neg));
}

}  // namespace cagnn
