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
#ifndef CAGNN_MODEL_H_
#define CAGNN_MODEL_H_

#include <cstdint>
#include <random>
#include <vector>

#include "cagnn/autodiff.h"
#include "cagnn/graph.h"
#include "cagnn/types.h"

namespace cagnn {

struct ModelShape {
  int input_dim = 0;
  int hidden_dim = 64;
  int embed_dim = 64;
  int head_hidden = 64;
  int num_clusters = 2;
};

// Two-layer GCN encoder (m -> hidden -> d, no bias, ReLU between layers,
// linear output) followed by an MLP head (d -> head_hidden -> k).
struct ModelParams {
  std::vector<DenseMatrix> gcn_weights;
  DenseMatrix head_w1;
  DenseMatrix head_b1;  // 1 x head_hidden
  DenseMatrix head_w2;
  DenseMatrix head_b2;  // 1 x k

  // Flat views in a fixed order: gcn weights, then w1, b1, w2, b2.
  std::vector<DenseMatrix*> tensors();
  std::vector<const DenseMatrix*> tensors() const;
  std::size_t num_gcn_tensors() const { return gcn_weights.size(); }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// One gradient per tensor of ModelParams, same order and shapes.
struct Gradients {
  std::vector<DenseMatrix> tensors;
};

// Glorot-uniform weights, zero biases.
ModelParams init_params(const ModelShape& shape, std::mt19937_64& rng);

// Params bound as tape variables.
struct BoundParams {
  std::vector<Var> gcn;
  Var w1, b1, w2, b2;
  std::vector<Var> all() const;
};

BoundParams bind(Tape& tape, const ModelParams& params);

// H = S relu(S X W1) W2 recorded on the tape. The feature operand is sparse
// since bag-of-words inputs are mostly zero.
Var gcn_forward(Tape& tape, const NormalizedAdjacency& s, const SparseMatrix& x,
                const BoundParams& params);
Var head_logits(Tape& tape, Var embeddings, const BoundParams& params);

// Gradients of a recorded loss w.r.t. each bound tensor.
Gradients collect_gradients(const Tape& tape, const BoundParams& params);

// Tape-free conveniences.
EmbeddingMatrix gcn_forward(const NormalizedAdjacency& s, const FeatureMatrix& x,
                            const ModelParams& params);
DenseMatrix head_logits(const EmbeddingMatrix& h, const ModelParams& params);

double cross_entropy_loss(const DenseMatrix& logits, const AssignmentMatrix& c);

NegativeSamples sample_negatives(std::size_t num_edges, std::size_t num_nodes,
                                 int ratio, std::mt19937_64& rng);

// Edge reconstruction loss with negatives drawn from `seed`; identical
// inputs give identical loss.
double reconstruction_loss(const EmbeddingMatrix& h, const Graph& g, int neg_ratio,
                           std::uint64_t seed);

void check_shapes(const ModelParams& params, std::size_t input_dim);

}  // namespace cagnn

#endif  // CAGNN_MODEL_H_
