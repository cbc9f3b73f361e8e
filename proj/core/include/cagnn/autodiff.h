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
#ifndef CAGNN_AUTODIFF_H_
#define CAGNN_AUTODIFF_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cagnn/graph.h"
#include "cagnn/types.h"

namespace cagnn {

// Handle to a value recorded on a Tape.
struct Var {
  std::size_t id = static_cast<std::size_t>(-1);
};

// Uniform negative samples for the edge reconstruction loss: for edge e and
// draw t, the negative partner of edge.u is targets[e * ratio + t].
struct NegativeSamples {
  int ratio = 0;
  std::vector<int> targets;
};

// Reverse-mode tape covering exactly the operations of the encoder, the
// classifier head and the two training losses. Values are materialised on
// the forward pass; backward() walks the tape once in reverse.
//
// Sparse operands and target matrices passed by reference must outlive the
// tape.
class Tape {
 public:
  Var variable(DenseMatrix value);  // gradient is tracked
  Var constant(DenseMatrix value);

  const DenseMatrix& value(Var v) const { return nodes_[v.id].value; }
  const DenseMatrix& grad(Var v) const { return nodes_[v.id].grad; }
  double scalar(Var v) const { return nodes_[v.id].value(0, 0); }
  std::size_t size() const { return nodes_.size(); }

  Var matmul(Var a, Var b);
  // s * b with s a constant sparse operand.
  Var sparse_matmul(const SparseMatrix& s, Var b);
  // a + 1 * bias, bias is 1 x cols.
  Var add_row_bias(Var a, Var bias);
  Var relu(Var a);
  Var hadamard(Var a, Var b);
  Var sum(Var a);

  // -(1/n) sum_i sum_y targets(i,y) * log softmax(logits)(i,y). Scalar.
  Var softmax_cross_entropy(Var logits, const DenseMatrix& targets);

  // -(1/|E|) sum_(i,j) [log sig(h_i.h_j) + sum_t log sig(-h_i.h_neg)]. Scalar.
  Var edge_reconstruction(Var embeddings, std::span<const Edge> edges,
                          const NegativeSamples& negatives);

  // Seeds d(loss)/d(loss) = 1 and accumulates gradients into every node.
  void backward(Var loss);

 private:
  struct Node {
    DenseMatrix value;
    DenseMatrix grad;
    bool requires_grad = false;
    std::function<void(Tape&, std::size_t)> backprop;
  };

  Var push(DenseMatrix value, bool requires_grad,
           std::function<void(Tape&, std::size_t)> backprop);
  bool tracks(Var v) const { return nodes_[v.id].requires_grad; }
  DenseMatrix& grad_ref(Var v);

  std::vector<Node> nodes_;
};

// Numerically stable helpers shared by the losses and the OT cost.
DenseMatrix log_softmax_rows(const DenseMatrix& logits);
DenseMatrix softmax_rows(const DenseMatrix& logits);
double log_sigmoid(double x);
double sigmoid(double x);

}  // namespace cagnn

#endif  // CAGNN_AUTODIFF_H_
