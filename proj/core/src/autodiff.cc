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
#include "cagnn/autodiff.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cagnn {

namespace {

void check_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
}

double dot_rows(const DenseMatrix& h, int a, int b) {
  return h.row(a).dot(h.row(b));
}

}  // namespace

double log_sigmoid(double x) {
  // log(1 / (1 + e^-x)) without overflow on either tail.
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

DenseMatrix log_softmax_rows(const DenseMatrix& logits) {
  DenseMatrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    double mx = logits.row(i).maxCoeff();
    double z = (logits.row(i).array() - mx).exp().sum();
    out.row(i) = logits.row(i).array() - mx - std::log(z);
  }
  return out;
}

DenseMatrix softmax_rows(const DenseMatrix& logits) {
  DenseMatrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    double mx = logits.row(i).maxCoeff();
    out.row(i) = (logits.row(i).array() - mx).exp();
    out.row(i) /= out.row(i).sum();
  }
  return out;
}

Var Tape::push(DenseMatrix value, bool requires_grad,
               std::function<void(Tape&, std::size_t)> backprop) {
  Node node;
  node.value = std::move(value);
  node.requires_grad = requires_grad;
  node.backprop = std::move(backprop);
  nodes_.push_back(std::move(node));
  return Var{nodes_.size() - 1};
}

DenseMatrix& Tape::grad_ref(Var v) {
  Node& node = nodes_[v.id];
  if (node.grad.rows() != node.value.rows() || node.grad.cols() != node.value.cols()) {
    node.grad = DenseMatrix::Zero(node.value.rows(), node.value.cols());
  }
  return node.grad;
}

Var Tape::variable(DenseMatrix value) { return push(std::move(value), true, nullptr); }

Var Tape::constant(DenseMatrix value) { return push(std::move(value), false, nullptr); }

Var Tape::matmul(Var a, Var b) {
  const DenseMatrix& av = value(a);
  const DenseMatrix& bv = value(b);
  if (av.cols() != bv.rows()) {
    throw std::invalid_argument("matmul: inner dimensions differ (" +
                                std::to_string(av.cols()) + " vs " +
                                std::to_string(bv.rows()) + ")");
  }
  DenseMatrix out = av * bv;
  bool rg = tracks(a) || tracks(b);
  return push(std::move(out), rg, [a, b](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].grad;
    if (t.tracks(a)) t.grad_ref(a).noalias() += g * t.value(b).transpose();
    if (t.tracks(b)) t.grad_ref(b).noalias() += t.value(a).transpose() * g;
  });
}

Var Tape::sparse_matmul(const SparseMatrix& s, Var b) {
  const DenseMatrix& bv = value(b);
  if (s.cols() != bv.rows()) {
    throw std::invalid_argument("sparse_matmul: inner dimensions differ (" +
                                std::to_string(s.cols()) + " vs " +
                                std::to_string(bv.rows()) + ")");
  }
  DenseMatrix out = s * bv;
  const SparseMatrix* sp = &s;
  return push(std::move(out), tracks(b), [sp, b](Tape& t, std::size_t self) {
    if (t.tracks(b)) t.grad_ref(b).noalias() += sp->transpose() * t.nodes_[self].grad;
  });
}

Var Tape::add_row_bias(Var a, Var bias) {
  const DenseMatrix& av = value(a);
  const DenseMatrix& bv = value(bias);
  if (bv.rows() != 1 || bv.cols() != av.cols()) {
    throw std::invalid_argument("add_row_bias: bias must be 1x" + std::to_string(av.cols()));
  }
  DenseMatrix out = av.rowwise() + bv.row(0);
  bool rg = tracks(a) || tracks(bias);
  return push(std::move(out), rg, [a, bias](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].grad;
    if (t.tracks(a)) t.grad_ref(a) += g;
    if (t.tracks(bias)) t.grad_ref(bias) += g.colwise().sum();
  });
}

Var Tape::relu(Var a) {
  DenseMatrix out = value(a).cwiseMax(0.0);
  return push(std::move(out), tracks(a), [a](Tape& t, std::size_t self) {
    if (!t.tracks(a)) return;
    const DenseMatrix& g = t.nodes_[self].grad;
    t.grad_ref(a).array() += (t.value(a).array() > 0.0).select(g.array(), 0.0);
  });
}

Var Tape::hadamard(Var a, Var b) {
  check_same_shape(value(a), value(b), "hadamard");
  DenseMatrix out = value(a).cwiseProduct(value(b));
  bool rg = tracks(a) || tracks(b);
  return push(std::move(out), rg, [a, b](Tape& t, std::size_t self) {
    const DenseMatrix& g = t.nodes_[self].grad;
    if (t.tracks(a)) t.grad_ref(a) += g.cwiseProduct(t.value(b));
    if (t.tracks(b)) t.grad_ref(b) += g.cwiseProduct(t.value(a));
  });
}

Var Tape::sum(Var a) {
  DenseMatrix out(1, 1);
  out(0, 0) = value(a).sum();
  return push(std::move(out), tracks(a), [a](Tape& t, std::size_t self) {
    if (t.tracks(a)) t.grad_ref(a).array() += t.nodes_[self].grad(0, 0);
  });
}

Var Tape::softmax_cross_entropy(Var logits, const DenseMatrix& targets) {
  const DenseMatrix& lv = value(logits);
  check_same_shape(lv, targets, "softmax_cross_entropy");
  if (lv.hasNaN() || targets.hasNaN()) {
    throw std::invalid_argument("softmax_cross_entropy: NaN in inputs");
  }
  if (lv.rows() == 0) throw std::invalid_argument("softmax_cross_entropy: empty batch");
  DenseMatrix logp = log_softmax_rows(lv);
  const double n = static_cast<double>(lv.rows());
  DenseMatrix out(1, 1);
  // 0 * log p contributes nothing even where p underflows.
  out(0, 0) = -(targets.array() * logp.array())
                   .unaryExpr([](double x) { return std::isnan(x) ? 0.0 : x; })
                   .sum() / n;
  const DenseMatrix* q = &targets;
  return push(std::move(out), tracks(logits), [logits, q, n](Tape& t, std::size_t self) {
    if (!t.tracks(logits)) return;
    double g = t.nodes_[self].grad(0, 0);
    DenseMatrix p = softmax_rows(t.value(logits));
    Vector mass = q->rowwise().sum();
    DenseMatrix d = p.array().colwise() * mass.array();
    d -= *q;
    t.grad_ref(logits) += (g / n) * d;
  });
}

Var Tape::edge_reconstruction(Var embeddings, std::span<const Edge> edges,
                              const NegativeSamples& negatives) {
  if (edges.empty()) throw std::invalid_argument("edge_reconstruction: empty edge set");
  const DenseMatrix& h = value(embeddings);
  const int ratio = negatives.ratio;
  if (negatives.targets.size() != edges.size() * static_cast<std::size_t>(ratio)) {
    throw std::invalid_argument("edge_reconstruction: negative sample count mismatch");
  }
  const double inv_e = 1.0 / static_cast<double>(edges.size());
  double total = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    total += log_sigmoid(dot_rows(h, ed.u, ed.v));
    for (int r = 0; r < ratio; ++r) {
      int neg = negatives.targets[e * ratio + r];
      total += log_sigmoid(-dot_rows(h, ed.u, neg));
    }
  }
  DenseMatrix out(1, 1);
  out(0, 0) = -total * inv_e;
  const Edge* edge_ptr = edges.data();
  const std::size_t num_edges = edges.size();
  const NegativeSamples* neg_ptr = &negatives;
  return push(std::move(out), tracks(embeddings),
              [embeddings, edge_ptr, num_edges, neg_ptr, inv_e](Tape& t, std::size_t self) {
                if (!t.tracks(embeddings)) return;
                const double g = t.nodes_[self].grad(0, 0) * inv_e;
                const DenseMatrix& hv = t.value(embeddings);
                DenseMatrix& dh = t.grad_ref(embeddings);
                const int ratio = neg_ptr->ratio;
                for (std::size_t e = 0; e < num_edges; ++e) {
                  const Edge& ed = edge_ptr[e];
                  // d/ds [-log sig(s)] = -(1 - sig(s)) = -sig(-s)
                  double cp = -sigmoid(-dot_rows(hv, ed.u, ed.v)) * g;
                  dh.row(ed.u) += cp * hv.row(ed.v);
                  dh.row(ed.v) += cp * hv.row(ed.u);
                  for (int r = 0; r < ratio; ++r) {
                    int neg = neg_ptr->targets[e * ratio + r];
                    // d/ds [-log sig(-s)] = sig(s)
                    double cn = sigmoid(dot_rows(hv, ed.u, neg)) * g;
                    dh.row(ed.u) += cn * hv.row(neg);
                    dh.row(neg) += cn * hv.row(ed.u);
                  }
                }
              });
}

void Tape::backward(Var loss) {
  if (value(loss).size() != 1) throw std::invalid_argument("backward: loss must be scalar");
  for (Node& node : nodes_) node.grad.resize(0, 0);
  grad_ref(loss)(0, 0) = 1.0;
  for (std::size_t id = loss.id + 1; id-- > 0;) {
    Node& node = nodes_[id];
    if (!node.requires_grad || !node.backprop || node.grad.size() == 0) continue;
    node.backprop(*this, id);
  }
}

}  // namespace cagnn
