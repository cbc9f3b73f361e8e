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
#include "cagnn/adam.h"

#include <cmath>
#include <stdexcept>

namespace cagnn {

AdamState make_adam_state(std::span<DenseMatrix* const> params, const AdamOptions& options) {
  AdamState state;
  state.options = options;
  for (const DenseMatrix* p : params) {
    state.first_moment.push_back(DenseMatrix::Zero(p->rows(), p->cols()));
    state.second_moment.push_back(DenseMatrix::Zero(p->rows(), p->cols()));
  }
  return state;
}

void adam_step(std::span<DenseMatrix* const> params, std::span<const DenseMatrix> grads,
               AdamState& state) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
    throw std::invalid_argument("adam_step: parameter/gradient/state counts differ");
  }
  const AdamOptions& o = state.options;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(o.beta1, t);
  const double bc2 = 1.0 - std::pow(o.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    DenseMatrix& p = *params[i];
    const DenseMatrix& g = grads[i];
    if (p.rows() != g.rows() || p.cols() != g.cols() ||
        p.rows() != state.first_moment[i].rows() || p.cols() != state.first_moment[i].cols()) {
      throw std::invalid_argument("adam_step: shape mismatch for tensor " + std::to_string(i));
    }
    DenseMatrix& m = state.first_moment[i];
    DenseMatrix& v = state.second_moment[i];
    if (o.weight_decay != 0.0) p *= (1.0 - o.lr * o.weight_decay);
    m = o.beta1 * m + (1.0 - o.beta1) * g;
    v = o.beta2 * v + (1.0 - o.beta2) * g.cwiseProduct(g);
    p.array() -= o.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + o.eps);
  }
}

}  // namespace cagnn
