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
#ifndef CAGNN_ADAM_H_
#define CAGNN_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cagnn/types.h"

namespace cagnn {

struct AdamOptions {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;  // decoupled: theta -= lr * wd * theta

  friend bool operator==(const AdamOptions&, const AdamOptions&) = default;
};

struct AdamState {
  AdamOptions options;
  std::int64_t step = 0;
  std::vector<DenseMatrix> first_moment;
  std::vector<DenseMatrix> second_moment;

  friend bool operator==(const AdamState&, const AdamState&) = default;
};

// Zeroed moments shaped like `params`.
AdamState make_adam_state(std::span<DenseMatrix* const> params, const AdamOptions& options);

// One Adam update with bias correction. Decoupled weight decay is applied
// before the moment-based delta.
void adam_step(std::span<DenseMatrix* const> params,
               std::span<const DenseMatrix> grads, AdamState& state);

}  // namespace cagnn

#endif  // CAGNN_ADAM_H_
