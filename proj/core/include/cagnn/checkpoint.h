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
#ifndef CAGNN_CHECKPOINT_H_
#define CAGNN_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>
#include <random>

#include "cagnn/adam.h"
#include "cagnn/model.h"

namespace cagnn {

struct Checkpoint {
  ModelParams params;
  AdamState adam;
  std::mt19937_64 rng;
  int epoch = 0;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Versioned text dump. Doubles are stored as their IEEE-754 bit patterns, so
// a save/load round trip is bit-exact.
void save_checkpoint(std::ostream& out, const Checkpoint& ckpt);
void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace cagnn

#endif  // CAGNN_CHECKPOINT_H_
