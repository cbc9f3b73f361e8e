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
#ifndef CAGNN_REFINE_H_
#define CAGNN_REFINE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "cagnn/graph.h"
#include "cagnn/types.h"

namespace cagnn {

struct RefineConfig {
  double tau_a = 0.999999;
  // Unset: tau_r = purity(current graph) / 2.
  std::optional<double> tau_r;
  bool restrict_candidates = true;  // only pairs sharing an argmax cluster
  bool add_enabled = true;
  bool remove_enabled = true;
  // New edges per refinement are capped at this multiple of |E0|.
  std::size_t add_cap_factor = 50;
};

struct RefineStats {
  std::size_t removed = 0;
  std::size_t added = 0;
  std::size_t pairs_scanned = 0;
  std::size_t capped = 0;  // candidates dropped by the cap
  double tau_r = 0.0;
  double purity_before = 0.0;
};

// c_i . c_j, the probability that i and j share a cluster.
double edge_score(const AssignmentMatrix& c, int i, int j);

// Mean edge score over g. An edge-free graph has purity 1 (and warns once
// on stderr unless quiet).
double purity(const Graph& g, const AssignmentMatrix& c, bool quiet = false);

// Keeps edges of `original` scoring >= tau_r and adds same-cluster pairs
// scoring > tau_a. The dynamic tau_r is half the purity of `current`.
Graph refine_topology(const Graph& original, const Graph& current, const AssignmentMatrix& c,
                      const RefineConfig& config, RefineStats* stats = nullptr);

Graph refine_topology(const Graph& original, const AssignmentMatrix& c,
                      const RefineConfig& config, RefineStats* stats = nullptr);

// One weight per edge of `original`, in edge order: c_i . c_j.
std::vector<double> soft_refine_weights(const Graph& original, const AssignmentMatrix& c);

}  // namespace cagnn

#endif  // CAGNN_REFINE_H_
