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
#include "cagnn/refine.h"

#include <algorithm>
#include <iostream>
#include <stdexcept>
#include <tuple>

#include "cagnn/kmeans.h"

namespace cagnn {

namespace {

void check_rows(const Graph& g, const AssignmentMatrix& c) {
  if (static_cast<std::size_t>(c.rows()) != g.num_nodes()) {
    throw std::invalid_argument("refine: assignment rows (" + std::to_string(c.rows()) +
                                ") != graph nodes (" + std::to_string(g.num_nodes()) + ")");
  }
}

struct Candidate {
  double score;
  Edge edge;
};

}  // namespace

double edge_score(const AssignmentMatrix& c, int i, int j) { return c.row(i).dot(c.row(j)); }

double purity(const Graph& g, const AssignmentMatrix& c, bool quiet) {
  check_rows(g, c);
  if (g.empty_edges()) {
    if (!quiet) std::cerr << "warning: purity of an edge-free graph taken as 1\n";
    return 1.0;
  }
  double total = 0.0;
  for (const Edge& e : g.edges()) total += edge_score(c, e.u, e.v);
  return total / static_cast<double>(g.num_edges());
}

Graph refine_topology(const Graph& original, const Graph& current, const AssignmentMatrix& c,
                      const RefineConfig& config, RefineStats* stats) {
  check_rows(original, c);
  check_rows(current, c);
  RefineStats local;
  local.purity_before = purity(current, c, /*quiet=*/true);
  local.tau_r = config.tau_r.value_or(0.5 * local.purity_before);

  std::vector<Edge> kept;
  kept.reserve(original.num_edges());
  bool remove = config.remove_enabled && !current.empty_edges();
  for (const Edge& e : original.edges()) {
    if (!remove || edge_score(c, e.u, e.v) >= local.tau_r) {
      kept.push_back(e);
    } else {
      ++local.removed;
    }
  }

  if (config.add_enabled) {
    const int n = static_cast<int>(original.num_nodes());
    std::vector<std::vector<int>> groups;
    if (config.restrict_candidates) {
      groups.resize(static_cast<std::size_t>(c.cols()));
      LabelVector labels = hard_labels(c);
      for (int i = 0; i < n; ++i) groups[labels[i]].push_back(i);
    } else {
      groups.emplace_back(n);
      for (int i = 0; i < n; ++i) groups[0][i] = i;
    }
    std::vector<Candidate> candidates;
    for (const auto& members : groups) {
      for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
          ++local.pairs_scanned;
          double s = edge_score(c, members[a], members[b]);
          if (s > config.tau_a && !original.has_edge(members[a], members[b])) {
            candidates.push_back({s, Edge(members[a], members[b])});
          }
        }
      }
    }
    std::size_t cap = config.add_cap_factor * original.num_edges();
    if (candidates.size() > cap) {
      std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        return std::tie(y.score, x.edge) < std::tie(x.score, y.edge);
      });
      local.capped = candidates.size() - cap;
      candidates.resize(cap);
    }
    local.added = candidates.size();
    for (const Candidate& cand : candidates) kept.push_back(cand.edge);
  }

  if (stats) *stats = local;
  return Graph(original.num_nodes(), std::move(kept));
}

Graph refine_topology(const Graph& original, const AssignmentMatrix& c,
                      const RefineConfig& config, RefineStats* stats) {
  return refine_topology(original, original, c, config, stats);
}

std::vector<double> soft_refine_weights(const Graph& original, const AssignmentMatrix& c) {
  check_rows(original, c);
  std::vector<double> w;
  w.reserve(original.num_edges());
  for (const Edge& e : original.edges()) w.push_back(edge_score(c, e.u, e.v));
  return w;
}

}  // namespace cagnn
