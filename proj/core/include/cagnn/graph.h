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
#ifndef CAGNN_GRAPH_H_
#define CAGNN_GRAPH_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cagnn/types.h"

namespace cagnn {

// Unordered node pair, stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph. Self-loops and out-of-range endpoints are
// rejected; duplicate pairs (in either orientation) collapse to one edge.
// Edges are kept sorted, so two graphs with the same edge set compare equal.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t num_nodes) : num_nodes_(num_nodes) {}
  Graph(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  bool empty_edges() const { return edges_.empty(); }

  bool has_edge(int a, int b) const;

  // Adjacency lists (both directions), indexed by node.
  std::vector<std::vector<int>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<Edge> edges_;
};

struct IngestStats {
  std::size_t citation_lines = 0;   // raw lines in the cites file
  std::size_t dropped_unknown = 0;  // endpoints missing from content file
  std::size_t dropped_self_loops = 0;
  std::size_t duplicate_pairs = 0;  // repeated or reciprocal citations
};

// A loaded dataset. labels/class_names are empty when the source carries no
// ground truth. node_ids records the original identifier of each index.
struct Dataset {
  Graph graph;
  FeatureMatrix features;
  LabelVector labels;
  int num_classes = 0;
  std::vector<std::string> node_ids;
  std::vector<std::string> class_names;
  IngestStats stats;
};

// Planetoid .content/.cites pair. Node ids map to indices in content-file
// order, class names to ids in first-appearance order. Citations whose
// endpoints are missing from the content file are dropped and counted.
Dataset load_planetoid(const std::filesystem::path& content_file,
                       const std::filesystem::path& cites_file);

// Line-oriented canonical format:
//
//   n m k_classes
//   idx: j:v j:v ...          (sparse row)  or  idx dense: v v ...
//   edges:
//   i j
//   labels:                   (optional)
//   idx label
//   ids:                      (optional, original node identifiers)
//   idx id
//   classes:                  (optional, class names)
//   label name
//
// '#' starts a comment. Values are written in shortest round-trip form, so
// read(write(d)) == d and write(read(write(d))) is byte-identical.
Dataset load_canonical(const std::filesystem::path& dataset_file);
Dataset read_canonical(std::istream& in);
void write_canonical(std::ostream& out, const Dataset& data);
void write_canonical(const std::filesystem::path& path, const Dataset& data);

// Edge list section only, in the canonical "edges:" format.
void write_edge_list(std::ostream& out, const Graph& g);

// S = D^-1/2 (A + I) D^-1/2 over the undirected graph.
struct NormalizedAdjacency {
  SparseMatrix matrix;

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

NormalizedAdjacency normalize_adjacency(const Graph& g);

// Weighted variant: A_ij = weights[e] for edge e (same order as g.edges()).
// Self-loops keep weight 1.
NormalizedAdjacency normalize_adjacency(const Graph& g,
                                        std::span<const double> weights);

// Sparse copy of a dense matrix, dropping exact zeros.
SparseMatrix to_sparse(const DenseMatrix& m);

}  // namespace cagnn

#endif  // CAGNN_GRAPH_H_
