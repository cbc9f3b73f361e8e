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
#include "cagnn/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include "cagnn/io.h"

namespace cagnn {

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.u < 0 || static_cast<std::size_t>(e.v) >= num_nodes_) {
      throw std::out_of_range("edge (" + std::to_string(e.u) + ", " +
                              std::to_string(e.v) + ") out of range for n=" +
                              std::to_string(num_nodes_));
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.u));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Graph::has_edge(int a, int b) const {
  if (a == b) return false;
  return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(num_nodes_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
    line.remove_suffix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
    line.remove_prefix(1);
  return line;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line_no, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'",
                     line_no);
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ParseError(std::string("non-finite ") + what, line_no);
    }
  }
  return value;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open file: " + path.string());
  return in;
}

}  // namespace

Dataset load_planetoid(const std::filesystem::path& content_file,
                       const std::filesystem::path& cites_file) {
  Dataset data;
  std::unordered_map<std::string, int> index_of;
  std::unordered_map<std::string, int> class_of;
  std::vector<std::vector<double>> rows;

  {
    std::ifstream in = open_or_throw(content_file);
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto tokens = split_ws(line);
      if (tokens.empty()) continue;
      if (tokens.size() < 2) {
        throw ParseError("expected '<id> <features...> <class>' in " +
                             content_file.string(), line_no);
      }
      std::string id(tokens.front());
      if (index_of.count(id)) {
        throw ParseError("duplicate node id '" + id + "'", line_no);
      }
      std::size_t m = tokens.size() - 2;
      if (rows.empty()) {
        width = m;
      } else if (m != width) {
        throw ParseError("expected " + std::to_string(width) + " features, got " +
                             std::to_string(m), line_no);
      }
      std::vector<double> row(m);
      for (std::size_t j = 0; j < m; ++j) {
        row[j] = parse_number<double>(tokens[j + 1], line_no, "feature value");
      }
      std::string cls(tokens.back());
      auto [it, inserted] = class_of.try_emplace(cls, static_cast<int>(class_of.size()));
      if (inserted) data.class_names.push_back(cls);
      data.labels.push_back(it->second);
      index_of.emplace(id, static_cast<int>(data.node_ids.size()));
      data.node_ids.push_back(std::move(id));
      rows.push_back(std::move(row));
    }
    data.features = FeatureMatrix::Zero(static_cast<Eigen::Index>(rows.size()),
                                        static_cast<Eigen::Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < width; ++j) data.features(i, j) = rows[i][j];
    }
    data.num_classes = static_cast<int>(data.class_names.size());
  }

  std::vector<Edge> edges;
  {
    std::ifstream in = open_or_throw(cites_file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto tokens = split_ws(line);
      if (tokens.empty()) continue;
      if (tokens.size() != 2) {
        throw ParseError("expected '<cited> <citing>' in " + cites_file.string(),
                         line_no);
      }
      ++data.stats.citation_lines;
      auto a = index_of.find(std::string(tokens[0]));
      auto b = index_of.find(std::string(tokens[1]));
      if (a == index_of.end() || b == index_of.end()) {
        ++data.stats.dropped_unknown;
        continue;
      }
      if (a->second == b->second) {
        ++data.stats.dropped_self_loops;
        continue;
      }
      edges.emplace_back(a->second, b->second);
    }
  }
  std::size_t kept = edges.size();
  data.graph = Graph(rows.size(), std::move(edges));
  data.stats.duplicate_pairs = kept - data.graph.num_edges();
  if (data.stats.dropped_unknown > 0) {
    std::cerr << "warning: dropped " << data.stats.dropped_unknown
              << " citation(s) with endpoints missing from " << content_file.string()
              << "\n";
  }
  return data;
}

Dataset read_canonical(std::istream& in) {
  enum class Section { kHeader, kFeatures, kEdges, kLabels, kIds, kClasses };
  Section section = Section::kHeader;
  Dataset data;
  std::size_t n = 0, m = 0;
  int k = 0;
  std::vector<char> row_seen;
  std::vector<char> label_seen;
  std::size_t rows_read = 0, labels_read = 0;
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line_no = 0;

  auto check_index = [&](std::string_view tok, std::size_t limit, const char* what) {
    auto idx = parse_number<long long>(tok, line_no, what);
    if (idx < 0 || static_cast<std::size_t>(idx) >= limit) {
      throw ParseError(std::string(what) + " " + std::string(tok) +
                           " out of range [0, " + std::to_string(limit) + ")",
                       line_no);
    }
    return static_cast<std::size_t>(idx);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip_comment(raw);
    if (line.empty()) continue;

    if (section == Section::kHeader) {
      auto tokens = split_ws(line);
      if (tokens.size() != 3) throw ParseError("header must be 'n m k_classes'", line_no);
      n = parse_number<std::size_t>(tokens[0], line_no, "node count");
      m = parse_number<std::size_t>(tokens[1], line_no, "feature count");
      k = parse_number<int>(tokens[2], line_no, "class count");
      if (k < 0) throw ParseError("negative class count", line_no);
      data.features = FeatureMatrix::Zero(static_cast<Eigen::Index>(n),
                                          static_cast<Eigen::Index>(m));
      row_seen.assign(n, 0);
      section = Section::kFeatures;
      continue;
    }

    if (line == "edges:" || line == "labels:" || line == "ids:" || line == "classes:") {
      if (section == Section::kFeatures && rows_read != n) {
        throw ParseError("expected " + std::to_string(n) + " feature rows, got " +
                             std::to_string(rows_read), line_no);
      }
      if (line == "edges:") section = Section::kEdges;
      if (line == "labels:") {
        section = Section::kLabels;
        data.labels.assign(n, 0);
        label_seen.assign(n, 0);
      }
      if (line == "ids:") {
        section = Section::kIds;
        data.node_ids.assign(n, std::string());
      }
      if (line == "classes:") {
        section = Section::kClasses;
        data.class_names.assign(static_cast<std::size_t>(k), std::string());
      }
      continue;
    }

    auto tokens = split_ws(line);
    switch (section) {
      case Section::kFeatures: {
        std::string_view head = tokens[0];
        bool dense = tokens.size() >= 2 && tokens[1] == "dense:";
        if (!dense) {
          if (head.empty() || head.back() != ':') {
            throw ParseError("feature row must start with 'idx:' or 'idx dense:'", line_no);
          }
          head.remove_suffix(1);
        }
        std::size_t row = check_index(head, n, "node index");
        if (row_seen[row]) throw ParseError("duplicate feature row " + std::string(head), line_no);
        row_seen[row] = 1;
        ++rows_read;
        if (dense) {
          if (tokens.size() - 2 != m) {
            throw ParseError("dense row has " + std::to_string(tokens.size() - 2) +
                                 " values, expected " + std::to_string(m), line_no);
          }
          for (std::size_t j = 0; j < m; ++j) {
            data.features(row, j) = parse_number<double>(tokens[j + 2], line_no, "value");
          }
        } else {
          for (std::size_t t = 1; t < tokens.size(); ++t) {
            auto colon = tokens[t].find(':');
            if (colon == std::string_view::npos) {
              throw ParseError("sparse entry must be 'j:v'", line_no);
            }
            std::size_t col = check_index(tokens[t].substr(0, colon), m, "feature index");
            data.features(row, col) =
                parse_number<double>(tokens[t].substr(colon + 1), line_no, "value");
          }
        }
        break;
      }
      case Section::kEdges: {
        if (tokens.size() != 2) throw ParseError("edge line must be 'i j'", line_no);
        std::size_t a = check_index(tokens[0], n, "edge endpoint");
        std::size_t b = check_index(tokens[1], n, "edge endpoint");
        if (a == b) throw ParseError("self-loop on node " + std::to_string(a), line_no);
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        break;
      }
      case Section::kLabels: {
        if (tokens.size() != 2) throw ParseError("label line must be 'idx label'", line_no);
        std::size_t idx = check_index(tokens[0], n, "node index");
        std::size_t label = check_index(tokens[1], static_cast<std::size_t>(k), "label");
        if (label_seen[idx]) throw ParseError("duplicate label for node", line_no);
        label_seen[idx] = 1;
        data.labels[idx] = static_cast<int>(label);
        ++labels_read;
        break;
      }
      case Section::kIds: {
        if (tokens.size() != 2) throw ParseError("id line must be 'idx id'", line_no);
        data.node_ids[check_index(tokens[0], n, "node index")] = std::string(tokens[1]);
        break;
      }
      case Section::kClasses: {
        if (tokens.size() != 2) throw ParseError("class line must be 'label name'", line_no);
        data.class_names[check_index(tokens[0], static_cast<std::size_t>(k), "label")] =
            std::string(tokens[1]);
        break;
      }
      case Section::kHeader:
        break;
    }
  }

  if (section == Section::kHeader) throw ParseError("missing header", 0);
  if (section == Section::kFeatures && rows_read != n) {
    throw ParseError("expected " + std::to_string(n) + " feature rows, got " +
                         std::to_string(rows_read), line_no);
  }
  if (!data.labels.empty() && labels_read != n) {
    throw ParseError("labels section covers " + std::to_string(labels_read) + " of " +
                         std::to_string(n) + " nodes", 0);
  }
  data.num_classes = k;
  data.graph = Graph(n, std::move(edges));
  return data;
}

Dataset load_canonical(const std::filesystem::path& dataset_file) {
  std::ifstream in = open_or_throw(dataset_file);
  return read_canonical(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "edges:\n";
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_canonical(std::ostream& out, const Dataset& data) {
  const auto n = static_cast<std::size_t>(data.features.rows());
  const auto m = static_cast<std::size_t>(data.features.cols());
  if (n != data.graph.num_nodes()) {
    throw std::invalid_argument("feature rows do not match graph node count");
  }
  out << "# cagnn canonical dataset\n";
  out << n << ' ' << m << ' ' << data.num_classes << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nnz = 0;
    for (std::size_t j = 0; j < m; ++j) nnz += data.features(i, j) != 0.0;
    if (2 * nnz <= m) {
      out << i << ':';
      for (std::size_t j = 0; j < m; ++j) {
        double v = data.features(i, j);
        if (v != 0.0) out << ' ' << j << ':' << format_double(v);
      }
    } else {
      out << i << " dense:";
      for (std::size_t j = 0; j < m; ++j) out << ' ' << format_double(data.features(i, j));
    }
    out << '\n';
  }
  write_edge_list(out, data.graph);
  if (!data.labels.empty()) {
    out << "labels:\n";
    for (std::size_t i = 0; i < data.labels.size(); ++i) {
      out << i << ' ' << data.labels[i] << '\n';
    }
  }
  if (!data.node_ids.empty()) {
    out << "ids:\n";
    for (std::size_t i = 0; i < data.node_ids.size(); ++i) {
      out << i << ' ' << data.node_ids[i] << '\n';
    }
  }
  if (!data.class_names.empty()) {
    out << "classes:\n";
    for (std::size_t c = 0; c < data.class_names.size(); ++c) {
      out << c << ' ' << data.class_names[c] << '\n';
    }
  }
}

void write_canonical(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  write_canonical(out, data);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

NormalizedAdjacency normalize_adjacency(const Graph& g) {
  std::vector<double> ones(g.num_edges(), 1.0);
  return normalize_adjacency(g, ones);
}

NormalizedAdjacency normalize_adjacency(const Graph& g, std::span<const double> weights) {
  if (weights.size() != g.num_edges()) {
    throw std::invalid_argument("edge weight count does not match edge count");
  }
  const std::size_t n = g.num_nodes();
  std::vector<double> degree(n, 1.0);  // self-loop
  auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    degree[edges[e].u] += weights[e];
    degree[edges[e].v] += weights[e];
  }
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n + 2 * edges.size());
  for (std::size_t i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, inv_sqrt[i] * inv_sqrt[i]);
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    double w = weights[e] * inv_sqrt[edges[e].u] * inv_sqrt[edges[e].v];
    triplets.emplace_back(edges[e].u, edges[e].v, w);
    triplets.emplace_back(edges[e].v, edges[e].u, w);
  }
  NormalizedAdjacency s;
  s.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  s.matrix.setFromTriplets(triplets.begin(), triplets.end());
  s.matrix.makeCompressed();
  return s;
}

SparseMatrix to_sparse(const DenseMatrix& m) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) triplets.emplace_back(i, j, m(i, j));
    }
  }
  SparseMatrix s(m.rows(), m.cols());
  s.setFromTriplets(triplets.begin(), triplets.end());
  s.makeCompressed();
  return s;
}

}  // namespace cagnn
