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
#include "cagnn/checkpoint.h"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "cagnn/io.h"

namespace cagnn {

namespace {

constexpr const char* kMagic = "cagnn-checkpoint";
constexpr int kVersion = 1;

std::string bits(double v) { return hex64(std::bit_cast<std::uint64_t>(v)); }

double from_bits(const std::string& token) {
  std::uint64_t u = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), u, 16);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.size() != 16) {
    throw ParseError("checkpoint: bad double bit pattern '" + token + "'", 0);
  }
  return std::bit_cast<double>(u);
}

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  out << "matrix " << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << bits(m(i, j));
    out << '\n';
  }
}

void expect(std::istream& in, const std::string& word) {
  std::string tok;
  if (!(in >> tok) || tok != word) {
    throw ParseError("checkpoint: expected '" + word + "', got '" + tok + "'", 0);
  }
}

DenseMatrix read_matrix(std::istream& in) {
  expect(in, "matrix");
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw ParseError("checkpoint: bad matrix shape", 0);
  }
  DenseMatrix m(rows, cols);
  std::string tok;
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!(in >> tok)) throw ParseError("checkpoint: truncated matrix", 0);
    m.data()[i] = from_bits(tok);
  }
  return m;
}

void write_matrices(std::ostream& out, const char* name, const std::vector<DenseMatrix>& ms) {
  out << name << ' ' << ms.size() << '\n';
  for (const auto& m : ms) write_matrix(out, m);
}

std::vector<DenseMatrix> read_matrices(std::istream& in, const char* name) {
  expect(in, name);
  std::size_t count = 0;
  if (!(in >> count)) throw ParseError(std::string("checkpoint: bad ") + name + " count", 0);
  std::vector<DenseMatrix> ms;
  for (std::size_t i = 0; i < count; ++i) ms.push_back(read_matrix(in));
  return ms;
}

}  // namespace

void save_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  out << kMagic << ' ' << kVersion << '\n';
  out << "epoch " << ckpt.epoch << '\n';
  std::vector<DenseMatrix> gcn = ckpt.params.gcn_weights;
  write_matrices(out, "gcn", gcn);
  write_matrices(out, "head", {ckpt.params.head_w1, ckpt.params.head_b1,
                               ckpt.params.head_w2, ckpt.params.head_b2});
  const AdamOptions& o = ckpt.adam.options;
  out << "adam " << ckpt.adam.step << ' ' << bits(o.lr) << ' ' << bits(o.beta1) << ' '
      << bits(o.beta2) << ' ' << bits(o.eps) << ' ' << bits(o.weight_decay) << '\n';
  write_matrices(out, "m1", ckpt.adam.first_moment);
  write_matrices(out, "m2", ckpt.adam.second_moment);
  out << "rng " << ckpt.rng << '\n';
  out << "end\n";
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  save_checkpoint(out, ckpt);
}

Checkpoint load_checkpoint(std::istream& in) {
  Checkpoint ckpt;
  expect(in, kMagic);
  int version = 0;
  if (!(in >> version) || version != kVersion) {
    throw ParseError("checkpoint: unsupported version " + std::to_string(version), 0);
  }
  expect(in, "epoch");
  in >> ckpt.epoch;
  ckpt.params.gcn_weights = read_matrices(in, "gcn");
  auto head = read_matrices(in, "head");
  if (head.size() != 4) throw ParseError("checkpoint: head must have 4 tensors", 0);
  ckpt.params.head_w1 = head[0];
  ckpt.params.head_b1 = head[1];
  ckpt.params.head_w2 = head[2];
  ckpt.params.head_b2 = head[3];
  expect(in, "adam");
  std::string lr, b1, b2, eps, wd;
  in >> ckpt.adam.step >> lr >> b1 >> b2 >> eps >> wd;
  ckpt.adam.options = {from_bits(lr), from_bits(b1), from_bits(b2), from_bits(eps),
                       from_bits(wd)};
  ckpt.adam.first_moment = read_matrices(in, "m1");
  ckpt.adam.second_moment = read_matrices(in, "m2");
  expect(in, "rng");
  in >> ckpt.rng;
  expect(in, "end");
  if (!in) throw ParseError("checkpoint: truncated", 0);
  return ckpt;
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("cannot open file: " + path.string());
  return load_checkpoint(in);
}

}  // namespace cagnn
