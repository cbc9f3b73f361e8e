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
#include "cagnn/ot.h"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cagnn/autodiff.h"
#include "cagnn/io.h"

namespace cagnn {

DenseMatrix cost_matrix(const DenseMatrix& logits) {
  static const double kLogFloor = std::log(kProbabilityFloor);
  DenseMatrix logp = log_softmax_rows(logits);
  return -logp.cwiseMax(kLogFloor);
}

double rho(double a, double b) {
  if (!(b > 0.0)) throw std::domain_error("rho: b must be > 0, got " + std::to_string(b));
  if (a < 0.0) throw std::domain_error("rho: a must be >= 0, got " + std::to_string(a));
  if (a == 0.0) return b;
  // a * (d - log(1 + d)) with d = (b - a) / a; the short series avoids the
  // cancellation that would otherwise swamp tiny violations near convergence.
  double d = (b - a) / a;
  if (std::abs(d) < 1e-3) {
    return a * d * d * (0.5 - d * (1.0 / 3.0 - d * (0.25 - d * (0.2 - d / 6.0))));
  }
  return b - a + a * std::log(a / b);
}

Marginals Marginals::equipartition(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) throw std::invalid_argument("equipartition: n and k must be > 0");
  Marginals m;
  m.rows = Vector::Ones(static_cast<Eigen::Index>(n));
  m.cols = Vector::Constant(static_cast<Eigen::Index>(k),
                            static_cast<double>(n) / static_cast<double>(k));
  return m;
}

double total_violation(const DenseMatrix& m, const Marginals& marginals) {
  Vector r = m.rowwise().sum();
  Vector c = m.colwise().sum().transpose();
  double total = 0.0;
  for (Eigen::Index i = 0; i < r.size(); ++i) total += rho(marginals.rows[i], r[i]);
  for (Eigen::Index j = 0; j < c.size(); ++j) total += rho(marginals.cols[j], c[j]);
  return total;
}

GreenkhornResult greenkhorn(const DenseMatrix& m0, const Marginals& marginals,
                            const GreenkhornOptions& options) {
  const Eigen::Index n = m0.rows();
  const Eigen::Index k = m0.cols();
  if (n == 0 || k == 0) throw std::invalid_argument("greenkhorn: empty matrix");
  if (marginals.rows.size() != n || marginals.cols.size() != k) {
    throw std::invalid_argument("greenkhorn: marginal sizes do not match matrix shape");
  }
  if (!(m0.array() > 0.0).all() || !m0.allFinite()) {
    throw std::invalid_argument("greenkhorn: matrix entries must be finite and > 0");
  }
  double rsum = marginals.rows.sum(), csum = marginals.cols.sum();
  if (std::abs(rsum - csum) > 1e-9 * std::max(1.0, std::abs(rsum))) {
    throw std::invalid_argument("greenkhorn: marginals must have equal mass");
  }
  if (options.max_iterations < 0) throw std::invalid_argument("greenkhorn: negative budget");

  GreenkhornResult res;
  res.x = Vector::Ones(n);
  res.y = Vector::Ones(k);
  Vector row_sum = m0.rowwise().sum();
  Vector col_sum = m0.colwise().sum().transpose();
  Vector row_viol(n), col_viol(k);
  const Vector& r = marginals.rows;
  const Vector& c = marginals.cols;

  auto evaluate = [&] {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) total += row_viol[i] = rho(r[i], row_sum[i]);
    for (Eigen::Index j = 0; j < k; ++j) total += col_viol[j] = rho(c[j], col_sum[j]);
    return total;
  };
  auto refresh_sums = [&] {
    for (Eigen::Index i = 0; i < n; ++i) {
      row_sum[i] = res.x[i] * m0.row(i).dot(res.y.transpose());
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      col_sum[j] = res.y[j] * m0.col(j).dot(res.x);
    }
  };

  double total = evaluate();
  if (options.record_trace) res.violation_trace.push_back(total);
  const int refresh_every = static_cast<int>(n + k);

  while (res.iterations < options.max_iterations &&
         !(options.tolerance > 0.0 && total < options.tolerance)) {
    Eigen::Index row_i = 0, col_j = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (row_viol[i] > row_viol[row_i]) row_i = i;
    }
    for (Eigen::Index j = 1; j < k; ++j) {
      if (col_viol[j] > col_viol[col_j]) col_j = j;
    }
    if (row_viol[row_i] > col_viol[col_j]) {
      double old_x = res.x[row_i];
      double new_x = old_x * r[row_i] / row_sum[row_i];
      res.x[row_i] = new_x;
      double delta = new_x - old_x;
      for (Eigen::Index j = 0; j < k; ++j) col_sum[j] += delta * m0(row_i, j) * res.y[j];
      row_sum[row_i] = new_x * m0.row(row_i).dot(res.y.transpose());
      if (options.record_trace) res.updates.emplace_back(true, static_cast<int>(row_i));
    } else {
      double old_y = res.y[col_j];
      double new_y = old_y * c[col_j] / col_sum[col_j];
      res.y[col_j] = new_y;
      double delta = new_y - old_y;
      for (Eigen::Index i = 0; i < n; ++i) row_sum[i] += delta * res.x[i] * m0(i, col_j);
      col_sum[col_j] = new_y * m0.col(col_j).dot(res.x);
      if (options.record_trace) res.updates.emplace_back(false, static_cast<int>(col_j));
    }
    ++res.iterations;
    if (res.iterations % refresh_every == 0) refresh_sums();
    total = evaluate();
    if (options.record_trace) res.violation_trace.push_back(total);
  }

  res.scaled = res.x.asDiagonal() * m0 * res.y.asDiagonal();
  res.violation = total_violation(res.scaled, marginals);
  return res;
}

AssignmentMatrix update_assignments(const DenseMatrix& logits, const OTConfig& config,
                                    GreenkhornResult* diagnostics) {
  if (!(config.mu > 0.0)) throw std::invalid_argument("update_assignments: mu must be > 0");
  if (config.iters < 1) throw std::invalid_argument("update_assignments: iters must be >= 1");
  if (logits.hasNaN()) throw std::invalid_argument("update_assignments: NaN in logits");
  DenseMatrix p = cost_matrix(logits);
  DenseMatrix m0 = (-config.mu * p).array().exp().cwiseMax(kKernelFloor);
  GreenkhornOptions opts;
  opts.max_iterations = config.iters;
  opts.record_trace = diagnostics != nullptr;
  GreenkhornResult res = greenkhorn(
      m0,
      Marginals::equipartition(static_cast<std::size_t>(logits.rows()),
                               static_cast<std::size_t>(logits.cols())),
      opts);
  AssignmentMatrix c = res.scaled;
  for (Eigen::Index i = 0; i < c.rows(); ++i) c.row(i) /= c.row(i).sum();
  if (diagnostics) *diagnostics = std::move(res);
  return c;
}

void write_violation_trace_csv(std::ostream& out, const GreenkhornResult& result) {
  out << "iteration,violation\n";
  for (std::size_t t = 0; t < result.violation_trace.size(); ++t) {
    out << t << ',' << format_double(result.violation_trace[t]) << '\n';
  }
}

}  // namespace cagnn
