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
#ifndef CAGNN_OT_H_
#define CAGNN_OT_H_

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "cagnn/types.h"

namespace cagnn {

// Floor applied to softmax probabilities before the log, so costs stay finite.
inline constexpr double kProbabilityFloor = 1e-30;
// Floor applied to exp(-mu * P), so the scaled matrix stays strictly positive.
inline constexpr double kKernelFloor = 1e-300;

// P = -log softmax(logits), row-wise, probabilities floored at
// kProbabilityFloor. Entries are >= 0 and finite.
DenseMatrix cost_matrix(const DenseMatrix& logits);

// rho(a, b) = b - a + a log(a / b); rho(0, b) = b. Throws if b <= 0 or a < 0.
double rho(double a, double b);

// Row and column targets of the transportation polytope.
struct Marginals {
  Vector rows;
  Vector cols;

  // r = 1 (length n), c = (n / k) 1 (length k).
  static Marginals equipartition(std::size_t n, std::size_t k);
};

struct OTConfig {
  double mu = 20.0;  // kernel temperature
  int iters = 1000;  // Greenkhorn iteration budget
};

struct GreenkhornOptions {
  int max_iterations = 1000;
  // Stop once the total rho-violation drops below this (0 = run the budget).
  double tolerance = 0.0;
  bool record_trace = false;
};

struct GreenkhornResult {
  DenseMatrix scaled;     // diag(x) * M0 * diag(y)
  Vector x;
  Vector y;
  int iterations = 0;
  double violation = 0.0;  // total rho-violation of `scaled`
  // Total violation before the first update and after every update.
  std::vector<double> violation_trace;
  // For each update: true = row, false = column; plus the index touched.
  std::vector<std::pair<bool, int>> updates;
};

// Greedy Sinkhorn: each iteration rescales only the single row or column
// with the largest rho-violation (row wins only on a strictly larger
// violation; argmax ties go to the smallest index).
GreenkhornResult greenkhorn(const DenseMatrix& m0, const Marginals& marginals,
                            const GreenkhornOptions& options);

// Sum of rho(target, achieved) over all rows and columns of m.
double total_violation(const DenseMatrix& m, const Marginals& marginals);

// Balanced assignment update: P = cost_matrix(logits), M0 = max(exp(-mu P),
// kKernelFloor), Greenkhorn toward equipartition marginals, then each row
// renormalised to sum exactly 1.
AssignmentMatrix update_assignments(const DenseMatrix& logits, const OTConfig& config,
                                    GreenkhornResult* diagnostics = nullptr);

// Writes "iteration,violation" lines for a recorded trace.
void write_violation_trace_csv(std::ostream& out, const GreenkhornResult& result);

}  // namespace cagnn

#endif  // CAGNN_OT_H_
