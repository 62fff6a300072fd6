// Copyright 2026 The XLinker Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// L2-regularized binary logistic regression, solved with L-BFGS.

#pragma once

#include <cstddef>
#include <vector>

#include "xlinker/sparse.hpp"

namespace xlinker {

struct LogRegResult {
  std::vector<double> weights;  // dense, length dim
  bool converged = false;
  std::size_t iterations = 0;
  double grad_norm = 0.0;
};

// Minimizes lambda/2 * ||w||^2 + sum_i log(1 + exp(-y_i w.x_i)) from a zero
// start until the gradient 2-norm drops to tol. Targets are +1/-1.
LogRegResult fit_logistic(const std::vector<SparseVec>& instances,
                          const std::vector<signed char>& targets,
                          std::size_t dim, double lambda = 1.0,
                          double tol = 1e-4, std::size_t max_iters = 300);

}  // namespace xlinker
