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

#include "xlinker/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace xlinker {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

double sigmoid_stable(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double dense_dot(const std::vector<double>& w, const SparseVec& x) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.idx.size(); ++k) s += w[x.idx[k]] * x.val[k];
  return s;
}

double vec_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LogRegResult fit_logistic(const std::vector<SparseVec>& instances,
                          const std::vector<signed char>& targets,
                          std::size_t dim, double lambda, double tol,
                          std::size_t max_iters) {
  const std::size_t n = instances.size();
  std::vector<double> w(dim, 0.0);

  auto evaluate = [&](const std::vector<double>& wt, std::vector<double>& grad) {
    grad.assign(dim, 0.0);
    double f = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      f += 0.5 * lambda * wt[j] * wt[j];
      grad[j] = lambda * wt[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double y = targets[i];
      double m = dense_dot(wt, instances[i]);
      f += softplus(-y * m);
      double coeff = -y * sigmoid_stable(-y * m);
      const SparseVec& x = instances[i];
      for (std::size_t k = 0; k < x.idx.size(); ++k)
        grad[x.idx[k]] += coeff * x.val[k];
    }
    return f;
  };

  std::vector<double> grad(dim), new_grad(dim);
  double f = evaluate(w, grad);

  const std::size_t history = 10;
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  LogRegResult result;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    double gnorm = std::sqrt(vec_dot(grad, grad));
    if (gnorm <= tol) {
      result.weights = w;
      result.converged = true;
      result.iterations = iter;
      result.grad_norm = gnorm;
      return result;
    }

    // Two-loop recursion for the search direction.
    std::vector<double> q = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t h = s_hist.size(); h-- > 0;) {
      alpha[h] = rho_hist[h] * vec_dot(s_hist[h], q);
      for (std::size_t j = 0; j < dim; ++j) q[j] -= alpha[h] * y_hist[h][j];
    }
    if (!s_hist.empty()) {
      const auto& s = s_hist.back();
      const auto& yv = y_hist.back();
      double gamma = vec_dot(s, yv) / vec_dot(yv, yv);
      for (double& v : q) v *= gamma;
    }
    for (std::size_t h = 0; h < s_hist.size(); ++h) {
      double beta = rho_hist[h] * vec_dot(y_hist[h], q);
      for (std::size_t j = 0; j < dim; ++j)
        q[j] += (alpha[h] - beta) * s_hist[h][j];
    }
    for (double& v : q) v = -v;  // descent direction

    double dir_deriv = vec_dot(grad, q);
    if (dir_deriv >= 0) {  // not a descent direction; fall back to -grad
      for (std::size_t j = 0; j < dim; ++j) q[j] = -grad[j];
      dir_deriv = -gnorm * gnorm;
    }

    // Armijo backtracking.
    double step = 1.0;
    std::vector<double> w_new(dim);
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      for (std::size_t j = 0; j < dim; ++j) w_new[j] = w[j] + step * q[j];
      f_new = evaluate(w_new, new_grad);
      if (f_new <= f + 1e-4 * step * dir_deriv) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search stalled; report best effort

    std::vector<double> s_vec(dim), y_vec(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      s_vec[j] = w_new[j] - w[j];
      y_vec[j] = new_grad[j] - grad[j];
    }
    double sy = vec_dot(s_vec, y_vec);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s_vec));
      y_hist.push_back(std::move(y_vec));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > history) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    w = std::move(w_new);
    w_new.assign(dim, 0.0);
    grad = new_grad;
    f = f_new;
    result.iterations = iter + 1;
  }

  result.weights = w;
  result.converged = std::sqrt(vec_dot(grad, grad)) <= tol;
  result.grad_norm = std::sqrt(vec_dot(grad, grad));
  return result;
}

}  // namespace xlinker
