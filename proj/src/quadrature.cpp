// Copyright 2026 The cvent Authors
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

#include "cvent/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "cvent/errors.hpp"

namespace cvent {

GaussHermiteRule gauss_hermite(std::size_t n) {
  if (n == 0) throw InputError("gauss_hermite: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) {
    const double b = std::sqrt(static_cast<double>(i) / 2.0);
    jacobi(i, i - 1) = b;
    jacobi(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw NumericError("gauss_hermite: eigen decomposition failed");
  }
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

}  // namespace cvent
