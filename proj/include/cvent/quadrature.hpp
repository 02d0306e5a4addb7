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

#pragma once

#include <cstddef>
#include <vector>

namespace cvent {

/// Gauss-Hermite rule for int f(x) exp(-x^2) dx on the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch: nodes are the eigenvalues of the symmetric Jacobi matrix
/// with off-diagonal sqrt(i/2), weights sqrt(pi) times the squared first
/// eigenvector components. Exact for polynomials of degree < 2n.
GaussHermiteRule gauss_hermite(std::size_t n);

}  // namespace cvent
