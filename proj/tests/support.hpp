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
// Independent reference computations shared by the tests. Nothing here calls
// the normal-ordering code under test.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cvent/fock.hpp"
#include "cvent/multiindex.hpp"
#include "cvent/operator_algebra.hpp"

namespace testing {

using Complex = std::complex<double>;

/// Annihilation operator on span{|0>, ..., |cutoff-1>}.
inline Eigen::MatrixXd ladder(int cutoff) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Eigen::MatrixXd mpow(const Eigen::MatrixXd& m, unsigned e) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (unsigned i = 0; i < e; ++i) r = r * m;
  return r;
}

/// ad^l a^k ad^p a^q as a matrix, exact on the block of photon numbers below
/// cutoff - (k + p + q + l).
inline Eigen::MatrixXd word_matrix(const cvent::QuarticFactor& f, int cutoff) {
  const Eigen::MatrixXd a = ladder(cutoff);
  const Eigen::MatrixXd ad = a.transpose();
  return mpow(ad, f.left_creation) * mpow(a, f.left_annihilation) *
         mpow(ad, f.right_creation) * mpow(a, f.right_annihilation);
}

/// Entry words written out directly from the moment-matrix definition:
/// (ad^k a^l)^dag (ad^p a^q) = ad^l a^k ad^p a^q per mode.
inline std::vector<cvent::QuarticFactor> words_for(const cvent::MonomialIndex& row,
                                                   const cvent::MonomialIndex& col) {
  std::vector<cvent::QuarticFactor> w;
  for (std::size_t m = 0; m < row.modes(); ++m) {
    w.push_back({row.annihilation(m), row.creation(m), col.creation(m),
                 col.annihilation(m)});
  }
  return w;
}

/// Determinant by partial-pivot Gaussian elimination, kept separate from the
/// library's LU.
inline Complex gauss_det(Eigen::MatrixXcd m) {
  const Eigen::Index n = m.rows();
  Complex det = 1.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (std::abs(m(r, c)) > std::abs(m(piv, c))) piv = r;
    }
    if (std::abs(m(piv, c)) == 0.0) return 0.0;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      const Complex f = m(r, c) / m(c, c);
      m.row(r) -= f * m.row(c);
    }
  }
  return det;
}

/// Density matrix with partial transposition applied explicitly, entry by
/// entry, on the transposed modes' digits.
inline Eigen::MatrixXcd explicit_pt(const Eigen::MatrixXcd& rho,
                                    const std::vector<std::size_t>& cutoffs,
                                    const std::vector<bool>& transposed) {
  const Eigen::Index dim = rho.rows();
  auto digits = [&](Eigen::Index idx) {
    std::vector<std::size_t> d(cutoffs.size());
    for (std::size_t m = cutoffs.size(); m-- > 0;) {
      d[m] = static_cast<std::size_t>(idx) % cutoffs[m];
      idx /= static_cast<Eigen::Index>(cutoffs[m]);
    }
    return d;
  };
  auto index = [&](const std::vector<std::size_t>& d) {
    Eigen::Index idx = 0;
    for (std::size_t m = 0; m < cutoffs.size(); ++m) {
      idx = idx * static_cast<Eigen::Index>(cutoffs[m]) + static_cast<Eigen::Index>(d[m]);
    }
    return idx;
  };
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      auto dr = digits(r), dc = digits(c);
      for (std::size_t m = 0; m < cutoffs.size(); ++m) {
        if (transposed[m]) std::swap(dr[m], dc[m]);
      }
      out(index(dr), index(dc)) = rho(r, c);
    }
  }
  return out;
}

inline bool close(Complex a, Complex b, double rel, double abs_floor = 1e-12) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1.0}) + abs_floor;
}

}  // namespace testing
