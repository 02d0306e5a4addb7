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

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvent/moments.hpp"
#include "cvent/operator_algebra.hpp"
#include "cvent/transpositions.hpp"
#include "json.hpp"

namespace cvent {

/// Strictly increasing 1-based positions r_1 < ... < r_N into the moment
/// sequence, N >= 1.
class Selection {
 public:
  Selection() = default;
  explicit Selection(std::vector<std::uint64_t> positions);

  /// {first, first+1, ..., last}
  static Selection range(std::uint64_t first, std::uint64_t last);

  std::size_t size() const { return positions_.size(); }
  const std::vector<std::uint64_t>& positions() const { return positions_; }
  std::uint64_t operator[](std::size_t i) const { return positions_[i]; }

  std::string str() const;

  friend bool operator==(const Selection&, const Selection&) = default;

 private:
  std::vector<std::uint64_t> positions_;
};

Selection parse_selection(std::string_view text);

struct MatrixOptions {
  /// Absolute bound on |M_st - conj(M_ts)| before symmetrization, scaled by
  /// max(1, max |M_st|).
  double hermiticity_tol = 1e-7;
  /// A determinant is negative when det < -det_tol * prod_j ||column_j||
  /// (the Hadamard bound on |det|).
  double det_tol = 1e-10;
  /// An eigenvalue is negative when lambda < -eigen_tol * max |lambda|.
  double eigen_tol = 1e-10;
  /// Largest matrix the eigenvalue scan will build.
  std::size_t max_matrix_size = 2000;
  AlgebraLimits algebra;
};

/// Moments of PT_I(rho) arranged over a selection of monomials:
/// values(s, t) = <(f_{r_s})^dag f_{r_t}> on the transposed state.
struct MomentMatrix {
  Selection selection;
  TranspositionSet transposition;
  Eigen::MatrixXcd values;
  /// max |M_st - conj(M_ts)| before symmetrization
  double hermiticity_residual = 0.0;
  std::string provenance;
};

struct MinorResult {
  Selection selection;
  TranspositionSet transposition;
  double determinant = 0.0;
  /// |Im det| dropped when reporting the real determinant
  double imag_residual = 0.0;
  /// negativity threshold actually applied
  double threshold = 0.0;
  bool negative = false;
  /// false when imag_residual exceeds 1e-10 * max(1, |det|)
  bool valid = true;
};

/// Builds the (symmetrized) moment matrix. Every missing moment key is
/// collected and reported in one MissingMomentError; a Hermiticity residual
/// beyond tolerance raises DataQualityError.
MomentMatrix build_matrix(const MomentProvider& provider,
                          const TranspositionSet& transposition,
                          const Selection& selection,
                          const MatrixOptions& options = {});

/// Determinant via full-pivot LU of the complex matrix.
MinorResult determinant(const MomentMatrix& m,
                        const MatrixOptions& options = {});

/// Determinant of the principal submatrix of `values` on `indices`
/// (0-based), labelled with the given selection and transposition.
MinorResult principal_minor(const Eigen::MatrixXcd& values,
                            const std::vector<std::size_t>& indices,
                            const Selection& selection,
                            const TranspositionSet& transposition,
                            const MatrixOptions& options = {});

struct ScanResult {
  std::size_t matrix_size = 0;
  double min_eigenvalue = 0.0;
  double eigen_threshold = 0.0;
  /// Present when a negative principal minor of at most max_minor_size rows
  /// was found; always re-verified from the provider.
  std::optional<MinorResult> witness;

  bool negative_eigenvalue() const { return min_eigenvalue < -eigen_threshold; }
};

/// Minimum eigenvalue of the moment matrix over all monomials of weight
/// <= max_order. On negativity, shrinks the support of the offending
/// eigenvector one index at a time while the submatrix stays indefinite; a
/// minimal indefinite principal submatrix has exactly one negative
/// eigenvalue and hence a negative determinant.
ScanResult eigen_negativity_scan(const MomentProvider& provider,
                                 const TranspositionSet& transposition,
                                 std::uint32_t max_order,
                                 std::size_t max_minor_size,
                                 const MatrixOptions& options = {});

/// Mode quadruple (i,j;k,l) naming the 2x2 minor for f = c1 a_i a_j +
/// c2 a_k a_l. Modes are 1-based and distinct.
struct MinorLabel {
  std::size_t i = 0, j = 0, k = 0, l = 0;

  std::string str() const;
  friend bool operator==(const MinorLabel&, const MinorLabel&) = default;
};

MinorLabel parse_minor_label(std::string_view text);

/// Positions of a_i a_j and a_k a_l, sorted.
Selection label_selection(const MinorLabel& label, std::size_t modes);

MinorResult named_minor(const MomentProvider& provider,
                        const TranspositionSet& transposition,
                        const MinorLabel& label,
                        const MatrixOptions& options = {});

/// {"I": [...], "R": [...], "det": x, "imag_residual": y,
///  "verdict": "negative"|"nonnegative"}
nlohmann::ordered_json to_json(const MinorResult& result);

}  // namespace cvent
