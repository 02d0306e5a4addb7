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

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "cvent/multiindex.hpp"
#include "cvent/transpositions.hpp"

namespace cvent {

/// Single-mode word ad^left_creation a^left_annihilation ad^right_creation
/// a^right_annihilation.
struct QuarticFactor {
  std::uint32_t left_creation = 0;
  std::uint32_t left_annihilation = 0;
  std::uint32_t right_creation = 0;
  std::uint32_t right_annihilation = 0;

  /// Transposition in the Fock basis reverses the word and exchanges
  /// ad <-> a: ad^l a^k ad^p a^q becomes ad^q a^p ad^k a^l.
  QuarticFactor transposed() const {
    return {right_annihilation, right_creation, left_annihilation,
            left_creation};
  }

  friend bool operator==(const QuarticFactor&, const QuarticFactor&) = default;
};

/// Exponent limits for normal ordering. Expansion coefficients grow
/// factorially, so anything above `max_exponent` in a single slot is refused.
struct AlgebraLimits {
  std::uint32_t max_exponent = 8;
};

/// Finite integer combination of normally ordered moment keys.
class MomentExpression {
 public:
  using Terms = std::map<MonomialIndex, std::uint64_t>;

  MomentExpression() = default;
  explicit MomentExpression(Terms terms);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::uint64_t coefficient(const MonomialIndex& key) const;

  void add(const MonomialIndex& key, std::uint64_t coefficient);

  /// Sum of coefficient * lookup(key).
  std::complex<double> evaluate(
      const std::function<std::complex<double>(const MonomialIndex&)>& lookup)
      const;

  /// `3 [ad1 a1] + 1 [1]`
  std::string str() const;

  friend bool operator==(const MomentExpression&,
                         const MomentExpression&) = default;

 private:
  Terms terms_;
};

/// Normal ordering of ad^l a^k ad^p a^q on one mode:
///   sum_j j! C(k,j) C(p,j) ad^(l+p-j) a^(k+q-j).
/// The returned expression has a single mode.
MomentExpression normal_order_single_mode(const QuarticFactor& factor,
                                          const AlgebraLimits& limits = {});

/// Normal ordering of prod_i factors[i], one factor per mode.
MomentExpression normal_order(const std::vector<QuarticFactor>& factors,
                              const AlgebraLimits& limits = {});

/// Moment-matrix entry <f_row^dag f_col> with f = ad^k a^l, as normally
/// ordered moments.
MomentExpression entry_expression(const MonomialIndex& row,
                                  const MonomialIndex& col,
                                  const AlgebraLimits& limits = {});

/// Moment-matrix entry of the state partially transposed on `transposed`.
/// Modes in the set see their factor rearranged before normal ordering.
MomentExpression entry_expression_pt(const MonomialIndex& row,
                                     const MonomialIndex& col,
                                     const TranspositionSet& transposed,
                                     const AlgebraLimits& limits = {});

/// Per-mode factors of the untransposed entry (row, col).
std::vector<QuarticFactor> entry_factors(const MonomialIndex& row,
                                         const MonomialIndex& col);

}  // namespace cvent
