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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cvent {

/// A d-dimensional tuple of nonnegative exponents.
///
/// Multi-indices are totally ordered by the graded antilexicographical
/// order: first by total weight, then by the last coordinate in which they
/// differ (smaller value first). Positions in that order are 1-based, so the
/// zero index sits at position 1.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : entries_(dimension, 0) {}
  explicit MultiIndex(std::vector<std::uint32_t> entries)
      : entries_(std::move(entries)) {}
  MultiIndex(std::initializer_list<std::uint32_t> entries)
      : entries_(entries) {}

  std::size_t dimension() const { return entries_.size(); }
  std::uint64_t weight() const;

  std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
  std::uint32_t& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<std::uint32_t>& entries() const { return entries_; }

  /// `(u1,u2,...)`
  std::string str() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<std::uint32_t> entries_;
};

/// Graded antilexicographical comparison. Throws InputError when the
/// dimensions differ.
std::strong_ordering compare_gralex(const MultiIndex& u, const MultiIndex& v);

/// The immediate gralex successor of `u`.
MultiIndex next_multiindex(const MultiIndex& u);

/// The multi-index at 1-based `position` in gralex order, obtained by
/// iterating next_multiindex from the zero index. Results are memoized per
/// dimension; safe to call concurrently.
MultiIndex nth_multiindex(std::size_t dimension, std::uint64_t position);

/// Closed form of nth_multiindex for d = 2, evaluated in integer arithmetic.
MultiIndex nth_multiindex_2d(std::uint64_t position);

/// 1-based gralex position of `u`, by counting.
std::uint64_t position_of(const MultiIndex& u);

/// Number of d-dimensional multi-indices with weight <= max_weight,
/// i.e. C(d + max_weight, max_weight).
std::uint64_t count_up_to_weight(std::size_t dimension,
                                 std::uint64_t max_weight);

/// Normally ordered monomial prod_i ad_i^{k_i} a_i^{l_i} over n modes, where
/// k counts creation and l annihilation operators.
///
/// The monomial at position p of the moment sequence is the unpacked
/// 2n-dimensional multi-index (l1, k1, ..., ln, kn) at position p, so the
/// sequence starts 1, a1, ad1, a2, ad2, ...
class MonomialIndex {
 public:
  MonomialIndex() = default;
  explicit MonomialIndex(std::size_t modes)
      : creation_(modes, 0), annihilation_(modes, 0) {}
  MonomialIndex(std::vector<std::uint32_t> creation,
                std::vector<std::uint32_t> annihilation);

  static MonomialIndex identity(std::size_t modes) {
    return MonomialIndex(modes);
  }

  std::size_t modes() const { return creation_.size(); }
  std::uint32_t creation(std::size_t mode) const { return creation_[mode]; }
  std::uint32_t annihilation(std::size_t mode) const {
    return annihilation_[mode];
  }
  std::uint32_t& creation(std::size_t mode) { return creation_[mode]; }
  std::uint32_t& annihilation(std::size_t mode) { return annihilation_[mode]; }
  const std::vector<std::uint32_t>& creation() const { return creation_; }
  const std::vector<std::uint32_t>& annihilation() const {
    return annihilation_;
  }

  std::uint64_t weight() const;
  bool is_identity() const { return weight() == 0; }

  /// The adjoint monomial: creation and annihilation exponents swapped.
  MonomialIndex adjoint() const { return {annihilation_, creation_}; }

  MultiIndex pack() const;
  static MonomialIndex unpack(const MultiIndex& packed);

  /// Canonical text form, e.g. `ad1 a1^2 a3`; the identity prints as `1`.
  std::string str() const;

  friend bool operator==(const MonomialIndex&, const MonomialIndex&) = default;
  friend auto operator<=>(const MonomialIndex&,
                          const MonomialIndex&) = default;

 private:
  std::vector<std::uint32_t> creation_;
  std::vector<std::uint32_t> annihilation_;
};

/// Monomial at 1-based `position` in the moment sequence over `modes` modes.
MonomialIndex monomial_at(std::size_t modes, std::uint64_t position);

/// Inverse of monomial_at.
std::uint64_t position_of(const MonomialIndex& m);

/// Parses `a1^2 ad3 a4`-style text. Tokens are `a<mode>` (annihilation) or
/// `ad<mode>` (creation), 1-based modes, optional `^<exponent>`; `1` or an
/// empty string is the identity. Within one mode every creation token must
/// precede every annihilation token.
MonomialIndex parse_monomial(std::string_view text, std::size_t modes);

}  // namespace cvent
