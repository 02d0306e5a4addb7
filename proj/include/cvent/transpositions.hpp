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
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace cvent {

inline constexpr std::size_t kMaxModes = 63;

/// A subset I of the modes {1..n}, naming the partial transposition PT_I.
/// Mode numbers in the public interface are 1-based.
class TranspositionSet {
 public:
  TranspositionSet() = default;
  explicit TranspositionSet(std::size_t modes);
  TranspositionSet(std::size_t modes, std::initializer_list<std::size_t> members);
  TranspositionSet(std::size_t modes, const std::vector<std::size_t>& members);

  static TranspositionSet from_mask(std::size_t modes, std::uint64_t mask);
  static TranspositionSet all(std::size_t modes);

  std::size_t modes() const { return modes_; }
  std::uint64_t mask() const { return mask_; }
  std::size_t size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(std::size_t mode) const;
  std::vector<std::size_t> members() const;

  TranspositionSet complement() const;

  /// `{1,3}`; the empty set prints as `{}`.
  std::string str() const;

  friend bool operator==(const TranspositionSet&,
                         const TranspositionSet&) = default;

 private:
  std::size_t modes_ = 0;
  std::uint64_t mask_ = 0;
};

/// PT_I o PT_J = PT_{I symmetric-difference J}.
TranspositionSet compose(const TranspositionSet& i, const TranspositionSet& j);

/// Canonical representative of {I, complement(I)}: the one without mode n.
TranspositionSet canonical(const TranspositionSet& set);

/// All nonempty subsets of {1..n-1}, ordered by size then lexicographically.
/// There are 2^(n-1) - 1 of them, one per nontrivial bipartition.
std::vector<TranspositionSet> canonical_bipartitions(std::size_t modes);

/// Parses `{1,3}` (braces optional, whitespace ignored).
TranspositionSet parse_transposition_set(std::string_view text,
                                         std::size_t modes);

/// A partition of {1..n} into disjoint nonempty parts. Parts are kept sorted
/// by their smallest mode.
class Decomposition {
 public:
  Decomposition() = default;
  Decomposition(std::size_t modes, std::vector<std::vector<std::size_t>> parts);

  static Decomposition finest(std::size_t modes);

  std::size_t modes() const { return modes_; }
  std::size_t size() const { return parts_.size(); }
  const std::vector<std::uint64_t>& part_masks() const { return parts_; }
  std::vector<std::vector<std::size_t>> parts() const;

  /// `{1|2|3,4}`
  std::string str() const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  std::size_t modes_ = 0;
  std::vector<std::uint64_t> parts_;
};

/// sigma is finer than pi: every part of sigma lies inside a part of pi.
bool refines(const Decomposition& sigma, const Decomposition& pi);

/// Canonical bipartitions obtained by merging the parts of `pi` into two
/// groups; 2^(|pi|-1) - 1 of them, in canonical_bipartitions order.
std::vector<TranspositionSet> bipartitions_coarsening(const Decomposition& pi);

/// Every decomposition of {1..n} (Bell-number many), in a deterministic
/// order. Refuses n > 10.
std::vector<Decomposition> all_decompositions(std::size_t modes);

/// Parses `{1|2|3,4}`.
Decomposition parse_decomposition(std::string_view text, std::size_t modes);

}  // namespace cvent
