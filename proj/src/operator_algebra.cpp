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

#include "cvent/operator_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "cvent/errors.hpp"
#include "detail/combinatorics.hpp"

namespace cvent {

MomentExpression::MomentExpression(Terms terms) {
  for (auto& [key, c] : terms) {
    if (c != 0) terms_.emplace(key, c);
  }
}

std::uint64_t MomentExpression::coefficient(const MonomialIndex& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second;
}

void MomentExpression::add(const MonomialIndex& key, std::uint64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(key, coefficient);
  if (!inserted) it->second = detail::checked_add(it->second, coefficient);
}

std::complex<double> MomentExpression::evaluate(
    const std::function<std::complex<double>(const MonomialIndex&)>& lookup)
    const {
  std::complex<double> sum = 0.0;
  for (const auto& [key, c] : terms_) {
    sum += static_cast<double>(c) * lookup(key);
  }
  return sum;
}

std::string MomentExpression::str() const {
  std::ostringstream out;
  bool first = true;
  // Highest-weight terms first reads like the usual textbook expansion.
  std::vector<std::pair<MonomialIndex, std::uint64_t>> sorted(terms_.begin(),
                                                              terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) {
    return position_of(a.first) > position_of(b.first);
  });
  for (const auto& [key, c] : sorted) {
    if (!first) out << " + ";
    first = false;
    out << c << " [" << key.str() << "]";
  }
  if (first) return "0";
  return out.str();
}

namespace {

void check_limits(const QuarticFactor& f, const AlgebraLimits& limits) {
  const auto biggest = std::max({f.left_creation, f.left_annihilation,
                                 f.right_creation, f.right_annihilation});
  if (biggest > limits.max_exponent) {
    throw ResourceError("operator exponent " + std::to_string(biggest) +
                        " exceeds the configured maximum " +
                        std::to_string(limits.max_exponent));
  }
}

// (creation, annihilation, coefficient) triples of one mode.
struct ModeTerm {
  std::uint32_t creation;
  std::uint32_t annihilation;
  std::uint64_t coefficient;
};

std::vector<ModeTerm> expand_mode(const QuarticFactor& f) {
  // ad^l a^k ad^p a^q: only the middle a^k ad^p needs reordering, via
  // a^k ad^p = sum_j j! C(k,j) C(p,j) ad^(p-j) a^(k-j).
  const std::uint32_t k = f.left_annihilation;
  const std::uint32_t p = f.right_creation;
  std::vector<ModeTerm> out;
  for (std::uint32_t j = 0; j <= std::min(k, p); ++j) {
    const std::uint64_t c =
        detail::checked_mul(detail::checked_mul(detail::factorial(j),
                                                detail::binomial(k, j)),
                            detail::binomial(p, j));
    out.push_back({f.left_creation + p - j, k + f.right_annihilation - j, c});
  }
  return out;
}

}  // namespace

MomentExpression normal_order_single_mode(const QuarticFactor& factor,
                                          const AlgebraLimits& limits) {
  return normal_order({factor}, limits);
}

MomentExpression normal_order(const std::vector<QuarticFactor>& factors,
                              const AlgebraLimits& limits) {
  if (factors.empty()) throw InputError("normal_order: no modes");
  for (const auto& f : factors) check_limits(f, limits);

  const std::size_t n = factors.size();
  std::vector<std::vector<ModeTerm>> per_mode;
  per_mode.reserve(n);
  for (const auto& f : factors) per_mode.push_back(expand_mode(f));

  // Tensor product of the per-mode expansions.
  MomentExpression result;
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    MonomialIndex key(n);
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& t = per_mode[i][choice[i]];
      key.creation(i) = t.creation;
      key.annihilation(i) = t.annihilation;
      c = detail::checked_mul(c, t.coefficient);
    }
    result.add(key, c);

    std::size_t i = 0;
    while (i < n && ++choice[i] == per_mode[i].size()) choice[i++] = 0;
    if (i == n) break;
  }
  return result;
}

std::vector<QuarticFactor> entry_factors(const MonomialIndex& row,
                                         const MonomialIndex& col) {
  if (row.modes() != col.modes()) {
    throw InputError("entry_expression: mode-count mismatch " +
                     std::to_string(row.modes()) + " vs " +
                     std::to_string(col.modes()));
  }
  std::vector<QuarticFactor> factors(row.modes());
  for (std::size_t i = 0; i < row.modes(); ++i) {
    // f_row^dag = ad^l a^k, f_col = ad^p a^q.
    factors[i] = {row.annihilation(i), row.creation(i), col.creation(i),
                  col.annihilation(i)};
  }
  return factors;
}

MomentExpression entry_expression(const MonomialIndex& row,
                                  const MonomialIndex& col,
                                  const AlgebraLimits& limits) {
  return normal_order(entry_factors(row, col), limits);
}

MomentExpression entry_expression_pt(const MonomialIndex& row,
                                     const MonomialIndex& col,
                                     const TranspositionSet& transposed,
                                     const AlgebraLimits& limits) {
  auto factors = entry_factors(row, col);
  if (transposed.modes() != factors.size()) {
    throw InputError("entry_expression_pt: transposition set is over " +
                     std::to_string(transposed.modes()) + " modes, entry over " +
                     std::to_string(factors.size()));
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (transposed.contains(i + 1)) factors[i] = factors[i].transposed();
  }
  return normal_order(factors, limits);
}

}  // namespace cvent
