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

#include "cvent/multiindex.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "cvent/errors.hpp"
#include "detail/combinatorics.hpp"

namespace cvent {

std::uint64_t MultiIndex::weight() const {
  return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

std::string MultiIndex::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out << ',';
    out << entries_[i];
  }
  out << ')';
  return out.str();
}

std::strong_ordering compare_gralex(const MultiIndex& u, const MultiIndex& v) {
  if (u.dimension() != v.dimension()) {
    throw InputError("compare_gralex: dimension mismatch " +
                     std::to_string(u.dimension()) + " vs " +
                     std::to_string(v.dimension()));
  }
  if (auto c = u.weight() <=> v.weight(); c != 0) return c;
  for (std::size_t i = u.dimension(); i-- > 0;) {
    if (auto c = u[i] <=> v[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

MultiIndex next_multiindex(const MultiIndex& u) {
  const std::size_t d = u.dimension();
  if (d == 0) throw InputError("next_multiindex: empty multi-index");
  std::size_t i = 0;
  while (i < d && u[i] == 0) ++i;
  if (i == d) i = d - 1;

  MultiIndex v(d);
  if (i == d - 1) {
    v[0] = u[d - 1] + 1;
    return v;
  }
  v[0] = u[i] - 1;
  v[i + 1] = u[i + 1] + 1;
  for (std::size_t j = i + 2; j < d; ++j) v[j] = u[j];
  return v;
}

namespace {

// Long runs are iterated from the last cached entry instead of stored.
constexpr std::size_t kMemoCap = std::size_t{1} << 20;

std::mutex memo_mutex;
std::map<std::size_t, std::vector<MultiIndex>> memo;

}  // namespace

MultiIndex nth_multiindex(std::size_t dimension, std::uint64_t position) {
  if (dimension == 0) throw InputError("nth_multiindex: dimension must be >= 1");
  if (position == 0) throw InputError("nth_multiindex: positions are 1-based");

  std::lock_guard lock(memo_mutex);
  auto& seq = memo[dimension];
  if (seq.empty()) seq.emplace_back(dimension);
  while (seq.size() < position && seq.size() < kMemoCap) {
    seq.push_back(next_multiindex(seq.back()));
  }
  if (position <= seq.size()) return seq[position - 1];

  MultiIndex u = seq.back();
  for (std::uint64_t p = seq.size(); p < position; ++p) u = next_multiindex(u);
  return u;
}

MultiIndex nth_multiindex_2d(std::uint64_t position) {
  if (position == 0) throw InputError("nth_multiindex_2d: positions are 1-based");
  // N = ceil((sqrt(8n+1) - 3) / 2): smallest N >= 0 with (2N+3)^2 >= 8n+1.
  const std::uint64_t target = 8 * position + 1;
  std::uint64_t root = detail::isqrt(target);
  std::uint64_t big_n = root >= 3 ? (root - 3) / 2 : 0;
  while ((2 * big_n + 3) * (2 * big_n + 3) < target) ++big_n;
  while (big_n > 0 && (2 * big_n + 1) * (2 * big_n + 1) >= target) --big_n;

  const std::uint64_t hi = (big_n + 1) * (big_n + 2) / 2;
  const std::uint64_t lo = big_n * (big_n + 1) / 2;
  return MultiIndex{static_cast<std::uint32_t>(hi - position),
                    static_cast<std::uint32_t>(position - lo - 1)};
}

std::uint64_t count_up_to_weight(std::size_t dimension,
                                 std::uint64_t max_weight) {
  return detail::binomial(dimension + max_weight, max_weight);
}

std::uint64_t position_of(const MultiIndex& u) {
  const std::size_t d = u.dimension();
  if (d == 0) throw InputError("position_of: empty multi-index");
  const std::uint64_t w = u.weight();
  std::uint64_t below = w == 0 ? 0 : count_up_to_weight(d, w - 1);

  // Same weight, agreeing on coordinates after j and smaller at j.
  std::uint64_t tail = 0;
  for (std::size_t j = d; j-- > 0;) {
    for (std::uint32_t x = 0; x < u[j]; ++x) {
      const std::uint64_t rest = w - tail - x;
      if (j == 0) {
        below += rest == 0 ? 1 : 0;
      } else {
        // Compositions of `rest` into j parts.
        below += detail::binomial(rest + j - 1, j - 1);
      }
    }
    tail += u[j];
  }
  return below + 1;
}

MonomialIndex::MonomialIndex(std::vector<std::uint32_t> creation,
                             std::vector<std::uint32_t> annihilation)
    : creation_(std::move(creation)), annihilation_(std::move(annihilation)) {
  if (creation_.size() != annihilation_.size()) {
    throw InputError("MonomialIndex: creation/annihilation length mismatch");
  }
}

std::uint64_t MonomialIndex::weight() const {
  return std::accumulate(creation_.begin(), creation_.end(), std::uint64_t{0}) +
         std::accumulate(annihilation_.begin(), annihilation_.end(),
                         std::uint64_t{0});
}

MultiIndex MonomialIndex::pack() const {
  MultiIndex packed(2 * modes());
  for (std::size_t i = 0; i < modes(); ++i) {
    packed[2 * i] = annihilation_[i];
    packed[2 * i + 1] = creation_[i];
  }
  return packed;
}

MonomialIndex MonomialIndex::unpack(const MultiIndex& packed) {
  if (packed.dimension() == 0 || packed.dimension() % 2 != 0) {
    throw InputError("MonomialIndex::unpack: dimension must be even and > 0");
  }
  MonomialIndex m(packed.dimension() / 2);
  for (std::size_t i = 0; i < m.modes(); ++i) {
    m.annihilation_[i] = packed[2 * i];
    m.creation_[i] = packed[2 * i + 1];
  }
  return m;
}

std::string MonomialIndex::str() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const char* op, std::size_t mode, std::uint32_t e) {
    if (e == 0) return;
    if (!first) out << ' ';
    first = false;
    out << op << mode + 1;
    if (e > 1) out << '^' << e;
  };
  for (std::size_t i = 0; i < modes(); ++i) {
    emit("ad", i, creation_[i]);
    emit("a", i, annihilation_[i]);
  }
  if (first) return "1";
  return out.str();
}

MonomialIndex monomial_at(std::size_t modes, std::uint64_t position) {
  if (modes == 0) throw InputError("monomial_at: modes must be >= 1");
  return MonomialIndex::unpack(nth_multiindex(2 * modes, position));
}

std::uint64_t position_of(const MonomialIndex& m) {
  if (m.modes() == 0) throw InputError("position_of: monomial has no modes");
  return position_of(m.pack());
}

namespace {

std::uint32_t parse_uint(std::string_view digits, std::string_view token) {
  std::uint32_t value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() ||
      ptr != digits.data() + digits.size()) {
    throw ParseError("bad monomial token '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

MonomialIndex parse_monomial(std::string_view text, std::size_t modes) {
  if (modes == 0) throw InputError("parse_monomial: modes must be >= 1");
  MonomialIndex m(modes);
  std::vector<bool> seen_annihilation(modes, false);

  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    std::string_view t = token;
    bool creation = false;
    if (t.starts_with("ad")) {
      creation = true;
      t.remove_prefix(2);
    } else if (t.starts_with("a")) {
      t.remove_prefix(1);
    } else {
      throw ParseError("bad monomial token '" + token + "'");
    }
    std::uint32_t exponent = 1;
    if (auto caret = t.find('^'); caret != std::string_view::npos) {
      exponent = parse_uint(t.substr(caret + 1), token);
      t = t.substr(0, caret);
    }
    const std::uint32_t mode = parse_uint(t, token);
    if (mode == 0 || mode > modes) {
      throw ParseError("mode out of range in '" + token + "' (modes = " +
                       std::to_string(modes) + ")");
    }
    const std::size_t i = mode - 1;
    if (creation) {
      if (seen_annihilation[i] && exponent > 0) {
        throw ParseError("'" + token +
                         "' follows an annihilation operator of the same "
                         "mode; monomials must be normally ordered");
      }
      m.creation(i) += exponent;
    } else {
      if (exponent > 0) seen_annihilation[i] = true;
      m.annihilation(i) += exponent;
    }
  }
  return m;
}

}  // namespace cvent
