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

#include "cvent/transpositions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

#include "cvent/errors.hpp"

namespace cvent {

namespace {

void check_modes(std::size_t modes) {
  if (modes > kMaxModes) {
    throw InputError("at most " + std::to_string(kMaxModes) +
                     " modes are supported");
  }
}

std::uint64_t full_mask(std::size_t modes) {
  return modes == 0 ? 0 : (~std::uint64_t{0} >> (64 - modes));
}

std::uint64_t bit(std::size_t mode, std::size_t modes) {
  if (mode == 0 || mode > modes) {
    throw InputError("mode " + std::to_string(mode) + " out of range 1.." +
                     std::to_string(modes));
  }
  return std::uint64_t{1} << (mode - 1);
}

void check_same_modes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InputError(std::string(what) + ": mode-count mismatch " +
                     std::to_string(a) + " vs " + std::to_string(b));
  }
}

// Size first, then lexicographic on the sorted member lists.
bool canonical_less(std::uint64_t a, std::uint64_t b) {
  const int ca = std::popcount(a), cb = std::popcount(b);
  if (ca != cb) return ca < cb;
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a), lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::size_t parse_mode(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad mode number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::size_t> parse_mode_list(std::string_view s) {
  std::vector<std::size_t> out;
  s = trim(s);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(parse_mode(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view strip_braces(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw ParseError("unbalanced braces in '" + std::string(s) + "'");
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

TranspositionSet::TranspositionSet(std::size_t modes) : modes_(modes) {
  check_modes(modes);
}

TranspositionSet::TranspositionSet(std::size_t modes,
                                   std::initializer_list<std::size_t> members)
    : TranspositionSet(modes, std::vector<std::size_t>(members)) {}

TranspositionSet::TranspositionSet(std::size_t modes,
                                   const std::vector<std::size_t>& members)
    : modes_(modes) {
  check_modes(modes);
  for (auto m : members) mask_ |= bit(m, modes);
}

TranspositionSet TranspositionSet::from_mask(std::size_t modes,
                                             std::uint64_t mask) {
  TranspositionSet s(modes);
  if ((mask & ~full_mask(modes)) != 0) {
    throw InputError("transposition mask has bits beyond mode " +
                     std::to_string(modes));
  }
  s.mask_ = mask;
  return s;
}

TranspositionSet TranspositionSet::all(std::size_t modes) {
  return from_mask(modes, full_mask(modes));
}

std::size_t TranspositionSet::size() const { return std::popcount(mask_); }

bool TranspositionSet::contains(std::size_t mode) const {
  return mode >= 1 && mode <= modes_ && ((mask_ >> (mode - 1)) & 1U);
}

std::vector<std::size_t> TranspositionSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t m = 1; m <= modes_; ++m) {
    if (contains(m)) out.push_back(m);
  }
  return out;
}

TranspositionSet TranspositionSet::complement() const {
  return from_mask(modes_, full_mask(modes_) & ~mask_);
}

std::string TranspositionSet::str() const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (auto m : members()) {
    if (!first) out << ',';
    first = false;
    out << m;
  }
  out << '}';
  return out.str();
}

TranspositionSet compose(const TranspositionSet& i, const TranspositionSet& j) {
  check_same_modes(i.modes(), j.modes(), "compose");
  return TranspositionSet::from_mask(i.modes(), i.mask() ^ j.mask());
}

TranspositionSet canonical(const TranspositionSet& set) {
  if (set.modes() == 0) return set;
  return set.contains(set.modes()) ? set.complement() : set;
}

std::vector<TranspositionSet> canonical_bipartitions(std::size_t modes) {
  if (modes < 2) {
    throw InputError("canonical_bipartitions: need at least 2 modes");
  }
  check_modes(modes);
  if (modes > 31) throw ResourceError("too many bipartitions to enumerate");
  std::vector<std::uint64_t> masks;
  const std::uint64_t limit = std::uint64_t{1} << (modes - 1);
  masks.reserve(limit - 1);
  for (std::uint64_t m = 1; m < limit; ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), canonical_less);
  std::vector<TranspositionSet> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(TranspositionSet::from_mask(modes, m));
  return out;
}

TranspositionSet parse_transposition_set(std::string_view text,
                                         std::size_t modes) {
  return TranspositionSet(modes, parse_mode_list(strip_braces(text)));
}

Decomposition::Decomposition(std::size_t modes,
                             std::vector<std::vector<std::size_t>> parts)
    : modes_(modes) {
  check_modes(modes);
  std::uint64_t seen = 0;
  for (const auto& part : parts) {
    if (part.empty()) throw InputError("decomposition has an empty part");
    std::uint64_t mask = 0;
    for (auto m : part) {
      const auto b = bit(m, modes);
      if ((seen | mask) & b) {
        throw InputError("decomposition parts overlap at mode " +
                         std::to_string(m));
      }
      mask |= b;
    }
    seen |= mask;
    parts_.push_back(mask);
  }
  if (seen != full_mask(modes)) {
    throw InputError("decomposition parts do not cover all modes");
  }
  std::sort(parts_.begin(), parts_.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::countr_zero(a) < std::countr_zero(b);
  });
}

Decomposition Decomposition::finest(std::size_t modes) {
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t m = 1; m <= modes; ++m) parts.push_back({m});
  return Decomposition(modes, std::move(parts));
}

std::vector<std::vector<std::size_t>> Decomposition::parts() const {
  std::vector<std::vector<std::size_t>> out;
  for (auto mask : parts_) {
    out.push_back(TranspositionSet::from_mask(modes_, mask).members());
  }
  return out;
}

std::string Decomposition::str() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    if (p) out << '|';
    const auto members = TranspositionSet::from_mask(modes_, parts_[p]).members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) out << ',';
      out << members[i];
    }
  }
  out << '}';
  return out.str();
}

bool refines(const Decomposition& sigma, const Decomposition& pi) {
  check_same_modes(sigma.modes(), pi.modes(), "refines");
  for (auto s : sigma.part_masks()) {
    const bool inside = std::any_of(
        pi.part_masks().begin(), pi.part_masks().end(),
        [s](std::uint64_t p) { return (s & ~p) == 0; });
    if (!inside) return false;
  }
  return true;
}

std::vector<TranspositionSet> bipartitions_coarsening(const Decomposition& pi) {
  const std::size_t parts = pi.size();
  if (parts < 2) return {};
  if (parts > 31) throw ResourceError("too many parts to enumerate");
  std::vector<std::uint64_t> masks;
  // Groupings that leave the part holding mode n on the untransposed side.
  const std::uint64_t top = std::uint64_t{1} << (pi.modes() - 1);
  for (std::uint64_t choice = 1; choice < (std::uint64_t{1} << parts);
       ++choice) {
    std::uint64_t mask = 0;
    for (std::size_t p = 0; p < parts; ++p) {
      if ((choice >> p) & 1U) mask |= pi.part_masks()[p];
    }
    if (mask & top) continue;
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end(), canonical_less);
  std::vector<TranspositionSet> out;
  for (auto m : masks) out.push_back(TranspositionSet::from_mask(pi.modes(), m));
  return out;
}

namespace {

void enumerate_partitions(std::size_t mode, std::size_t modes,
                          std::vector<std::vector<std::size_t>>& current,
                          std::vector<Decomposition>& out) {
  if (mode > modes) {
    out.emplace_back(modes, current);
    return;
  }
  for (std::size_t p = 0; p < current.size(); ++p) {
    current[p].push_back(mode);
    enumerate_partitions(mode + 1, modes, current, out);
    current[p].pop_back();
  }
  current.push_back({mode});
  enumerate_partitions(mode + 1, modes, current, out);
  current.pop_back();
}

}  // namespace

std::vector<Decomposition> all_decompositions(std::size_t modes) {
  if (modes == 0) throw InputError("all_decompositions: modes must be >= 1");
  if (modes > 10) throw ResourceError("all_decompositions: modes > 10");
  std::vector<Decomposition> out;
  std::vector<std::vector<std::size_t>> current;
  enumerate_partitions(1, modes, current, out);
  return out;
}

Decomposition parse_decomposition(std::string_view text, std::size_t modes) {
  auto body = strip_braces(text);
  std::vector<std::vector<std::size_t>> parts;
  std::size_t start = 0;
  while (true) {
    const auto bar = body.find('|', start);
    parts.push_back(parse_mode_list(body.substr(start, bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return Decomposition(modes, std::move(parts));
}

}  // namespace cvent
