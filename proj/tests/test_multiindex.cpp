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
#include <algorithm>
#include <cmath>
#include <thread>

#include "cvent/errors.hpp"
#include "cvent/multiindex.hpp"
#include "doctest.h"

using namespace cvent;

namespace {

// All d-tuples of weight <= w, sorted by an independent reading of the
// gralex definition: weight first, then the last differing coordinate.
std::vector<MultiIndex> brute_order(std::size_t d, std::uint32_t w) {
  std::vector<MultiIndex> all;
  std::vector<std::uint32_t> cur(d, 0);
  while (true) {
    std::uint32_t s = 0;
    for (auto x : cur) s += x;
    if (s <= w) all.emplace_back(cur);
    std::size_t i = 0;
    while (i < d && ++cur[i] > w) cur[i++] = 0;
    if (i == d) break;
  }
  std::sort(all.begin(), all.end(), [](const MultiIndex& a, const MultiIndex& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    for (std::size_t i = a.dimension(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });
  return all;
}

// Closed form for d = 2 evaluated in floating point, as written.
MultiIndex closed_form_float(std::uint64_t n) {
  const double x = std::ceil((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 3.0) / 2.0);
  const auto N = static_cast<std::int64_t>(x);
  const auto nn = static_cast<std::int64_t>(n);
  return MultiIndex{static_cast<std::uint32_t>((N + 1) * (N + 2) / 2 - nn),
                    static_cast<std::uint32_t>(nn - N * (N + 1) / 2 - 1)};
}

}  // namespace

TEST_CASE("gralex positions agree with a sorted brute-force enumeration") {
  for (std::size_t d = 1; d <= 5; ++d) {
    const auto expected = brute_order(d, 4);
    CHECK(expected.size() == count_up_to_weight(d, 4));
    for (std::size_t p = 0; p < expected.size(); ++p) {
      CHECK(nth_multiindex(d, p + 1) == expected[p]);
      CHECK(position_of(expected[p]) == p + 1);
    }
  }
}

TEST_CASE("small fixtures") {
  CHECK(nth_multiindex(2, 1) == MultiIndex{0, 0});
  CHECK(nth_multiindex(2, 2) == MultiIndex{1, 0});
  CHECK(nth_multiindex(2, 3) == MultiIndex{0, 1});
  CHECK(nth_multiindex(2, 4) == MultiIndex{2, 0});
  CHECK(nth_multiindex(3, 5) == MultiIndex{2, 0, 0});
  CHECK(next_multiindex(MultiIndex{0, 0, 3}) == MultiIndex{4, 0, 0});
  CHECK(next_multiindex(MultiIndex{0, 2, 1}) == MultiIndex{1, 0, 2});
  CHECK(nth_multiindex(2, 2).str() == "(1,0)");
}

TEST_CASE("successor is the immediate gralex successor") {
  for (std::size_t d = 1; d <= 5; ++d) {
    MultiIndex u(d);
    for (std::uint64_t p = 1; p <= 200; ++p) {
      const auto v = next_multiindex(u);
      CHECK(compare_gralex(u, v) == std::strong_ordering::less);
      CHECK(position_of(v) == position_of(u) + 1);
      u = v;
    }
  }
}

TEST_CASE("compare_gralex is a strict total order consistent with positions") {
  for (std::uint64_t p = 1; p <= 60; ++p) {
    for (std::uint64_t q = 1; q <= 60; ++q) {
      const auto c = compare_gralex(nth_multiindex(3, p), nth_multiindex(3, q));
      CHECK(c == (p <=> q));
    }
  }
  CHECK_THROWS_AS(compare_gralex(MultiIndex{1}, MultiIndex{1, 0}), InputError);
}

TEST_CASE("two-dimensional closed form") {
  for (std::uint64_t n = 1; n <= 500; ++n) {
    CHECK(nth_multiindex_2d(n) == closed_form_float(n));
    CHECK(nth_multiindex_2d(n) == nth_multiindex(2, n));
  }
  // Far past the range where doubles are exact for the square root.
  const std::uint64_t big = 4'000'000'000'000ULL;
  CHECK(position_of(nth_multiindex_2d(big)) == big);
}

TEST_CASE("position_of and nth_multiindex are mutually inverse") {
  for (std::size_t d = 1; d <= 5; ++d) {
    for (std::uint64_t p = 1; p <= 200; ++p) {
      CHECK(position_of(nth_multiindex(d, p)) == p);
    }
  }
}

TEST_CASE("concurrent memoized lookups agree") {
  std::vector<std::thread> pool;
  std::vector<int> ok(8, 0);
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([t, &ok] {
      bool good = true;
      for (std::uint64_t p = 1; p <= 300; ++p) {
        good = good && position_of(nth_multiindex(4 + t % 3, p)) == p;
      }
      ok[t] = good;
    });
  }
  for (auto& th : pool) th.join();
  for (int v : ok) CHECK(v == 1);
}

TEST_CASE("four-mode labels of the pair-pair minors") {
  struct Label {
    const char* text;
    std::uint64_t position;
  };
  for (auto [text, position] : {Label{"a1 a2", 13}, Label{"a1 a3", 20},
                                Label{"a2 a3", 22}, Label{"a1 a4", 31},
                                Label{"a2 a4", 33}, Label{"a3 a4", 35}}) {
    const auto m = parse_monomial(text, 4);
    CHECK(position_of(m) == position);
    CHECK(monomial_at(4, position) == m);
    CHECK(m.str() == text);
  }
}

TEST_CASE("moment sequence begins 1, a1, ad1, a2, ad2") {
  CHECK(monomial_at(2, 1).is_identity());
  CHECK(monomial_at(2, 1).str() == "1");
  CHECK(monomial_at(2, 2).str() == "a1");
  CHECK(monomial_at(2, 3).str() == "ad1");
  CHECK(monomial_at(2, 4).str() == "a2");
  CHECK(monomial_at(2, 5).str() == "ad2");
  CHECK(monomial_at(4, 1) == MonomialIndex::identity(4));
}

TEST_CASE("monomial packing round trip") {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::uint64_t p = 1; p <= 150; ++p) {
      const auto m = monomial_at(n, p);
      CHECK(MonomialIndex::unpack(m.pack()) == m);
      CHECK(parse_monomial(m.str(), n) == m);
      CHECK(position_of(m) == p);
      CHECK(m.adjoint().adjoint() == m);
      CHECK(m.adjoint().weight() == m.weight());
    }
  }
}

TEST_CASE("monomial parsing") {
  const auto m = parse_monomial("ad1 a1^2 a3", 3);
  CHECK(m.creation() == std::vector<std::uint32_t>{1, 0, 0});
  CHECK(m.annihilation() == std::vector<std::uint32_t>{2, 0, 1});
  CHECK(parse_monomial("a1 a1", 1) == parse_monomial("a1^2", 1));
  CHECK(parse_monomial("", 2).is_identity());
  CHECK(parse_monomial("1", 2).is_identity());
  CHECK(parse_monomial("  ad2   a2 ", 2).str() == "ad2 a2");
  CHECK_THROWS_AS(parse_monomial("a1 ad1", 1), ParseError);
  CHECK_THROWS_AS(parse_monomial("b1", 1), ParseError);
  CHECK_THROWS_AS(parse_monomial("a0", 2), InputError);
  CHECK_THROWS_AS(parse_monomial("a3", 2), InputError);
  CHECK_THROWS_AS(parse_monomial("a1^", 2), ParseError);
}

TEST_CASE("counts") {
  CHECK(count_up_to_weight(8, 2) == 45);
  CHECK(count_up_to_weight(4, 1) == 5);
  CHECK(count_up_to_weight(2, 0) == 1);
}
