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
#include <set>

#include "cvent/errors.hpp"
#include "cvent/transpositions.hpp"
#include "doctest.h"

using namespace cvent;

TEST_CASE("composition is a group law on subsets") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const std::uint64_t full = (1ULL << n);
    const TranspositionSet none(n);
    for (std::uint64_t a = 0; a < full; ++a) {
      const auto A = TranspositionSet::from_mask(n, a);
      CHECK(compose(A, none) == A);
      CHECK(compose(A, A) == none);
      CHECK(compose(A, TranspositionSet::all(n)) == A.complement());
      CHECK(A.complement().complement() == A);
      for (std::uint64_t b = 0; b < full; ++b) {
        const auto B = TranspositionSet::from_mask(n, b);
        CHECK(compose(A, B) == compose(B, A));
        for (std::uint64_t c = 0; c < full; c += 3) {
          const auto C = TranspositionSet::from_mask(n, c);
          CHECK(compose(compose(A, B), C) == compose(A, compose(B, C)));
        }
      }
    }
  }
  CHECK_THROWS_AS(compose(TranspositionSet(2), TranspositionSet(3)), InputError);
}

TEST_CASE("canonical bipartitions") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto sets = canonical_bipartitions(n);
    CHECK(sets.size() == (1ULL << (n - 1)) - 1);
    std::set<std::uint64_t> seen;
    for (const auto& s : sets) {
      CHECK_FALSE(s.contains(n));
      CHECK_FALSE(s.empty());
      CHECK(canonical(s) == s);
      CHECK(canonical(s.complement()) == s);
      seen.insert(s.mask());
    }
    CHECK(seen.size() == sets.size());
  }
  std::vector<std::string> text;
  for (const auto& s : canonical_bipartitions(4)) text.push_back(s.str());
  CHECK(text == std::vector<std::string>{"{1}", "{2}", "{3}", "{1,2}", "{1,3}",
                                         "{2,3}", "{1,2,3}"});
  CHECK(canonical_bipartitions(2).front().str() == "{1}");
}

TEST_CASE("set text form") {
  CHECK(parse_transposition_set("{1,3}", 4) == TranspositionSet(4, {1, 3}));
  CHECK(parse_transposition_set(" 3 , 1 ", 4) == TranspositionSet(4, {1, 3}));
  CHECK(parse_transposition_set("{}", 2).empty());
  CHECK(TranspositionSet(3).str() == "{}");
  CHECK_THROWS_AS(parse_transposition_set("{5}", 4), InputError);
  CHECK_THROWS_AS(parse_transposition_set("{0}", 4), InputError);
  CHECK_THROWS_AS(parse_transposition_set("{1,x}", 4), ParseError);
  CHECK_THROWS_AS(TranspositionSet(2, {3}), InputError);
}

TEST_CASE("decomposition counts are Bell numbers") {
  const std::vector<std::size_t> bell{1, 2, 5, 15, 52, 203, 877};
  for (std::size_t n = 1; n <= 7; ++n) {
    const auto all = all_decompositions(n);
    CHECK(all.size() == bell[n - 1]);
    std::set<std::string> unique;
    for (const auto& d : all) unique.insert(d.str());
    CHECK(unique.size() == all.size());
  }
  CHECK_THROWS(all_decompositions(11));
}

TEST_CASE("refinement is a partial order with the finest decomposition at the bottom") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = all_decompositions(n);
    const auto bottom = Decomposition::finest(n);
    const Decomposition top(n, {[&] {
      std::vector<std::size_t> v;
      for (std::size_t i = 1; i <= n; ++i) v.push_back(i);
      return v;
    }()});
    for (const auto& a : all) {
      CHECK(refines(a, a));
      CHECK(refines(bottom, a));
      CHECK(refines(a, top));
      for (const auto& b : all) {
        if (refines(a, b) && refines(b, a)) CHECK(a == b);
        for (const auto& c : all) {
          if (refines(a, b) && refines(b, c)) CHECK(refines(a, c));
        }
      }
    }
  }
}

TEST_CASE("coarsening bipartitions") {
  const auto pi = parse_decomposition("{1|2|3,4}", 4);
  CHECK(pi.str() == "{1|2|3,4}");
  std::vector<std::string> cuts;
  for (const auto& c : bipartitions_coarsening(pi)) cuts.push_back(c.str());
  CHECK(cuts == std::vector<std::string>{"{1}", "{2}", "{1,2}"});

  for (std::size_t n = 2; n <= 5; ++n) {
    for (const auto& d : all_decompositions(n)) {
      const auto cuts_d = bipartitions_coarsening(d);
      CHECK(cuts_d.size() == (1ULL << (d.size() - 1)) - 1);
      // Each cut is a union of whole parts.
      for (const auto& c : cuts_d) {
        for (auto part : d.part_masks()) {
          CHECK(((c.mask() & part) == 0 || (c.mask() & part) == part));
        }
      }
    }
  }
  CHECK(bipartitions_coarsening(Decomposition::finest(4)).size() == 7);
  CHECK(bipartitions_coarsening(parse_decomposition("{1,2,3,4}", 4)).empty());
}

TEST_CASE("decomposition parsing") {
  CHECK(parse_decomposition("{2|1|4,3}", 4).str() == "{1|2|3,4}");
  CHECK_THROWS_AS(parse_decomposition("{1|1,2}", 2), InputError);
  CHECK_THROWS_AS(parse_decomposition("{1|2}", 3), InputError);
  CHECK_THROWS_AS(parse_decomposition("{1||2}", 2), InputError);
}
