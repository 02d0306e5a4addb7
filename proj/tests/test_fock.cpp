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
#include "cvent/errors.hpp"
#include "cvent/fock.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cvent;
using testing::close;

TEST_CASE("number state ladder arithmetic") {
  for (std::size_t n = 0; n < 5; ++n) {
    const auto s = fock::number_state(n, 10);
    CHECK(close(s.moment(parse_monomial("ad1 a1", 1)), double(n), 1e-14));
    CHECK(close(s.moment(parse_monomial("ad1^2 a1^2", 1)), double(n * (n - 1)), 1e-14));
    CHECK(close(s.expectation({{0, 1, 1, 0}}), double(n + 1), 1e-14));
    CHECK(s.moment(parse_monomial("a1", 1)) == 0.0);
  }
}

TEST_CASE("single-mode transposition conjugates moments") {
  const auto s = fock::random_mixed(1, 5, 8, 3, 11);
  const auto t = s.partially_transposed(TranspositionSet(1, {1}));
  for (std::uint64_t p = 1; p <= 15; ++p) {
    const auto key = monomial_at(1, p);
    CHECK(close(t.moment(key), s.moment(key.adjoint()), 1e-12));
  }
  CHECK(t.partially_transposed(TranspositionSet(1, {1})).transposition().empty());
}

TEST_CASE("lazy transposition matches an explicitly transposed matrix") {
  const auto s = fock::random_mixed(2, 3, 4, 2, 5);
  Eigen::MatrixXcd rho(s.dimension(), s.dimension());
  for (std::size_t r = 0; r < s.dimension(); ++r)
    for (std::size_t c = 0; c < s.dimension(); ++c) rho(r, c) = s.element(r, c);
  const auto explicit_rho = testing::explicit_pt(rho, {4, 4}, {false, true});
  const auto lazy = s.partially_transposed(TranspositionSet(2, {2}));
  for (std::size_t r = 0; r < s.dimension(); ++r)
    for (std::size_t c = 0; c < s.dimension(); ++c)
      CHECK(lazy.element(r, c) == explicit_rho(r, c));
}

TEST_CASE("state validation") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
  rho(0, 0) = 0.5;
  CHECK_THROWS_AS(FockOracle::from_density({2}, rho), ValidationError);
  rho(1, 1) = 0.5;
  rho(0, 1) = 0.1;
  CHECK_THROWS_AS(FockOracle::from_density({2}, rho), ValidationError);
  rho(1, 0) = 0.1;
  CHECK_NOTHROW(FockOracle::from_density({2}, rho));
  CHECK_THROWS_AS(FockOracle::from_density({3}, rho), InputError);
  CHECK_THROWS_AS(FockOracle::from_ket({2}, Eigen::VectorXcd::Ones(2)), ValidationError);
  CHECK_THROWS_AS(fock::number_state(1, 4).moment(parse_monomial("a1^4", 1)),
                  TruncationError);
}

TEST_CASE("cutoff choice bounds the truncated tail") {
  const auto c = fock::coherent_product(std::vector<Complex>{Complex(1.0, 0.0)});
  CHECK(c.tail_population() < 1e-12);
  CHECK(close(c.moment(parse_monomial("ad1 a1", 1)), 1.0, 1e-10));
  const auto t = fock::two_mode_squeezed_vacuum(0.5);
  CHECK(t.tail_population() < 1e-11);
}
