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
#include <random>
#include <set>

#include "cvent/errors.hpp"
#include "cvent/fock.hpp"
#include "cvent/matrix.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cvent;
using testing::close;

namespace {

MomentMatrix raw_matrix(Eigen::MatrixXcd values) {
  MomentMatrix m;
  m.selection = Selection::range(1, static_cast<std::uint64_t>(values.rows()));
  m.transposition = TranspositionSet(1);
  m.values = std::move(values);
  return m;
}

// Returns deliberately non-Hermitian data for one off-diagonal pair.
class SkewedProvider : public MomentProvider {
 public:
  std::size_t modes() const override { return 1; }
  std::optional<Complex> try_moment(const MonomialIndex& key) const override {
    if (key.is_identity()) return 1.0;
    if (key == parse_monomial("a1", 1)) return Complex(0.1, 0.0);
    if (key == parse_monomial("ad1", 1)) return Complex(0.3, 0.0);
    return 0.5;
  }
  std::string name() const override { return "skewed"; }
};

}  // namespace

TEST_CASE("vacuum moment matrix is diagonal") {
  const CoherentProduct vac(std::vector<Complex>(2, 0.0));
  const auto m = build_matrix(vac, TranspositionSet(2), Selection::range(1, 5));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(5, 5);
  expected.diagonal() << 1, 0, 1, 0, 1;
  CHECK((m.values - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(m.hermiticity_residual == 0.0);
}

TEST_CASE("coherent state matrix is rank deficient") {
  const Complex g(0.7, -0.4);
  const CoherentProduct c(std::vector<Complex>{g});
  const auto m = build_matrix(c, TranspositionSet(1), Selection::range(1, 3));
  CHECK((m.values.row(1) - std::conj(g) * m.values.row(0)).cwiseAbs().maxCoeff() < 1e-14);
  const auto d = determinant(m);
  CHECK(std::abs(d.determinant) < 1e-12);
  CHECK_FALSE(d.negative);
}

TEST_CASE("two-mode squeezed vacuum under transposition of mode 2") {
  for (double r : {0.1, 0.5}) {
    const double s = std::sinh(r), c = std::cosh(r);
    const TwoModeSqueezedVacuum t(r);
    const auto I = TranspositionSet(2, {2});
    const auto m = build_matrix(t, I, Selection::range(1, 5));

    // Explicitly transposed truncated density matrix, traced directly.
    const std::size_t cut = 24;
    const auto ket = fock::two_mode_squeezed_vacuum(r, cut);
    Eigen::MatrixXcd rho(cut * cut, cut * cut);
    for (std::size_t i = 0; i < cut * cut; ++i)
      for (std::size_t j = 0; j < cut * cut; ++j) rho(i, j) = ket.element(i, j);
    const auto pt = FockOracle::from_density(
        {cut, cut}, testing::explicit_pt(rho, {cut, cut}, {false, true}), 1e-9);
    for (std::uint64_t a = 1; a <= 5; ++a) {
      for (std::uint64_t b = 1; b <= 5; ++b) {
        const auto direct =
            pt.expectation(testing::words_for(monomial_at(2, a), monomial_at(2, b)));
        CHECK(close(m.values(a - 1, b - 1), direct, 1e-10));
      }
    }

    // Blocks {a1, ad2}, {ad1, a2} and the identity.
    Eigen::VectorXd expected(5);
    const double b1 = s * s, b2 = s * s + 1;
    expected << b1 - s * c, b1 + s * c, b2 - s * c, b2 + s * c, 1.0;
    std::sort(expected.data(), expected.data() + 5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m.values);
    CHECK((eig.eigenvalues() - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(close(determinant(m).determinant, -s * s * c * c, 1e-10));
  }
}

TEST_CASE("determinants of small Hermitian matrices") {
  CHECK(determinant(raw_matrix(Eigen::MatrixXcd::Ones(1, 1))).determinant == 1.0);
  Eigen::MatrixXcd m(2, 2);
  m << 2, Complex(0, 1), Complex(0, -1), 2;
  const auto d = determinant(raw_matrix(m));
  CHECK(std::abs(d.determinant - 3.0) < 1e-14);
  CHECK(d.imag_residual < 1e-14);
  CHECK(d.valid);
  m << 1, 2, 2, 1;
  const auto neg = determinant(raw_matrix(m));
  CHECK(neg.negative);
  CHECK(neg.determinant == doctest::Approx(-3.0));
  m << 1, 1, 1, 1;
  CHECK_FALSE(determinant(raw_matrix(m)).negative);
}

TEST_CASE("determinants agree with an independent elimination") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 6;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    const Eigen::MatrixXcd h = a + a.adjoint();
    CHECK(close(determinant(raw_matrix(h)).determinant, testing::gauss_det(h), 1e-10));
  }
}

TEST_CASE("complement symmetry of transposed minors") {
  std::mt19937_64 rng(17);
  std::vector<ProviderPtr> providers{
      std::make_shared<TwoModeSqueezedVacuum>(0.6),
      std::make_shared<WState>(WStateParams::symmetric(3, 0.4, 0.02)),
      std::make_shared<WState>(WStateParams{{0.5, {0.1, 0.2}, -0.3}, {0, 0.01, 0.03}}),
      std::make_shared<FockOracle>(fock::random_mixed(2, 3, 6, 2, 99)),
  };
  for (const auto& p : providers) {
    const std::size_t n = p->modes();
    std::uniform_int_distribution<std::uint64_t> pos(1, count_up_to_weight(2 * n, 2));
    std::uniform_int_distribution<std::uint64_t> mask(1, (1ULL << n) - 2);
    for (int t = 0; t < 30; ++t) {
      std::set<std::uint64_t> picks;
      const std::size_t size = 1 + t % 6;
      while (picks.size() < size) picks.insert(pos(rng));
      const Selection R({picks.begin(), picks.end()});
      const auto I = TranspositionSet::from_mask(n, mask(rng));
      const auto a = determinant(build_matrix(*p, I, R));
      const auto b = determinant(build_matrix(*p, I.complement(), R));
      CHECK(std::abs(a.determinant - b.determinant) <= 1e-9 * std::max(1.0, std::abs(a.determinant)));
    }
  }
}

TEST_CASE("eigen scan on a separable state finds nothing") {
  const CoherentProduct c(std::vector<Complex>{{0.3, 0.1}, {-0.5, 0.2}});
  const auto scan = eigen_negativity_scan(c, TranspositionSet(2, {1}), 2, 6);
  CHECK(scan.matrix_size == 15);
  CHECK_FALSE(scan.negative_eigenvalue());
  CHECK_FALSE(scan.witness.has_value());
}

TEST_CASE("eigen scan witness on the squeezed vacuum") {
  const TwoModeSqueezedVacuum t(0.5);
  const auto I = TranspositionSet(2, {2});
  const auto scan = eigen_negativity_scan(t, I, 1, 6);
  CHECK(scan.negative_eigenvalue());
  REQUIRE(scan.witness.has_value());
  for (auto r : scan.witness->selection.positions()) CHECK(r <= 5);
  const auto again = determinant(build_matrix(t, I, scan.witness->selection));
  CHECK(again.negative);
  CHECK(again.determinant == doctest::Approx(scan.witness->determinant));
}

TEST_CASE("eigen scan witnesses on the four-mode W-like state") {
  const WState w(WStateParams::symmetric(4, 0.3, 0.0));
  for (std::size_t cap : {2, 3, 6}) {
    for (const auto& I : canonical_bipartitions(4)) {
      const auto scan = eigen_negativity_scan(w, I, 2, cap);
      CHECK(scan.negative_eigenvalue());
      if (!scan.witness) continue;
      CHECK(scan.witness->selection.size() <= cap);
      const auto again = determinant(build_matrix(w, I, scan.witness->selection));
      CHECK(again.negative);
    }
  }
  // The pair-pair minor on (1,2;3,4) is itself the witness under {1,2}.
  const auto scan = eigen_negativity_scan(w, TranspositionSet(4, {1, 2}), 2, 6);
  REQUIRE(scan.witness.has_value());
  CHECK(scan.witness->selection == Selection({13, 35}));
}

TEST_CASE("named minors") {
  CHECK(label_selection({1, 2, 3, 4}, 4) == Selection({13, 35}));
  CHECK(label_selection({1, 3, 2, 4}, 4) == Selection({20, 33}));
  CHECK(label_selection({2, 3, 1, 4}, 4) == Selection({22, 31}));
  CHECK(parse_minor_label("(1,2;3,4)") == MinorLabel{1, 2, 3, 4});
  CHECK(MinorLabel{2, 3, 1, 4}.str() == "(2,3;1,4)");
  CHECK_THROWS_AS(parse_minor_label("(1,1;3,4)"), InputError);
  CHECK_THROWS_AS(parse_minor_label("(1,2,3,4)"), ParseError);

  const WState vac(WStateParams::symmetric(4, 0.0, 0.0));
  for (const auto& I : canonical_bipartitions(4)) {
    CHECK(std::abs(named_minor(vac, I, {1, 2, 3, 4}).determinant) < 1e-15);
  }
  CHECK_THROWS_AS(named_minor(vac, TranspositionSet(4, {1}), {1, 2, 3, 5}), InputError);
}

TEST_CASE("minor coincidences need the symmetric state") {
  const WState sym(WStateParams::symmetric(4, 0.5, 0.01));
  const auto d1 = named_minor(sym, TranspositionSet(4, {1}), {1, 2, 3, 4}).determinant;
  for (auto I : {TranspositionSet(4, {2}), TranspositionSet(4, {3}),
                 TranspositionSet(4, {1, 2, 3})}) {
    CHECK(std::abs(named_minor(sym, I, {1, 2, 3, 4}).determinant - d1) < 1e-9);
  }
  const auto d2 = named_minor(sym, TranspositionSet(4, {1, 2}), {1, 2, 3, 4}).determinant;
  CHECK(std::abs(named_minor(sym, TranspositionSet(4, {1, 3}), {1, 3, 2, 4}).determinant - d2) < 1e-9);
  CHECK(std::abs(named_minor(sym, TranspositionSet(4, {2, 3}), {2, 3, 1, 4}).determinant - d2) < 1e-9);

  const WState asym(WStateParams{{0.5, 0.8, 0.5, 0.5}, {0.01, 0.01, 0.01, 0.01}});
  const auto a1 = named_minor(asym, TranspositionSet(4, {1}), {1, 2, 3, 4}).determinant;
  double spread = 0.0;
  for (auto I : {TranspositionSet(4, {2}), TranspositionSet(4, {3}),
                 TranspositionSet(4, {1, 2, 3})}) {
    spread = std::max(spread, std::abs(named_minor(asym, I, {1, 2, 3, 4}).determinant - a1));
  }
  CHECK(spread > 1e-6);
}

TEST_CASE("build errors") {
  const auto table = MomentTable::tabulate(TwoModeSqueezedVacuum(0.3), 2);
  try {
    build_matrix(table, TranspositionSet(2, {1}), Selection::range(1, 8));
    FAIL("expected MissingMomentError");
  } catch (const MissingMomentError& e) {
    CHECK(e.keys().size() > 1);
  }
  CHECK_THROWS_AS(build_matrix(SkewedProvider(), TranspositionSet(1), Selection::range(1, 3)),
                  DataQualityError);
  MatrixOptions tiny;
  tiny.max_matrix_size = 10;
  CHECK_THROWS_AS(eigen_negativity_scan(TwoModeSqueezedVacuum(0.3), TranspositionSet(2, {1}),
                                        2, 6, tiny),
                  ResourceError);
  CHECK_THROWS_AS(Selection({3, 2}), InputError);
  CHECK_THROWS_AS(Selection(std::vector<std::uint64_t>{}), InputError);
  CHECK(parse_selection("{13, 35}") == Selection({13, 35}));
  CHECK_THROWS_AS(build_matrix(TwoModeSqueezedVacuum(0.3), TranspositionSet(3),
                               Selection::range(1, 2)),
                  InputError);
}

TEST_CASE("minor JSON") {
  const auto r = determinant(
      build_matrix(TwoModeSqueezedVacuum(0.5), TranspositionSet(2, {1}), Selection({2, 4})));
  const auto j = to_json(r);
  CHECK(j.dump() ==
        R"({"I":[1],"R":[2,4],"det":-0.271540317408,"imag_residual":0.0,"verdict":"negative"})");
}

TEST_CASE("pre-symmetrization residuals are small") {
  const auto p = WStateParams{{0.5, {0.1, 0.3}, -0.2}, {0.0, 0.02, 0.05}};
  const auto full = Selection::range(1, count_up_to_weight(6, 2));
  for (const auto& I : {TranspositionSet(3), TranspositionSet(3, {1}), TranspositionSet(3, {2, 3})}) {
    CHECK(build_matrix(WState(p), I, full).hermiticity_residual < 1e-9);
    CHECK(build_matrix(WState(p, WState::Method::kQuadrature), I, full).hermiticity_residual <
          1e-7);
    CHECK(build_matrix(TwoModeSqueezedVacuum(0.8), TranspositionSet(2, {1}),
                       Selection::range(1, 15)).hermiticity_residual < 1e-9);
  }
}
