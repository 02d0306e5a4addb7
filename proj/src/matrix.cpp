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

#include "cvent/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "cvent/errors.hpp"
#include "cvent/text.hpp"
#include "detail/combinatorics.hpp"

namespace cvent {

// ---------------------------------------------------------------------------
// Selection

Selection::Selection(std::vector<std::uint64_t> positions)
    : positions_(std::move(positions)) {
  if (positions_.empty()) throw InputError("Selection: must be nonempty");
  if (positions_.front() == 0) {
    throw InputError("Selection: positions are 1-based");
  }
  for (std::size_t i = 1; i < positions_.size(); ++i) {
    if (positions_[i] <= positions_[i - 1]) {
      throw InputError("Selection: positions must be strictly increasing");
    }
  }
}

Selection Selection::range(std::uint64_t first, std::uint64_t last) {
  if (first == 0 || last < first) {
    throw InputError("Selection::range: need 1 <= first <= last");
  }
  std::vector<std::uint64_t> p(last - first + 1);
  std::iota(p.begin(), p.end(), first);
  return Selection(std::move(p));
}

std::string Selection::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(positions_[i]);
  }
  return s + "}";
}

Selection parse_selection(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::string body(text);
  for (char& c : body) {
    if (c == '{' || c == '}' || c == ',') c = ' ';
  }
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("bad selection position '" + tok + "'");
    }
    out.push_back(v);
  }
  return Selection(std::move(out));
}

// ---------------------------------------------------------------------------
// Matrices and minors

namespace {

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& m,
                           const std::vector<std::size_t>& idx) {
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) out(a, b) = m(idx[a], idx[b]);
  }
  return out;
}

struct Spectrum {
  double min = 0.0;
  double threshold = 0.0;
  Eigen::VectorXcd min_vector;
};

Spectrum spectrum(const Eigen::MatrixXcd& m, const MatrixOptions& options) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigen decomposition failed");
  }
  const auto& ev = solver.eigenvalues();
  Spectrum s;
  s.min = ev(0);
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  s.threshold = options.eigen_tol * scale;
  s.min_vector = solver.eigenvectors().col(0);
  return s;
}

MinorResult minor_from(const Eigen::MatrixXcd& sub, const Selection& selection,
                       const TranspositionSet& transposition,
                       const MatrixOptions& options) {
  if (!sub.allFinite()) throw NumericError("moment matrix has non-finite entries");
  MinorResult r;
  r.selection = selection;
  r.transposition = transposition;
  const Complex det = Eigen::FullPivLU<Eigen::MatrixXcd>(sub).determinant();
  if (!std::isfinite(det.real()) || !std::isfinite(det.imag())) {
    throw NumericError("determinant is not finite");
  }
  r.determinant = det.real();
  r.imag_residual = std::abs(det.imag());
  double hadamard = 1.0;
  for (Eigen::Index j = 0; j < sub.cols(); ++j) hadamard *= sub.col(j).norm();
  r.threshold = options.det_tol * hadamard;
  r.negative = r.determinant < -r.threshold;
  r.valid = r.imag_residual <= 1e-10 * std::max(1.0, std::abs(r.determinant));
  return r;
}

}  // namespace

MomentMatrix build_matrix(const MomentProvider& provider,
                          const TranspositionSet& transposition,
                          const Selection& selection,
                          const MatrixOptions& options) {
  const std::size_t n = provider.modes();
  if (transposition.modes() != n) {
    throw InputError("build_matrix: transposition set over " +
                     std::to_string(transposition.modes()) +
                     " modes, provider has " + std::to_string(n));
  }
  const auto size = static_cast<Eigen::Index>(selection.size());
  std::vector<MonomialIndex> monomials;
  monomials.reserve(selection.size());
  for (auto p : selection.positions()) monomials.push_back(monomial_at(n, p));

  std::set<std::pair<std::uint64_t, std::string>> missing;
  auto lookup = [&](const MonomialIndex& key) -> Complex {
    if (auto v = provider.try_moment(key)) return *v;
    missing.emplace(position_of(key), key.str());
    return 0.0;
  };

  Eigen::MatrixXcd raw(size, size);
  for (Eigen::Index s = 0; s < size; ++s) {
    for (Eigen::Index t = 0; t < size; ++t) {
      raw(s, t) = entry_expression_pt(monomials[s], monomials[t], transposition,
                                      options.algebra)
                      .evaluate(lookup);
    }
  }
  if (!missing.empty()) {
    std::vector<std::string> keys;
    for (auto& [pos, k] : missing) keys.push_back(k);
    throw MissingMomentError(std::move(keys));
  }
  if (!raw.allFinite()) throw NumericError("moment matrix has non-finite entries");

  MomentMatrix m;
  m.selection = selection;
  m.transposition = transposition;
  m.provenance = provider.name();
  m.hermiticity_residual = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, raw.cwiseAbs().maxCoeff());
  if (m.hermiticity_residual > options.hermiticity_tol * scale) {
    throw DataQualityError("moment matrix " + selection.str() + " under PT" +
                           transposition.str() + " is not Hermitian: residual " +
                           format_double(m.hermiticity_residual));
  }
  m.values = 0.5 * (raw + raw.adjoint());
  return m;
}

MinorResult determinant(const MomentMatrix& m, const MatrixOptions& options) {
  return minor_from(m.values, m.selection, m.transposition, options);
}

MinorResult principal_minor(const Eigen::MatrixXcd& values,
                            const std::vector<std::size_t>& indices,
                            const Selection& selection,
                            const TranspositionSet& transposition,
                            const MatrixOptions& options) {
  return minor_from(submatrix(values, indices), selection, transposition,
                    options);
}

// ---------------------------------------------------------------------------
// Eigenvalue scan

namespace {

Selection positions_of(const std::vector<std::size_t>& indices) {
  std::vector<std::uint64_t> p;
  for (auto i : indices) p.push_back(i + 1);
  std::sort(p.begin(), p.end());
  return Selection(std::move(p));
}

// Drops indices from `support`, smallest eigenvector weight first, while the
// principal submatrix stays indefinite.
std::vector<std::size_t> shrink(const Eigen::MatrixXcd& full,
                                std::vector<std::size_t> support,
                                const MatrixOptions& options) {
  while (support.size() > 1) {
    const auto eig = spectrum(submatrix(full, support), options);
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(eig.min_vector(a)) < std::abs(eig.min_vector(b));
    });
    bool dropped = false;
    for (auto drop : order) {
      std::vector<std::size_t> trial;
      trial.reserve(support.size() - 1);
      for (std::size_t i = 0; i < support.size(); ++i) {
        if (i != drop) trial.push_back(support[i]);
      }
      const auto s = spectrum(submatrix(full, trial), options);
      if (s.min < -s.threshold) {
        support = std::move(trial);
        dropped = true;
        break;
      }
    }
    if (!dropped) break;
  }
  return support;
}

// Lexicographically first subset of size <= max_size with a negative
// determinant, bounded by `budget` determinant evaluations.
std::optional<std::vector<std::size_t>> exhaustive(
    const Eigen::MatrixXcd& full, std::size_t max_size, std::size_t budget,
    const TranspositionSet& transposition, const MatrixOptions& options) {
  const std::size_t n = static_cast<std::size_t>(full.rows());
  std::size_t spent = 0;
  for (std::size_t size = 2; size <= std::min(max_size, n); ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (++spent > budget) return std::nullopt;
      const auto r = principal_minor(full, idx, positions_of(idx),
                                     transposition, options);
      if (r.negative) return idx;
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

ScanResult eigen_negativity_scan(const MomentProvider& provider,
                                 const TranspositionSet& transposition,
                                 std::uint32_t max_order,
                                 std::size_t max_minor_size,
                                 const MatrixOptions& options) {
  if (max_order < 1) throw InputError("eigen_negativity_scan: max_order must be >= 1");
  if (max_minor_size < 1) {
    throw InputError("eigen_negativity_scan: max_minor_size must be >= 1");
  }
  const auto size = count_up_to_weight(2 * provider.modes(), max_order);
  if (size > options.max_matrix_size) {
    throw ResourceError("moment matrix of order " + std::to_string(max_order) +
                        " over " + std::to_string(provider.modes()) +
                        " modes has " + std::to_string(size) +
                        " rows, above the cap of " +
                        std::to_string(options.max_matrix_size));
  }
  const auto m = build_matrix(provider, transposition, Selection::range(1, size),
                              options);
  const auto eig = spectrum(m.values, options);

  ScanResult result;
  result.matrix_size = size;
  result.min_eigenvalue = eig.min;
  result.eigen_threshold = eig.threshold;
  if (!result.negative_eigenvalue()) return result;

  const double vmax = eig.min_vector.cwiseAbs().maxCoeff();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < size; ++i) {
    if (std::abs(eig.min_vector(i)) > 1e-9 * vmax) support.push_back(i);
  }
  {
    const auto s = spectrum(submatrix(m.values, support), options);
    if (!(s.min < -s.threshold)) {
      support.resize(size);
      std::iota(support.begin(), support.end(), 0);
    }
  }
  support = shrink(m.values, std::move(support), options);

  std::optional<std::vector<std::size_t>> found;
  if (support.size() <= max_minor_size &&
      principal_minor(m.values, support, positions_of(support), transposition,
                      options)
          .negative) {
    found = support;
  } else {
    found = exhaustive(m.values, max_minor_size, 500000, transposition, options);
  }
  if (!found) return result;

  // Witnesses are re-derived from the provider rather than the scan matrix.
  auto rebuilt = determinant(
      build_matrix(provider, transposition, positions_of(*found), options),
      options);
  if (rebuilt.negative) result.witness = std::move(rebuilt);
  return result;
}

// ---------------------------------------------------------------------------
// Named minors

std::string MinorLabel::str() const {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ";" +
         std::to_string(k) + "," + std::to_string(l) + ")";
}

MinorLabel parse_minor_label(std::string_view text) {
  static const std::regex pattern(
      R"(\s*\(\s*(\d+)\s*,\s*(\d+)\s*;\s*(\d+)\s*,\s*(\d+)\s*\)\s*)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(text.begin(), text.end(), m, pattern)) {
    throw ParseError("bad minor label '" + std::string(text) +
                     "', expected (i,j;k,l)");
  }
  MinorLabel label{std::stoul(m[1].str()), std::stoul(m[2].str()),
                   std::stoul(m[3].str()), std::stoul(m[4].str())};
  const std::size_t q[4] = {label.i, label.j, label.k, label.l};
  for (std::size_t a = 0; a < 4; ++a) {
    if (q[a] == 0) throw InputError("minor label " + label.str() + ": modes start at 1");
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (q[a] == q[b]) {
        throw InputError("minor label " + label.str() + " repeats mode " +
                         std::to_string(q[a]));
      }
    }
  }
  return label;
}

Selection label_selection(const MinorLabel& label, std::size_t modes) {
  const std::size_t q[4] = {label.i, label.j, label.k, label.l};
  for (std::size_t a = 0; a < 4; ++a) {
    if (q[a] == 0 || q[a] > modes) {
      throw InputError("minor label " + label.str() + ": mode out of range 1.." +
                       std::to_string(modes));
    }
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (q[a] == q[b]) {
        throw InputError("minor label " + label.str() + " repeats mode " +
                         std::to_string(q[a]));
      }
    }
  }
  MonomialIndex first(modes), second(modes);
  first.annihilation(label.i - 1) = 1;
  first.annihilation(label.j - 1) = 1;
  second.annihilation(label.k - 1) = 1;
  second.annihilation(label.l - 1) = 1;
  std::vector<std::uint64_t> p = {position_of(first), position_of(second)};
  std::sort(p.begin(), p.end());
  return Selection(std::move(p));
}

MinorResult named_minor(const MomentProvider& provider,
                        const TranspositionSet& transposition,
                        const MinorLabel& label, const MatrixOptions& options) {
  return determinant(build_matrix(provider, transposition,
                                  label_selection(label, provider.modes()),
                                  options),
                     options);
}

nlohmann::ordered_json to_json(const MinorResult& result) {
  nlohmann::ordered_json j;
  j["I"] = result.transposition.members();
  j["R"] = result.selection.positions();
  j["det"] = round12(result.determinant);
  j["imag_residual"] = round12(result.imag_residual);
  j["verdict"] = result.negative ? "negative" : "nonnegative";
  return j;
}

}  // namespace cvent
