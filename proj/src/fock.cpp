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

#include "cvent/fock.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cvent/errors.hpp"
#include "cvent/text.hpp"

namespace cvent {

FockOracle::FockOracle(std::vector<std::size_t> cutoffs)
    : cutoffs_(std::move(cutoffs)), transposed_(cutoffs_.size()) {
  if (cutoffs_.empty()) throw InputError("FockOracle: no modes");
  for (auto c : cutoffs_) {
    if (c < 1) throw InputError("FockOracle: cutoff must be >= 1");
    dimension_ *= c;
  }
}

FockOracle FockOracle::from_density(std::vector<std::size_t> cutoffs,
                                    Eigen::MatrixXcd rho, double tolerance) {
  FockOracle o(std::move(cutoffs));
  if (rho.rows() != static_cast<Eigen::Index>(o.dimension_) ||
      rho.cols() != rho.rows()) {
    throw InputError("FockOracle: density matrix is " +
                     std::to_string(rho.rows()) + "x" +
                     std::to_string(rho.cols()) + ", expected dimension " +
                     std::to_string(o.dimension_));
  }
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tolerance) {
    throw ValidationError("FockOracle: density matrix is not Hermitian "
                          "(max deviation " + format_double(asym) + ")");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > tolerance) {
    throw ValidationError("FockOracle: density matrix trace is " +
                          format_complex(tr));
  }
  o.rho_ = std::move(rho);
  return o;
}

FockOracle FockOracle::from_ket(std::vector<std::size_t> cutoffs,
                                Eigen::VectorXcd ket, double tolerance) {
  FockOracle o(std::move(cutoffs));
  if (ket.size() != static_cast<Eigen::Index>(o.dimension_)) {
    throw InputError("FockOracle: ket has " + std::to_string(ket.size()) +
                     " amplitudes, expected " + std::to_string(o.dimension_));
  }
  if (std::abs(ket.squaredNorm() - 1.0) > tolerance) {
    throw ValidationError("FockOracle: ket norm^2 is " +
                          format_double(ket.squaredNorm()));
  }
  o.pure_ = true;
  o.ket_ = std::move(ket);
  return o;
}

std::vector<std::size_t> FockOracle::digits(std::size_t index) const {
  std::vector<std::size_t> d(cutoffs_.size());
  for (std::size_t m = cutoffs_.size(); m-- > 0;) {
    d[m] = index % cutoffs_[m];
    index /= cutoffs_[m];
  }
  return d;
}

std::size_t FockOracle::index(const std::vector<std::size_t>& digits) const {
  std::size_t idx = 0;
  for (std::size_t m = 0; m < cutoffs_.size(); ++m) {
    idx = idx * cutoffs_[m] + digits[m];
  }
  return idx;
}

Complex FockOracle::raw_element(std::size_t row, std::size_t col) const {
  if (pure_) return ket_(row) * std::conj(ket_(col));
  return rho_(row, col);
}

Complex FockOracle::element(std::size_t row, std::size_t col) const {
  if (transposed_.empty()) return raw_element(row, col);
  auto r = digits(row), c = digits(col);
  for (std::size_t m = 0; m < cutoffs_.size(); ++m) {
    if (transposed_.contains(m + 1)) std::swap(r[m], c[m]);
  }
  return raw_element(index(r), index(c));
}

Complex FockOracle::expectation(const std::vector<QuarticFactor>& words) const {
  if (words.size() != modes()) {
    throw InputError("FockOracle::expectation: " + std::to_string(words.size()) +
                     " words for " + std::to_string(modes()) + " modes");
  }
  // tr(rho X) = sum_n c(n) <n|rho|n'> where X|n> = c(n)|n'>.
  Complex sum = 0.0;
  std::vector<std::size_t> d;
  for (std::size_t col = 0; col < dimension_; ++col) {
    d = digits(col);
    double coef = 1.0;
    bool inside = true;
    for (std::size_t m = 0; m < modes() && coef != 0.0 && inside; ++m) {
      long long n = static_cast<long long>(d[m]);
      const auto& w = words[m];
      auto lower = [&](std::uint32_t e) {
        for (std::uint32_t t = 0; t < e; ++t) {
          if (n == 0) {
            coef = 0.0;
            return;
          }
          coef *= std::sqrt(static_cast<double>(n));
          --n;
        }
      };
      auto raise = [&](std::uint32_t e) {
        for (std::uint32_t t = 0; t < e; ++t) {
          ++n;
          coef *= std::sqrt(static_cast<double>(n));
        }
      };
      lower(w.right_annihilation);
      raise(w.right_creation);
      lower(w.left_annihilation);
      raise(w.left_creation);
      if (n >= static_cast<long long>(cutoffs_[m])) {
        inside = false;
      } else {
        d[m] = static_cast<std::size_t>(n);
      }
    }
    if (coef == 0.0 || !inside) continue;
    sum += coef * element(col, index(d));
  }
  return sum;
}

std::optional<Complex> FockOracle::try_moment(const MonomialIndex& key) const {
  if (key.modes() != modes()) {
    throw InputError("FockOracle: key over " + std::to_string(key.modes()) +
                     " modes, state has " + std::to_string(modes()));
  }
  std::vector<QuarticFactor> words(modes());
  for (std::size_t m = 0; m < modes(); ++m) {
    if (key.creation(m) >= cutoffs_[m] || key.annihilation(m) >= cutoffs_[m]) {
      throw TruncationError("FockOracle: moment <" + key.str() +
                            "> needs exponents beyond the cutoff " +
                            std::to_string(cutoffs_[m]) + " of mode " +
                            std::to_string(m + 1));
    }
    words[m] = {key.creation(m), key.annihilation(m), 0, 0};
  }
  return expectation(words);
}

std::string FockOracle::name() const {
  std::string s = "fock(cutoffs=";
  for (std::size_t m = 0; m < cutoffs_.size(); ++m) {
    if (m) s += "x";
    s += std::to_string(cutoffs_[m]);
  }
  if (!transposed_.empty()) s += ",PT" + transposed_.str();
  return s + ")";
}

FockOracle FockOracle::partially_transposed(const TranspositionSet& set) const {
  if (set.modes() != modes()) {
    throw InputError("partially_transposed: set over " +
                     std::to_string(set.modes()) + " modes, state has " +
                     std::to_string(modes()));
  }
  FockOracle copy = *this;
  copy.transposed_ = compose(transposed_, set);
  return copy;
}

double FockOracle::tail_population() const {
  std::vector<std::vector<double>> marginals(modes());
  for (std::size_t m = 0; m < modes(); ++m) marginals[m].assign(cutoffs_[m], 0.0);
  for (std::size_t i = 0; i < dimension_; ++i) {
    const double p = raw_element(i, i).real();
    const auto d = digits(i);
    for (std::size_t m = 0; m < modes(); ++m) marginals[m][d[m]] += p;
  }
  double worst = 0.0;
  for (const auto& pop : marginals) {
    double top = 0.0;
    for (std::size_t n = pop.size() >= 2 ? pop.size() - 2 : 0; n < pop.size(); ++n) {
      top += pop[n];
    }
    worst = std::max(worst, top);
  }
  return worst;
}

namespace fock {

std::size_t choose_cutoff(const std::function<double(std::size_t)>& population) {
  for (std::size_t c = 2; c < FockOracle::kMaxCutoff; ++c) {
    if (population(c - 2) + population(c - 1) < 1e-12) return c;
  }
  return FockOracle::kMaxCutoff;
}

Eigen::VectorXcd coherent_amplitudes(Complex gamma, std::size_t cutoff) {
  Eigen::VectorXcd v(cutoff);
  Complex amp = std::exp(-0.5 * std::norm(gamma));
  for (std::size_t n = 0; n < cutoff; ++n) {
    v(n) = amp;
    amp *= gamma / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

Eigen::VectorXcd product_ket(const std::vector<Eigen::VectorXcd>& kets) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
  for (const auto& k : kets) {
    Eigen::VectorXcd next(out.size() * k.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      next.segment(i * k.size(), k.size()) = out(i) * k;
    }
    out = std::move(next);
  }
  return out;
}

namespace {

double poisson(double mean, std::size_t n) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(-mean + static_cast<double>(n) * std::log(mean) -
                  std::lgamma(static_cast<double>(n) + 1.0));
}

double max_norm(const std::vector<Complex>& zs) {
  double m = 0.0;
  for (auto z : zs) m = std::max(m, std::norm(z));
  return m;
}

}  // namespace

FockOracle coherent_product(const std::vector<Complex>& gammas,
                            std::size_t cutoff) {
  if (cutoff == 0) {
    const double mean = max_norm(gammas);
    cutoff = choose_cutoff([&](std::size_t n) { return poisson(mean, n); });
  }
  std::vector<Eigen::VectorXcd> kets;
  for (auto g : gammas) kets.push_back(coherent_amplitudes(g, cutoff));
  Eigen::VectorXcd ket = product_ket(kets);
  ket.normalize();
  return FockOracle::from_ket(std::vector<std::size_t>(gammas.size(), cutoff),
                              std::move(ket));
}

FockOracle two_mode_squeezed_vacuum(double r, std::size_t cutoff) {
  const double lambda = std::tanh(r);
  if (cutoff == 0) {
    cutoff = choose_cutoff([&](std::size_t n) {
      return (1.0 - lambda * lambda) * std::pow(lambda * lambda, n);
    });
  }
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(cutoff * cutoff);
  double amp = 1.0 / std::cosh(r);
  for (std::size_t n = 0; n < cutoff; ++n) {
    ket(n * cutoff + n) = amp;
    amp *= lambda;
  }
  ket.normalize();
  return FockOracle::from_ket({cutoff, cutoff}, std::move(ket));
}

FockOracle wstate_pure(const std::vector<Complex>& alpha, std::size_t cutoff) {
  if (alpha.empty()) throw InputError("wstate_pure: no modes");
  if (cutoff == 0) {
    const double mean = max_norm(alpha);
    cutoff = choose_cutoff([&](std::size_t n) { return poisson(mean, n); });
  }
  const std::size_t n = alpha.size();
  Eigen::VectorXcd ket;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Eigen::VectorXcd> kets;
    for (std::size_t m = 0; m < n; ++m) {
      kets.push_back(coherent_amplitudes(m == i ? -alpha[m] : alpha[m], cutoff));
    }
    Eigen::VectorXcd branch = product_ket(kets);
    if (i == 0) {
      ket = std::move(branch);
    } else {
      ket += branch;
    }
  }
  ket.normalize();
  return FockOracle::from_ket(std::vector<std::size_t>(n, cutoff), std::move(ket));
}

FockOracle number_state(std::size_t n, std::size_t cutoff) {
  if (n >= cutoff) throw InputError("number_state: n must be below the cutoff");
  Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(cutoff);
  ket(n) = 1.0;
  return FockOracle::from_ket({cutoff}, std::move(ket));
}

FockOracle random_mixed(std::size_t modes, std::size_t support,
                        std::size_t cutoff, std::size_t terms,
                        std::uint64_t seed) {
  if (support == 0 || support > cutoff) {
    throw InputError("random_mixed: need 1 <= support <= cutoff");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> uniform(0.1, 1.0);

  std::vector<std::size_t> cutoffs(modes, cutoff);
  std::size_t dim = 1;
  for (std::size_t m = 0; m < modes; ++m) dim *= cutoff;

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t t = 0; t < terms; ++t) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::size_t rest = i;
      bool ok = true;
      for (std::size_t m = 0; m < modes; ++m) {
        if (rest % cutoff >= support) ok = false;
        rest /= cutoff;
      }
      if (ok) v(i) = Complex(gauss(rng), gauss(rng));
    }
    v.normalize();
    rho += uniform(rng) * v * v.adjoint();
  }
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return FockOracle::from_density(std::move(cutoffs), std::move(rho));
}

}  // namespace fock

}  // namespace cvent
