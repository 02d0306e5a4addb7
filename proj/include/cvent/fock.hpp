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

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

#include "cvent/moments.hpp"
#include "cvent/operator_algebra.hpp"
#include "cvent/transpositions.hpp"

namespace cvent {

/// Brute-force moments of a state given explicitly in a truncated Fock space.
///
/// The state is stored either as a ket or as a density matrix over the
/// product basis |n_1, ..., n_N>, 0 <= n_i < cutoff_i, with mode 1 the most
/// significant digit. Expectations of arbitrary per-mode words are computed
/// by exact ladder arithmetic on basis states, so they are exact for states
/// whose support lies inside the truncated space; no normal ordering is
/// involved. Partial transposition is applied to the stored matrix elements
/// (lazily, by exchanging the transposed digits of row and column).
class FockOracle : public MomentProvider {
 public:
  static constexpr double kDefaultTolerance = 1e-10;
  static constexpr std::size_t kMaxCutoff = 40;

  /// Validates Hermiticity and unit trace within `tolerance`.
  static FockOracle from_density(std::vector<std::size_t> cutoffs,
                                 Eigen::MatrixXcd rho,
                                 double tolerance = kDefaultTolerance);
  /// Validates unit norm within `tolerance`.
  static FockOracle from_ket(std::vector<std::size_t> cutoffs,
                             Eigen::VectorXcd ket,
                             double tolerance = kDefaultTolerance);

  std::size_t modes() const override { return cutoffs_.size(); }
  const std::vector<std::size_t>& cutoffs() const { return cutoffs_; }
  std::size_t dimension() const { return dimension_; }
  const TranspositionSet& transposition() const { return transposed_; }

  /// <prod_i ad^k_i a^l_i>; throws TruncationError when an exponent reaches
  /// the cutoff of its mode.
  std::optional<Complex> try_moment(const MonomialIndex& key) const override;
  std::string name() const override;

  /// tr(rho prod_i word_i) for one (not necessarily normally ordered) word
  /// per mode.
  Complex expectation(const std::vector<QuarticFactor>& words) const;

  /// The same state with PT_I applied (composing with any existing PT).
  FockOracle partially_transposed(const TranspositionSet& set) const;

  /// Largest population of the top two Fock layers over all modes; a
  /// truncation-error estimate for states cut from an infinite expansion.
  double tail_population() const;

  /// <m|rho|n> with the current partial transposition applied.
  Complex element(std::size_t row, std::size_t col) const;

  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t index(const std::vector<std::size_t>& digits) const;

 private:
  FockOracle(std::vector<std::size_t> cutoffs);

  Complex raw_element(std::size_t row, std::size_t col) const;

  std::vector<std::size_t> cutoffs_;
  std::size_t dimension_ = 1;
  bool pure_ = false;
  Eigen::VectorXcd ket_;
  Eigen::MatrixXcd rho_;
  TranspositionSet transposed_;
};

namespace fock {

/// Smallest cutoff c such that population(c-2) + population(c-1) < 1e-12,
/// capped at FockOracle::kMaxCutoff.
std::size_t choose_cutoff(const std::function<double(std::size_t)>& population);

/// Single-mode coherent-state amplitudes <n|gamma>, n < cutoff.
Eigen::VectorXcd coherent_amplitudes(Complex gamma, std::size_t cutoff);

/// Kronecker product of single-mode kets, mode 1 most significant.
Eigen::VectorXcd product_ket(const std::vector<Eigen::VectorXcd>& kets);

FockOracle coherent_product(const std::vector<Complex>& gammas,
                            std::size_t cutoff = 0);
FockOracle two_mode_squeezed_vacuum(double r, std::size_t cutoff = 0);

/// Noiseless W-like state sum_i |alpha_1, ..., -alpha_i, ..., alpha_n>,
/// normalized.
FockOracle wstate_pure(const std::vector<Complex>& alpha,
                       std::size_t cutoff = 0);

/// A single Fock state |n> on one mode.
FockOracle number_state(std::size_t n, std::size_t cutoff);

/// Density matrix built from `terms` random kets supported on photon
/// numbers below `support` in each mode, embedded with the given cutoff.
FockOracle random_mixed(std::size_t modes, std::size_t support,
                        std::size_t cutoff, std::size_t terms,
                        std::uint64_t seed);

}  // namespace fock

}  // namespace cvent
