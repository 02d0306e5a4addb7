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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cvent/multiindex.hpp"

namespace cvent {

using Complex = std::complex<double>;

/// Source of normally ordered moments <prod_i ad_i^{k_i} a_i^{l_i}>, keyed by
/// MonomialIndex (k = creation, l = annihilation exponents).
///
/// Providers are immutable after construction and may be shared across
/// threads.
class MomentProvider {
 public:
  virtual ~MomentProvider() = default;

  virtual std::size_t modes() const = 0;

  /// The moment, or nullopt when this provider does not know it.
  virtual std::optional<Complex> try_moment(const MonomialIndex& key) const = 0;

  /// Short human-readable description used in report provenance.
  virtual std::string name() const = 0;

  /// Like try_moment, but throws MissingMomentError for unknown keys.
  Complex moment(const MonomialIndex& key) const;
};

using ProviderPtr = std::shared_ptr<const MomentProvider>;

/// Moments held explicitly, e.g. measured data loaded from a file.
///
/// The identity key is always present with value 1. Inserting a key also
/// stores its conjugate partner <ad^l a^k> = conj(<ad^k a^l>); inserting a
/// value that contradicts an existing partner by more than `tolerance`
/// throws ValidationError.
class MomentTable : public MomentProvider {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  explicit MomentTable(std::size_t modes,
                       double tolerance = kDefaultTolerance);

  /// All keys of weight <= max_weight taken from `source`.
  static MomentTable tabulate(const MomentProvider& source,
                              std::uint32_t max_weight,
                              double tolerance = kDefaultTolerance);

  void insert(const MonomialIndex& key, Complex value);

  std::size_t modes() const override { return modes_; }
  std::optional<Complex> try_moment(const MonomialIndex& key) const override;
  std::string name() const override;

  double tolerance() const { return tolerance_; }
  std::uint64_t max_order() const { return max_order_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<MonomialIndex, Complex>& entries() const { return entries_; }

  void set_name(std::string name) { name_ = std::move(name); }

 private:
  std::size_t modes_;
  double tolerance_;
  std::uint64_t max_order_ = 0;
  std::map<MonomialIndex, Complex> entries_;
  std::string name_ = "table";
};

/// Reads the JSON moment-table document
///   {"modes": n, "tolerance": t, "entries": [{"k": [...], "l": [...],
///    "re": x, "im": y}, ...]}
/// `tolerance` is optional. Throws ParseError for malformed documents and
/// ValidationError for normalization or Hermiticity violations.
MomentTable load_moment_table(std::istream& in);
MomentTable load_moment_table_file(const std::string& path);

/// Writes the document read by load_moment_table. Entries are listed in
/// moment-sequence order with values rounded to 12 significant digits, so
/// output is byte-stable.
void write_moment_table(std::ostream& out, const MomentTable& table);

/// Product of coherent states |gamma_1> ... |gamma_n>.
class CoherentProduct : public MomentProvider {
 public:
  explicit CoherentProduct(std::vector<Complex> amplitudes);

  std::size_t modes() const override { return amplitudes_.size(); }
  std::optional<Complex> try_moment(const MonomialIndex& key) const override;
  std::string name() const override;

  const std::vector<Complex>& amplitudes() const { return amplitudes_; }

 private:
  std::vector<Complex> amplitudes_;
};

/// Two-mode squeezed vacuum sum_n tanh(r)^n |n,n> / cosh(r).
///
/// Moments come from Wick's theorem with the normally ordered contractions
/// <ad_i a_i> = sinh^2 r and <a_1 a_2> = <ad_1 ad_2> = sinh r cosh r, which
/// gives a finite closed sum for every key.
class TwoModeSqueezedVacuum : public MomentProvider {
 public:
  explicit TwoModeSqueezedVacuum(double squeezing) : r_(squeezing) {}

  std::size_t modes() const override { return 2; }
  std::optional<Complex> try_moment(const MonomialIndex& key) const override;
  std::string name() const override;

  double squeezing() const { return r_; }

 private:
  double r_;
};

struct WStateParams {
  std::vector<Complex> alpha;  ///< displacement of each mode
  std::vector<double> nbar;    ///< thermal noise photon number of each mode

  static WStateParams symmetric(std::size_t modes, Complex alpha, double nbar);
  std::size_t modes() const { return alpha.size(); }
};

/// Noisy continuous-variable W-like state
///   rho = N int P(beta, alpha) |psi(beta)><psi(beta)| d^2 beta,
///   |psi(beta)> = sum_i |beta_1, ..., -beta_i, ..., beta_n>,
/// with P a product of Gaussian kernels exp(-|beta-alpha|^2/nbar)/(pi nbar)
/// (a delta function at nbar = 0).
///
/// Every cross term <beta^(i)| ... |beta^(j)> factorizes over modes into
/// integrals of a polynomial against a Gaussian; modes whose sign differs
/// between the two branches pick up the overlap exp(-2|beta|^2). The
/// normalization N is the reciprocal of the unnormalized identity moment.
class WState : public MomentProvider {
 public:
  enum class Method {
    /// Closed-form complex Gaussian moments.
    kAnalytic,
    /// Gauss-Hermite quadrature over Re(beta), Im(beta) per mode.
    kQuadrature,
  };

  explicit WState(WStateParams params, Method method = Method::kAnalytic,
                  std::size_t quadrature_nodes = 48);

  std::size_t modes() const override { return params_.modes(); }
  std::optional<Complex> try_moment(const MonomialIndex& key) const override;
  std::string name() const override;

  const WStateParams& params() const { return params_; }
  double normalization() const { return normalization_; }

 private:
  // int P(beta) conj(beta)^k beta^l [exp(-2|beta|^2) if flipped] d^2 beta
  Complex mode_integral(std::size_t mode, std::uint32_t k, std::uint32_t l,
                        bool flipped) const;
  Complex unnormalized(const MonomialIndex& key) const;

  WStateParams params_;
  Method method_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double normalization_ = 1.0;
};

}  // namespace cvent
