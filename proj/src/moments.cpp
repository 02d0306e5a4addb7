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

#include "cvent/moments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cvent/errors.hpp"
#include "cvent/text.hpp"
#include "cvent/quadrature.hpp"
#include "detail/combinatorics.hpp"
#include "json.hpp"

namespace cvent {

namespace {

void check_key_modes(const MonomialIndex& key, std::size_t modes,
                     const std::string& who) {
  if (key.modes() != modes) {
    throw InputError(who + ": key over " + std::to_string(key.modes()) +
                     " modes, provider has " + std::to_string(modes));
  }
}

Complex ipow(Complex z, std::uint32_t e) {
  Complex r = 1.0;
  for (std::uint32_t i = 0; i < e; ++i) r *= z;
  return r;
}

double ipow(double x, std::uint32_t e) {
  double r = 1.0;
  for (std::uint32_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

MissingMomentError::MissingMomentError(std::vector<std::string> keys)
    : Error([&] {
        std::string msg = "missing moments:";
        for (const auto& k : keys) msg += " <" + k + ">";
        return msg;
      }()),
      keys_(std::move(keys)) {}

Complex MomentProvider::moment(const MonomialIndex& key) const {
  auto v = try_moment(key);
  if (!v) throw MissingMomentError({key.str()});
  return *v;
}

// ---------------------------------------------------------------------------
// MomentTable

MomentTable::MomentTable(std::size_t modes, double tolerance)
    : modes_(modes), tolerance_(tolerance) {
  if (modes == 0) throw InputError("MomentTable: modes must be >= 1");
  if (!(tolerance >= 0.0)) {
    throw InputError("MomentTable: tolerance must be nonnegative");
  }
  entries_.emplace(MonomialIndex::identity(modes), 1.0);
}

MomentTable MomentTable::tabulate(const MomentProvider& source,
                                  std::uint32_t max_weight, double tolerance) {
  MomentTable table(source.modes(), tolerance);
  const auto count = count_up_to_weight(2 * source.modes(), max_weight);
  for (std::uint64_t p = 1; p <= count; ++p) {
    const auto key = monomial_at(source.modes(), p);
    table.insert(key, source.moment(key));
  }
  table.name_ = source.name();
  return table;
}

void MomentTable::insert(const MonomialIndex& key, Complex value) {
  check_key_modes(key, modes_, "MomentTable");
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw ValidationError("moment <" + key.str() + "> is not finite");
  }
  if (key.is_identity()) {
    if (std::abs(value - 1.0) > tolerance_) {
      throw ValidationError("normalization moment <1> = " +
                            format_complex(value) + ", expected 1");
    }
    return;
  }
  const auto partner = key.adjoint();
  if (auto it = entries_.find(key); it != entries_.end()) {
    if (std::abs(it->second - value) > tolerance_) {
      throw ValidationError("conflicting values for <" + key.str() + ">: " +
                            format_complex(it->second) + " vs " +
                            format_complex(value));
    }
    return;
  }
  if (auto it = entries_.find(partner); it != entries_.end()) {
    if (std::abs(it->second - std::conj(value)) > tolerance_) {
      throw ValidationError("Hermiticity violation: <" + key.str() + "> = " +
                            format_complex(value) + " but <" +
                            partner.str() + "> = " +
                            format_complex(it->second));
    }
  } else if (partner == key && 2.0 * std::abs(value.imag()) > tolerance_) {
    throw ValidationError("self-adjoint moment <" + key.str() +
                          "> has imaginary part " +
                          format_double(value.imag()));
  }
  entries_.emplace(key, value);
  if (partner != key && !entries_.count(partner)) {
    entries_.emplace(partner, std::conj(value));
  }
  max_order_ = std::max(max_order_, key.weight());
}

std::optional<Complex> MomentTable::try_moment(const MonomialIndex& key) const {
  check_key_modes(key, modes_, "MomentTable");
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string MomentTable::name() const { return name_; }

MomentTable load_moment_table(std::istream& in) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("moment table: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw ParseError("moment table: expected an object");
    if (!doc.contains("modes") || !doc["modes"].is_number_unsigned() ||
        doc["modes"].get<std::size_t>() == 0) {
      throw ParseError("moment table: 'modes' must be a positive integer");
    }
    const auto modes = doc["modes"].get<std::size_t>();
    double tolerance = MomentTable::kDefaultTolerance;
    if (doc.contains("tolerance")) {
      if (!doc["tolerance"].is_number() || doc["tolerance"].get<double>() < 0) {
        throw ParseError("moment table: 'tolerance' must be a nonnegative number");
      }
      tolerance = doc["tolerance"].get<double>();
    }
    if (!doc.contains("entries") || !doc["entries"].is_array()) {
      throw ParseError("moment table: 'entries' must be an array");
    }

    MomentTable table(modes, tolerance);
    bool has_identity = false;
    std::size_t index = 0;
    for (const auto& e : doc["entries"]) {
      const std::string where = "moment table entry " + std::to_string(index++);
      if (!e.is_object()) throw ParseError(where + ": expected an object");
      auto exponents = [&](const char* field) {
        if (!e.contains(field) || !e[field].is_array()) {
          throw ParseError(where + ": '" + field + "' must be an array");
        }
        std::vector<std::uint32_t> out;
        for (const auto& x : e[field]) {
          if (!x.is_number_unsigned()) {
            throw ParseError(where + ": '" + field +
                             "' entries must be nonnegative integers");
          }
          out.push_back(x.get<std::uint32_t>());
        }
        if (out.size() != modes) {
          throw InputError(where + ": '" + field + "' has " +
                           std::to_string(out.size()) + " exponents, table has " +
                           std::to_string(modes) + " modes");
        }
        return out;
      };
      auto number = [&](const char* field, bool required) {
        if (!e.contains(field)) {
          if (required) throw ParseError(where + ": missing '" + field + "'");
          return 0.0;
        }
        if (!e[field].is_number()) {
          throw ParseError(where + ": '" + field + "' must be a number");
        }
        return e[field].get<double>();
      };
      MonomialIndex key(exponents("k"), exponents("l"));
      const Complex value(number("re", true), number("im", false));
      if (key.is_identity()) has_identity = true;
      table.insert(key, value);
    }
    if (!has_identity) {
      throw ValidationError("moment table: identity entry (all exponents 0) "
                            "is mandatory");
    }
    return table;
  } catch (const json::exception& e) {
    throw ParseError(std::string("moment table: ") + e.what());
  }
}

MomentTable load_moment_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open moment table '" + path + "'");
  auto table = load_moment_table(in);
  table.set_name(path);
  return table;
}

void write_moment_table(std::ostream& out, const MomentTable& table) {
  using nlohmann::ordered_json;
  std::vector<std::pair<std::uint64_t, const MonomialIndex*>> order;
  for (const auto& [key, value] : table.entries()) {
    order.emplace_back(position_of(key), &key);
  }
  std::sort(order.begin(), order.end());

  ordered_json doc;
  doc["modes"] = table.modes();
  doc["tolerance"] = table.tolerance();
  ordered_json entries = ordered_json::array();
  for (const auto& [pos, key] : order) {
    const Complex v = table.entries().at(*key);
    ordered_json e;
    e["k"] = key->creation();
    e["l"] = key->annihilation();
    e["re"] = round12(v.real());
    e["im"] = round12(v.imag());
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// CoherentProduct

CoherentProduct::CoherentProduct(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InputError("CoherentProduct: no modes");
}

std::optional<Complex> CoherentProduct::try_moment(
    const MonomialIndex& key) const {
  check_key_modes(key, modes(), "CoherentProduct");
  Complex v = 1.0;
  for (std::size_t i = 0; i < modes(); ++i) {
    v *= ipow(std::conj(amplitudes_[i]), key.creation(i)) *
         ipow(amplitudes_[i], key.annihilation(i));
  }
  return v;
}

std::string CoherentProduct::name() const {
  std::string s = "coherent(";
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    if (i) s += ",";
    s += format_complex(amplitudes_[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// TwoModeSqueezedVacuum

std::optional<Complex> TwoModeSqueezedVacuum::try_moment(
    const MonomialIndex& key) const {
  check_key_modes(key, 2, "TwoModeSqueezedVacuum");
  const std::int64_t k1 = key.creation(0), l1 = key.annihilation(0);
  const std::int64_t k2 = key.creation(1), l2 = key.annihilation(1);
  // Photon numbers are perfectly correlated: the moment vanishes unless both
  // modes are shifted by the same amount.
  if (k1 - l1 != k2 - l2) return Complex(0.0);

  const double s2 = std::sinh(r_) * std::sinh(r_);
  const double cs = std::sinh(r_) * std::cosh(r_);
  double sum = 0.0;
  // x = number of (ad_1, a_1) contractions; the other ad_1 pair with ad_2,
  // the other a_1 with a_2, and the y leftover (ad_2, a_2) pair together.
  for (std::int64_t x = 0; x <= std::min(k1, l1); ++x) {
    const std::int64_t y = k2 - k1 + x;
    if (y < 0 || k1 - x > k2 || l1 - x > l2) continue;
    const double pairings =
        static_cast<double>(detail::binomial(k1, x)) *
        static_cast<double>(detail::binomial(l1, x)) *
        static_cast<double>(detail::factorial(x)) *
        static_cast<double>(detail::factorial(k2)) /
        static_cast<double>(detail::factorial(y)) *
        static_cast<double>(detail::factorial(l2)) /
        static_cast<double>(detail::factorial(y)) *
        static_cast<double>(detail::factorial(y));
    sum += pairings * ipow(s2, static_cast<std::uint32_t>(x + y)) *
           ipow(cs, static_cast<std::uint32_t>(k1 - x + l1 - x));
  }
  return Complex(sum);
}

std::string TwoModeSqueezedVacuum::name() const {
  return "tmsv(r=" + format_double(r_) + ")";
}

// ---------------------------------------------------------------------------
// WState

WStateParams WStateParams::symmetric(std::size_t modes, Complex alpha,
                                     double nbar) {
  return {std::vector<Complex>(modes, alpha), std::vector<double>(modes, nbar)};
}

WState::WState(WStateParams params, Method method,
               std::size_t quadrature_nodes)
    : params_(std::move(params)), method_(method) {
  if (params_.alpha.empty()) throw InputError("WState: no modes");
  if (params_.alpha.size() != params_.nbar.size()) {
    throw InputError("WState: alpha and nbar must have one entry per mode");
  }
  for (double nb : params_.nbar) {
    if (!(nb >= 0.0) || !std::isfinite(nb)) {
      throw InputError("WState: nbar must be finite and >= 0, got " +
                       format_double(nb));
    }
  }
  if (method_ == Method::kQuadrature) {
    auto rule = gauss_hermite(quadrature_nodes);
    nodes_ = std::move(rule.nodes);
    weights_ = std::move(rule.weights);
  }
  const double norm = unnormalized(MonomialIndex::identity(modes())).real();
  if (!(norm > 0.0)) throw NumericError("WState: state has zero norm");
  normalization_ = 1.0 / norm;
}

Complex WState::mode_integral(std::size_t mode, std::uint32_t k,
                              std::uint32_t l, bool flipped) const {
  const Complex alpha = params_.alpha[mode];
  const double nbar = params_.nbar[mode];

  if (method_ == Method::kQuadrature && nbar > 0.0) {
    // beta = alpha + sqrt(nbar) (x + i y) turns P d^2 beta into
    // exp(-x^2 - y^2) dx dy / pi.
    const double width = std::sqrt(nbar);
    Complex sum = 0.0;
    for (std::size_t a = 0; a < nodes_.size(); ++a) {
      for (std::size_t b = 0; b < nodes_.size(); ++b) {
        const Complex beta = alpha + width * Complex(nodes_[a], nodes_[b]);
        Complex f = ipow(std::conj(beta), k) * ipow(beta, l);
        if (flipped) f *= std::exp(-2.0 * std::norm(beta));
        sum += weights_[a] * weights_[b] * f;
      }
    }
    return sum / std::numbers::pi;
  }

  // P(beta) exp(-2|beta|^2) is again a complex Gaussian, with mean
  // alpha/(1+2 nbar), variance nbar/(1+2 nbar) and total weight
  // exp(-2|alpha|^2/(1+2 nbar))/(1+2 nbar).
  Complex mean = alpha;
  double variance = nbar;
  double scale = 1.0;
  if (flipped) {
    const double g = 1.0 + 2.0 * nbar;
    mean = alpha / g;
    variance = nbar / g;
    scale = std::exp(-2.0 * std::norm(alpha) / g) / g;
  }
  // E[conj(beta)^k beta^l] = sum_j C(k,j) C(l,j) j! var^j conj(mean)^(k-j)
  // mean^(l-j).
  Complex sum = 0.0;
  for (std::uint32_t j = 0; j <= std::min(k, l); ++j) {
    const double c = static_cast<double>(detail::binomial(k, j)) *
                     static_cast<double>(detail::binomial(l, j)) *
                     static_cast<double>(detail::factorial(j));
    sum += c * ipow(variance, j) * ipow(std::conj(mean), k - j) *
           ipow(mean, l - j);
  }
  return scale * sum;
}

Complex WState::unnormalized(const MonomialIndex& key) const {
  const std::size_t n = modes();
  std::vector<Complex> same(n), flipped(n);
  for (std::size_t m = 0; m < n; ++m) {
    same[m] = mode_integral(m, key.creation(m), key.annihilation(m), false);
    flipped[m] = mode_integral(m, key.creation(m), key.annihilation(m), true);
  }
  // <beta^(i)| prod ad^k a^l |beta^(j)>: mode m carries sign (-1) in branch
  // i iff m == i, giving conj(s_i beta)^k (s_j beta)^l.
  Complex total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex term = 1.0;
      for (std::size_t m = 0; m < n; ++m) {
        const bool in_i = m == i, in_j = m == j;
        const bool odd = ((in_i ? key.creation(m) : 0) +
                          (in_j ? key.annihilation(m) : 0)) % 2 == 1;
        const Complex f = (in_i != in_j) ? flipped[m] : same[m];
        term *= odd ? -f : f;
      }
      total += term;
    }
  }
  return total;
}

std::optional<Complex> WState::try_moment(const MonomialIndex& key) const {
  check_key_modes(key, modes(), "WState");
  if (key.is_identity()) return Complex(1.0);
  return normalization_ * unnormalized(key);
}

std::string WState::name() const {
  std::ostringstream out;
  out << "wstate(";
  const auto& p = params_;
  const bool symmetric =
      std::all_of(p.alpha.begin(), p.alpha.end(),
                  [&](Complex a) { return a == p.alpha.front(); }) &&
      std::all_of(p.nbar.begin(), p.nbar.end(),
                  [&](double b) { return b == p.nbar.front(); });
  if (symmetric) {
    out << "n=" << modes() << ",alpha=" << format_complex(p.alpha[0])
        << ",nbar=" << format_double(p.nbar[0]);
  } else {
    for (std::size_t m = 0; m < modes(); ++m) {
      if (m) out << ";";
      out << format_complex(p.alpha[m]) << ","
          << format_double(p.nbar[m]);
    }
  }
  if (method_ == Method::kQuadrature) out << ",quadrature";
  out << ")";
  return out.str();
}

}  // namespace cvent
