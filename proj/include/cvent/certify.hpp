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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cvent/matrix.hpp"
#include "cvent/moments.hpp"
#include "cvent/transpositions.hpp"
#include "json.hpp"

namespace cvent {

enum class Strategy { kEigenScan, kNamedMinors, kBoth };

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct SearchBudget {
  /// Monomials of weight <= max_order index the moment matrix, so moments
  /// up to order 2 * max_order are needed.
  std::uint32_t max_order = 2;
  std::size_t max_minor_size = 6;
  Strategy strategy = Strategy::kBoth;
  MatrixOptions matrix;
};

enum class Verdict { kNpt, kInconclusive };

std::string to_string(Verdict v);

struct BipartitionResult {
  TranspositionSet transposition;
  Verdict verdict = Verdict::kInconclusive;
  /// A negative principal minor for NPT verdicts.
  std::optional<MinorResult> witness;
  /// From the eigenvalue scan at the largest order examined, if it ran.
  std::optional<double> min_eigenvalue;
};

/// Searches for a negative principal minor of the moment matrix of
/// PT_I(rho). Orders 1..max_order are tried in turn and the first witness
/// wins, so a larger budget never loses a verdict found by a smaller one.
/// An inconclusive verdict says nothing about separability.
BipartitionResult test_bipartition(const MomentProvider& provider,
                                   const TranspositionSet& transposition,
                                   const SearchBudget& budget = {});

struct CertificationReport {
  std::size_t modes = 0;
  std::string provider;
  SearchBudget budget;
  /// One entry per canonical bipartition, in canonical order.
  std::vector<BipartitionResult> bipartitions;
  /// Every bipartition is NPT: the state is fully entangled.
  bool certificate = false;
  /// Decompositions (with >= 2 parts) the state provably does not separate
  /// along. Empty, with `decompositions_enumerated` false, above 6 modes.
  std::vector<Decomposition> excluded;
  bool decompositions_enumerated = false;
};

/// Tests every canonical bipartition (concurrently when `parallel`) and
/// assembles the report in canonical order.
CertificationReport certify_full(const MomentProvider& provider,
                                 const SearchBudget& budget = {},
                                 bool parallel = true);

nlohmann::ordered_json to_json(const CertificationReport& report);

/// One minor tracked by a sweep: a named 2x2 minor under PT_I, reported
/// under a group name such as "d1".
struct SweepMinor {
  std::string group;
  TranspositionSet transposition;
  MinorLabel label;
};

struct SweepRow {
  double param = 0.0;
  double nbar = 0.0;
  std::string group;
  MinorLabel label;
  TranspositionSet transposition;
  double value = 0.0;
};

/// Provider for one grid point (param, nbar).
using ProviderFamily =
    std::function<ProviderPtr(double param, double nbar)>;

/// Evaluates each minor at every grid point. Rows are ordered by nbar (as
/// given), then param (as given), then minor (as given). Grid points are
/// evaluated concurrently when `parallel`.
std::vector<SweepRow> sweep(const std::vector<double>& params,
                            const std::vector<double>& nbars,
                            const ProviderFamily& family,
                            const std::vector<SweepMinor>& minors,
                            const MatrixOptions& options = {},
                            bool parallel = true);

/// The two groups of coinciding minors on the symmetric four-mode W-like
/// state: d1 = d^{1} = d^{2} = d^{3} = d^{1,2,3} on (1,2;3,4), and
/// d2 = d^{1,2} on (1,2;3,4) = d^{1,3} on (1,3;2,4) = d^{2,3} on (2,3;1,4).
std::vector<SweepMinor> figure1_minors();

/// CSV with header `param,nbar,minor,I,value`; the minor column holds
/// `group(i,j;k,l)`. Fields containing commas are quoted.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace cvent
