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

#include "cvent/certify.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <ostream>

#include "cvent/errors.hpp"
#include "cvent/text.hpp"

namespace cvent {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kEigenScan:
      return "eigen-scan";
    case Strategy::kNamedMinors:
      return "named-minors";
    case Strategy::kBoth:
      return "both";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "eigen-scan") return Strategy::kEigenScan;
  if (text == "named-minors") return Strategy::kNamedMinors;
  if (text == "both") return Strategy::kBoth;
  throw ParseError("unknown strategy '" + std::string(text) +
                   "' (expected eigen-scan, named-minors or both)");
}

std::string to_string(Verdict v) {
  return v == Verdict::kNpt ? "NPT" : "inconclusive";
}

namespace {

// Pairs of disjoint mode pairs {i,j}, {k,l} with (i,j) < (k,l).
std::vector<MinorLabel> all_pair_labels(std::size_t modes) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i <= modes; ++i) {
    for (std::size_t j = i + 1; j <= modes; ++j) pairs.emplace_back(i, j);
  }
  std::vector<MinorLabel> out;
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const auto [i, j] = pairs[a];
      const auto [k, l] = pairs[b];
      if (i == k || i == l || j == k || j == l) continue;
      out.push_back({i, j, k, l});
    }
  }
  return out;
}

void check_budget(const SearchBudget& budget) {
  if (budget.max_order < 1) throw InputError("budget: max_order must be >= 1");
  if (budget.max_minor_size < 1) {
    throw InputError("budget: max_minor_size must be >= 1");
  }
}

}  // namespace

BipartitionResult test_bipartition(const MomentProvider& provider,
                                   const TranspositionSet& transposition,
                                   const SearchBudget& budget) {
  check_budget(budget);
  BipartitionResult result;
  result.transposition = transposition;
  const bool eigen = budget.strategy != Strategy::kNamedMinors;
  const bool named = budget.strategy != Strategy::kEigenScan;

  for (std::uint32_t order = 1; order <= budget.max_order; ++order) {
    if (eigen) {
      auto scan = eigen_negativity_scan(provider, transposition, order,
                                        budget.max_minor_size, budget.matrix);
      result.min_eigenvalue = scan.min_eigenvalue;
      if (scan.witness) {
        result.verdict = Verdict::kNpt;
        result.witness = std::move(scan.witness);
        return result;
      }
    }
    if (named && order == 2 && budget.max_minor_size >= 2) {
      for (const auto& label : all_pair_labels(provider.modes())) {
        auto minor = named_minor(provider, transposition, label, budget.matrix);
        if (minor.negative) {
          result.verdict = Verdict::kNpt;
          result.witness = std::move(minor);
          return result;
        }
      }
    }
  }
  return result;
}

CertificationReport certify_full(const MomentProvider& provider,
                                 const SearchBudget& budget, bool parallel) {
  check_budget(budget);
  const std::size_t n = provider.modes();
  CertificationReport report;
  report.modes = n;
  report.provider = provider.name();
  report.budget = budget;

  const auto sets = canonical_bipartitions(n);
  if (parallel) {
    std::vector<std::future<BipartitionResult>> jobs;
    for (const auto& set : sets) {
      jobs.push_back(std::async(std::launch::async, [&provider, set, &budget] {
        return test_bipartition(provider, set, budget);
      }));
    }
    for (auto& job : jobs) report.bipartitions.push_back(job.get());
  } else {
    for (const auto& set : sets) {
      report.bipartitions.push_back(test_bipartition(provider, set, budget));
    }
  }

  std::map<std::uint64_t, Verdict> verdicts;
  for (const auto& b : report.bipartitions) {
    verdicts[b.transposition.mask()] = b.verdict;
  }
  report.certificate = std::all_of(
      report.bipartitions.begin(), report.bipartitions.end(),
      [](const BipartitionResult& b) { return b.verdict == Verdict::kNpt; });

  // A pi-separable state is separable across every bipartition that merges
  // whole parts of pi, so one NPT coarsening rules pi out.
  if (n <= 6) {
    report.decompositions_enumerated = true;
    for (const auto& pi : all_decompositions(n)) {
      if (pi.size() < 2) continue;
      const auto cuts = bipartitions_coarsening(pi);
      const bool excluded = std::any_of(cuts.begin(), cuts.end(), [&](auto& c) {
        return verdicts.at(c.mask()) == Verdict::kNpt;
      });
      if (excluded) report.excluded.push_back(pi);
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const CertificationReport& report) {
  nlohmann::ordered_json j;
  j["modes"] = report.modes;
  j["provider"] = report.provider;
  j["budget"] = {{"max_order", report.budget.max_order},
                 {"max_minor_size", report.budget.max_minor_size},
                 {"strategy", to_string(report.budget.strategy)}};
  auto parts = nlohmann::ordered_json::array();
  for (const auto& b : report.bipartitions) {
    nlohmann::ordered_json e;
    e["I"] = b.transposition.members();
    e["verdict"] = to_string(b.verdict);
    e["min_eigenvalue"] = b.min_eigenvalue
                              ? nlohmann::ordered_json(
                                    round12(*b.min_eigenvalue))
                              : nlohmann::ordered_json(nullptr);
    e["witness"] = b.witness ? to_json(*b.witness) : nlohmann::ordered_json(nullptr);
    parts.push_back(std::move(e));
  }
  j["bipartitions"] = std::move(parts);
  j["certificate"] = report.certificate;
  auto excluded = nlohmann::ordered_json::array();
  for (const auto& pi : report.excluded) excluded.push_back(pi.str());
  j["excluded_decompositions"] = std::move(excluded);
  j["decompositions_enumerated"] = report.decompositions_enumerated;
  if (!report.certificate) {
    j["note"] =
        "inconclusive bipartitions showed no negative minor within the "
        "budget; this is not evidence of separability";
  }
  return j;
}

std::vector<SweepRow> sweep(const std::vector<double>& params,
                            const std::vector<double>& nbars,
                            const ProviderFamily& family,
                            const std::vector<SweepMinor>& minors,
                            const MatrixOptions& options, bool parallel) {
  if (params.empty() || nbars.empty()) throw InputError("sweep: empty grid");
  if (minors.empty()) throw InputError("sweep: no minors requested");

  auto point = [&](double nbar, double param) {
    const auto provider = family(param, nbar);
    std::vector<SweepRow> rows;
    for (const auto& m : minors) {
      const auto r = named_minor(*provider, m.transposition, m.label, options);
      rows.push_back({param, nbar, m.group, m.label, m.transposition,
                      r.determinant});
    }
    return rows;
  };

  std::vector<SweepRow> out;
  if (parallel) {
    std::vector<std::future<std::vector<SweepRow>>> jobs;
    for (double nbar : nbars) {
      for (double param : params) {
        jobs.push_back(std::async(std::launch::async, point, nbar, param));
      }
    }
    for (auto& job : jobs) {
      auto rows = job.get();
      out.insert(out.end(), rows.begin(), rows.end());
    }
  } else {
    for (double nbar : nbars) {
      for (double param : params) {
        auto rows = point(nbar, param);
        out.insert(out.end(), rows.begin(), rows.end());
      }
    }
  }
  return out;
}

std::vector<SweepMinor> figure1_minors() {
  const std::size_t n = 4;
  const MinorLabel l12_34{1, 2, 3, 4}, l13_24{1, 3, 2, 4}, l23_14{2, 3, 1, 4};
  return {
      {"d1", TranspositionSet(n, {1}), l12_34},
      {"d1", TranspositionSet(n, {2}), l12_34},
      {"d1", TranspositionSet(n, {3}), l12_34},
      {"d1", TranspositionSet(n, {1, 2, 3}), l12_34},
      {"d2", TranspositionSet(n, {1, 2}), l12_34},
      {"d2", TranspositionSet(n, {1, 3}), l13_24},
      {"d2", TranspositionSet(n, {2, 3}), l23_14},
  };
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "param,nbar,minor,I,value\n";
  for (const auto& r : rows) {
    out << format_double(r.param) << ','
        << format_double(r.nbar) << ','
        << csv_field(r.group + r.label.str()) << ','
        << csv_field(r.transposition.str()) << ','
        << format_double(r.value) << '\n';
  }
}

}  // namespace cvent
