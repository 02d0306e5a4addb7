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
#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cvent/certify.hpp"
#include "cvent/errors.hpp"
#include "cvent/fock.hpp"
#include "cvent/matrix.hpp"
#include "cvent/moments.hpp"
#include "cvent/multiindex.hpp"
#include "cvent/text.hpp"
#include "cvent/transpositions.hpp"
#include "json.hpp"

namespace cvent::cli {

namespace {

using nlohmann::json;

struct StateFlags {
  std::string state;
  std::string gamma;
  double r = 0.0;
  std::size_t modes = 0;
  std::string alpha = "0";
  std::string nbar = "0";
  std::string fock_file;
  std::string method = "analytic";
  std::size_t nodes = 48;
};

struct BudgetFlags {
  std::string moments;
  std::uint32_t order = 2;
  std::size_t max_minor_size = 6;
  std::string strategy = "both";
  std::optional<double> tol;
  std::optional<double> hermiticity_tol;
  std::vector<std::string> transpositions;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError("not a number: '" + s + "'");
  }
  return v;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_number(s));
  if (out.empty()) throw ParseError("empty number list");
  return out;
}

template <class T>
std::vector<T> broadcast(std::vector<T> values, std::size_t modes,
                         const std::string& what) {
  if (values.size() == 1 && modes > 1) return std::vector<T>(modes, values[0]);
  if (values.size() != modes) {
    throw InputError("--" + what + " has " + std::to_string(values.size()) +
                     " values for " + std::to_string(modes) + " modes");
  }
  return values;
}

// {"cutoffs": [c1, ...], "ket": [[re, im], ...]} or the same with "rho"
// holding the density matrix row by row.
ProviderPtr load_fock_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open Fock state file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
    std::vector<std::size_t> cutoffs = doc.at("cutoffs");
    std::size_t dim = 1;
    for (auto c : cutoffs) dim *= c;
    auto read = [&](const json& arr, std::size_t count) {
      if (!arr.is_array() || arr.size() != count) {
        throw ParseError("Fock state file: expected " + std::to_string(count) +
                         " amplitudes");
      }
      Eigen::VectorXcd v(static_cast<Eigen::Index>(count));
      for (std::size_t i = 0; i < count; ++i) {
        const auto& z = arr[i];
        if (z.is_number()) {
          v(static_cast<Eigen::Index>(i)) = z.get<double>();
        } else {
          v(static_cast<Eigen::Index>(i)) = {z.at(0).get<double>(),
                                             z.at(1).get<double>()};
        }
      }
      return v;
    };
    if (doc.contains("ket")) {
      return std::make_shared<FockOracle>(
          FockOracle::from_ket(cutoffs, read(doc["ket"], dim)));
    }
    if (doc.contains("rho")) {
      Eigen::VectorXcd flat = read(doc["rho"], dim * dim);
      Eigen::MatrixXcd rho = Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic,
                                                      Eigen::Dynamic,
                                                      Eigen::RowMajor>>(
          flat.data(), static_cast<Eigen::Index>(dim),
          static_cast<Eigen::Index>(dim));
      return std::make_shared<FockOracle>(
          FockOracle::from_density(cutoffs, std::move(rho)));
    }
    throw ParseError("Fock state file: needs 'ket' or 'rho'");
  } catch (const json::exception& e) {
    throw ParseError("Fock state file: " + std::string(e.what()));
  }
}

ProviderPtr make_provider(const StateFlags& s) {
  if (s.state == "coherent") {
    if (s.gamma.empty()) throw InputError("--state coherent needs --gamma");
    auto g = parse_complex_list(s.gamma);
    if (s.modes) g = broadcast(std::move(g), s.modes, "gamma");
    return std::make_shared<CoherentProduct>(std::move(g));
  }
  if (s.state == "vacuum") {
    return std::make_shared<CoherentProduct>(
        std::vector<Complex>(s.modes ? s.modes : 1, 0.0));
  }
  if (s.state == "tmsv") return std::make_shared<TwoModeSqueezedVacuum>(s.r);
  if (s.state == "wstate") {
    if (s.modes < 2) throw InputError("--state wstate needs --modes >= 2");
    WStateParams p;
    p.alpha = broadcast(parse_complex_list(s.alpha), s.modes, "alpha");
    p.nbar = broadcast(parse_number_list(s.nbar), s.modes, "nbar");
    WState::Method method;
    if (s.method == "analytic") {
      method = WState::Method::kAnalytic;
    } else if (s.method == "quadrature") {
      method = WState::Method::kQuadrature;
    } else {
      throw ParseError("unknown --method '" + s.method + "'");
    }
    return std::make_shared<WState>(std::move(p), method, s.nodes);
  }
  if (s.state == "fock-file") {
    if (s.fock_file.empty()) throw InputError("--state fock-file needs --fock-file");
    return load_fock_file(s.fock_file);
  }
  if (s.state.empty()) throw InputError("no state given (--state or --moments)");
  throw ParseError("unknown state '" + s.state +
                   "' (coherent, vacuum, tmsv, wstate, fock-file)");
}

void add_state_options(CLI::App* app, StateFlags& s) {
  app->add_option("--state", s.state, "coherent|vacuum|tmsv|wstate|fock-file");
  app->add_option("--gamma", s.gamma, "coherent amplitudes, e.g. 0.5+0.1i,1");
  app->add_option("--r", s.r, "two-mode squeezing parameter");
  app->add_option("--modes", s.modes, "number of modes");
  app->add_option("--alpha", s.alpha, "W-state displacement(s)");
  app->add_option("--nbar", s.nbar, "W-state thermal noise photon number(s)");
  app->add_option("--fock-file", s.fock_file, "JSON ket or density matrix");
  app->add_option("--method", s.method, "W-state moments: analytic|quadrature");
  app->add_option("--nodes", s.nodes, "quadrature nodes per axis");
}

void add_budget_options(CLI::App* app, BudgetFlags& b) {
  app->add_option("--moments", b.moments, "moment table JSON file");
  app->add_option("--order", b.order, "monomial order K (moments up to 2K)");
  app->add_option("--max-minor-size", b.max_minor_size, "largest witness minor");
  app->add_option("--strategy", b.strategy, "eigen-scan|named-minors|both");
  app->add_option("--tol", b.tol, "relative negativity tolerance");
  app->add_option("--hermiticity-tol", b.hermiticity_tol,
                  "allowed Hermiticity residual of moment matrices");
}

ProviderPtr resolve_input(const BudgetFlags& b, const StateFlags& s) {
  if (!b.moments.empty() && !s.state.empty()) {
    throw InputError("give either --moments or --state, not both");
  }
  if (!b.moments.empty()) {
    return std::make_shared<MomentTable>(load_moment_table_file(b.moments));
  }
  return make_provider(s);
}

SearchBudget make_budget(const BudgetFlags& b) {
  SearchBudget budget;
  if (b.order < 1) throw InputError("--order must be >= 1");
  if (b.max_minor_size < 1) throw InputError("--max-minor-size must be >= 1");
  budget.max_order = b.order;
  budget.max_minor_size = b.max_minor_size;
  budget.strategy = parse_strategy(b.strategy);
  if (b.tol) {
    if (!(*b.tol >= 0)) throw InputError("--tol must be nonnegative");
    budget.matrix.det_tol = *b.tol;
    budget.matrix.eigen_tol = *b.tol;
  }
  if (b.hermiticity_tol) budget.matrix.hermiticity_tol = *b.hermiticity_tol;
  return budget;
}

// Writes to --out when given, otherwise to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

// Merges a --config JSON object into the argument list. Flags present on the
// command line win over the file.
std::vector<std::string> apply_config(std::vector<std::string> args,
                                      CLI::App& app) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InputError("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("config file: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw ParseError("config file: expected an object");

  CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (auto* s = app.get_subcommand_no_throw(a)) {
      sub = s;
      break;
    }
  }
  if (cfg.contains("command")) {
    if (!cfg["command"].is_string()) throw ParseError("config: 'command' must be a string");
    const std::string cmd = cfg["command"];
    if (sub && sub->get_name() != cmd) {
      throw InputError("config command '" + cmd + "' conflicts with '" +
                       sub->get_name() + "'");
    }
    if (!sub) {
      sub = app.get_subcommand_no_throw(cmd);
      if (!sub) throw ParseError("config: unknown command '" + cmd + "'");
      args.insert(args.begin(), cmd);
    }
  }
  if (!sub) throw InputError("config file given but no command");

  auto on_command_line = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt || key == "help") throw ParseError("config: unknown key '" + key + "'");
    if (on_command_line(flag)) continue;
    if (opt->get_expected_max() == 0) {
      if (!value.is_boolean()) throw ParseError("config: '" + key + "' must be a boolean");
      if (value.get<bool>()) args.push_back(flag);
      continue;
    }
    auto scalar = [&](const json& v) -> std::string {
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number() || v.is_boolean()) return v.dump();
      throw ParseError("config: bad value for '" + key + "'");
    };
    if (value.is_array()) {
      if (opt->get_expected_max() > 1) {
        for (const auto& v : value) {
          args.push_back(flag);
          args.push_back(scalar(v));
        }
      } else {
        std::string joined;
        for (const auto& v : value) joined += (joined.empty() ? "" : ",") + scalar(v);
        args.push_back(flag);
        args.push_back(joined);
      }
    } else {
      args.push_back(flag);
      args.push_back(scalar(value));
    }
  }
  return args;
}

int cmd_moments_gen(const StateFlags& s, std::uint32_t order,
                    const std::string& out_path, std::ostream& out) {
  const auto provider = make_provider(s);
  // Moment matrices of order K need moments up to weight 2K.
  const auto table = MomentTable::tabulate(*provider, 2 * order);
  std::ostringstream text;
  write_moment_table(text, table);
  emit(out_path, text.str(), out);
  return kOk;
}

int cmd_scan(const BudgetFlags& b, const StateFlags& s,
             const std::string& out_path, std::ostream& out) {
  const auto provider = resolve_input(b, s);
  const auto budget = make_budget(b);
  std::vector<TranspositionSet> sets;
  for (const auto& t : b.transpositions) {
    sets.push_back(parse_transposition_set(t, provider->modes()));
  }
  if (sets.empty()) sets = canonical_bipartitions(provider->modes());

  nlohmann::ordered_json doc;
  doc["modes"] = provider->modes();
  doc["provider"] = provider->name();
  doc["budget"] = {{"max_order", budget.max_order},
                   {"max_minor_size", budget.max_minor_size},
                   {"strategy", to_string(budget.strategy)}};
  auto findings = nlohmann::ordered_json::array();
  auto inconclusive = nlohmann::ordered_json::array();
  for (const auto& set : sets) {
    const auto r = test_bipartition(*provider, set, budget);
    if (r.verdict == Verdict::kNpt) {
      findings.push_back(to_json(*r.witness));
    } else {
      inconclusive.push_back(set.members());
    }
  }
  const bool found = !findings.empty();
  doc["findings"] = std::move(findings);
  doc["inconclusive"] = std::move(inconclusive);
  emit(out_path, doc.dump(2) + "\n", out);
  return found ? kOk : kNoNegativity;
}

int cmd_certify(const BudgetFlags& b, const StateFlags& s,
                const std::string& out_path, std::ostream& out) {
  const auto provider = resolve_input(b, s);
  const auto report = certify_full(*provider, make_budget(b));
  emit(out_path, to_json(report).dump(2) + "\n", out);
  return report.certificate ? kOk : kNoCertificate;
}

struct Figure1Flags {
  double alpha_min = 0.0;
  double alpha_max = 1.5;
  std::size_t alpha_steps = 31;
  std::string nbar = "0,0.01,0.05";
  std::optional<double> tol;
};

int cmd_figure1(const Figure1Flags& f, const std::string& out_path,
                std::ostream& out) {
  if (f.alpha_steps == 0 || !(f.alpha_max >= f.alpha_min)) {
    throw InputError("empty alpha range");
  }
  if (f.alpha_steps == 1 && f.alpha_max != f.alpha_min) {
    throw InputError("--alpha-steps 1 needs --alpha-min == --alpha-max");
  }
  std::vector<double> alphas;
  for (std::size_t i = 0; i < f.alpha_steps; ++i) {
    alphas.push_back(f.alpha_steps == 1
                         ? f.alpha_min
                         : f.alpha_min + (f.alpha_max - f.alpha_min) *
                                             static_cast<double>(i) /
                                             static_cast<double>(f.alpha_steps - 1));
  }
  const auto nbars = parse_number_list(f.nbar);
  for (double nb : nbars) {
    if (!(nb >= 0)) throw InputError("--nbar values must be nonnegative");
  }
  MatrixOptions options;
  if (f.tol) options.det_tol = *f.tol;
  const auto rows = sweep(
      alphas, nbars,
      [](double alpha, double nbar) -> ProviderPtr {
        return std::make_shared<WState>(WStateParams::symmetric(4, alpha, nbar));
      },
      figure1_minors(), options);
  std::ostringstream text;
  write_sweep_csv(text, rows);
  emit(out_path, text.str(), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Continuous-variable entanglement tests from moments", "cvent"};
  app.require_subcommand(1);

  StateFlags state;
  BudgetFlags budget;
  Figure1Flags fig;
  std::string out_path;
  std::uint32_t gen_order = 2;
  app.add_option("--config", "JSON file mirroring the command's flags");

  auto* gen = app.add_subcommand("moments-gen", "write a moment table for a state");
  add_state_options(gen, state);
  gen->add_option("--order", gen_order, "monomial order K (writes moments up to 2K)");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* scan = app.add_subcommand("scan", "search each bipartition for a negative minor");
  add_state_options(scan, state);
  add_budget_options(scan, budget);
  scan->add_option("--transposition", budget.transpositions,
                   "restrict to these transposition sets, e.g. {1,3}");
  scan->add_option("--out", out_path, "output file (default stdout)");

  auto* cert = app.add_subcommand("certify", "certify full multipartite entanglement");
  add_state_options(cert, state);
  add_budget_options(cert, budget);
  cert->add_option("--out", out_path, "output file (default stdout)");

  auto* f1 = app.add_subcommand("figure1", "d1/d2 minors of the 4-mode W-like state");
  f1->add_option("--alpha-min", fig.alpha_min);
  f1->add_option("--alpha-max", fig.alpha_max);
  f1->add_option("--alpha-steps", fig.alpha_steps);
  f1->add_option("--nbar", fig.nbar, "comma-separated noise levels");
  f1->add_option("--tol", fig.tol);
  f1->add_option("--out", out_path, "CSV file (default stdout)");

  auto* index = app.add_subcommand("index", "moment-sequence index utilities");
  index->require_subcommand(1);
  std::size_t nth_dim = 0;
  std::uint64_t nth_pos = 0;
  bool nth_monomial = false;
  auto* nth = index->add_subcommand("nth", "p-th multi-index of dimension D");
  nth->add_option("D", nth_dim)->required();
  nth->add_option("P", nth_pos)->required();
  nth->add_flag("--monomial", nth_monomial, "print as a monomial (D even)");
  std::string of_text;
  std::size_t of_modes = 0;
  auto* of = index->add_subcommand("of", "position of a monomial");
  of->add_option("MONOMIAL", of_text)->required();
  of->add_option("--modes", of_modes)->required();

  try {
    auto args = apply_config(raw_args, app);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      app.exit(e, out, err);
      return kOk;
    } catch (const CLI::CallForAllHelp& e) {
      app.exit(e, out, err);
      return kOk;
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return kUsage;
    }

    if (*gen) return cmd_moments_gen(state, gen_order, out_path, out);
    if (*scan) return cmd_scan(budget, state, out_path, out);
    if (*cert) return cmd_certify(budget, state, out_path, out);
    if (*f1) return cmd_figure1(fig, out_path, out);
    if (*nth) {
      if (nth_pos < 1) throw InputError("positions start at 1");
      if (nth_monomial) {
        if (nth_dim == 0 || nth_dim % 2) throw InputError("--monomial needs an even D");
        out << monomial_at(nth_dim / 2, nth_pos).str() << '\n';
      } else {
        out << nth_multiindex(nth_dim, nth_pos).str() << '\n';
      }
      return kOk;
    }
    if (*of) {
      out << position_of(parse_monomial(of_text, of_modes)) << '\n';
      return kOk;
    }
    return kUsage;
  } catch (const MissingMomentError& e) {
    err << "error: " << e.keys().size() << " moment(s) missing:\n";
    for (const auto& k : e.keys()) err << "  <" << k << ">\n";
    return kMissingMoments;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << '\n';
    return kMissingMoments;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const InputError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const DataQualityError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace cvent::cli
