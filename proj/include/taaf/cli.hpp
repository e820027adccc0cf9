// Copyright 2026 The TAAF Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Batch command-line front end. dispatch() is the whole program minus
// main(), so tests can drive it with string arguments and captured streams.
//
// Exit codes: 0 success, 1 verification/check failure, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "taaf/bench.hpp"
#include "taaf/catalog.hpp"
#include "taaf/error.hpp"
#include "taaf/format.hpp"
#include "taaf/gradcheck.hpp"
#include "taaf/io.hpp"
#include "taaf/registry.hpp"
#include "taaf/taaf.hpp"
#include "taaf/trainer.hpp"

namespace taaf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::uint64_t kDefaultSeed = 2024;

class UsageError : public Error {
 public:
  using Error::Error;
};

// --- argument helpers --------------------------------------------------------

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// "a=1,b=-2.5"
inline FixedParamBinding parse_params(const std::string& text) {
  FixedParamBinding b;
  if (text.empty()) return b;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--params expects name=value pairs, got '" + item + "'");
    }
    b[item.substr(0, eq)] = parse_double(item.substr(eq + 1));
  }
  return b;
}

inline std::vector<double> parse_list(const std::string& text, std::size_t expected,
                                      const char* flag) {
  std::vector<double> v;
  for (const auto& item : split(text, ',')) v.push_back(parse_double(item));
  if (expected != 0 && v.size() != expected) {
    throw UsageError(std::string(flag) + " expects " + std::to_string(expected) +
                     " comma-separated numbers");
  }
  return v;
}

inline TaafParams parse_taaf_params(const std::string& text, const char* flag) {
  const auto v = parse_list(text, 4, flag);
  return {v[0], v[1], v[2], v[3]};
}

// "lo:hi:n"
inline std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--grid expects lo:hi:n");
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const double n = parse_double(parts[2]);
  if (!(n >= 1) || std::trunc(n) != n || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw UsageError("--grid expects finite bounds and an integer count >= 1");
  }
  return linspace(lo, hi, static_cast<std::size_t>(n));
}

inline Registry active_registry() {
  if (const char* path = std::getenv("TAAF_REGISTRY"); path != nullptr && *path != '\0') {
    return io::load_registry_file(path);
  }
  return Registry::builtin();
}

// A named scalar function: a catalog entry (optionally wrapped in a TAAF)
// or a registry record instantiated with a binding.
struct ScalarSubject {
  TaafNode node;
};

inline ScalarSubject resolve_subject(const std::string& id, const FixedParamBinding& params,
                                     const std::optional<TaafParams>& taaf) {
  if (has_entry(id)) {
    return {TaafNode{taaf.value_or(TaafParams::identity()), id, params}};
  }
  const Registry reg = active_registry();
  const EquivalenceRecord& r = reg.find(id);
  if (taaf) throw UsageError("--taaf applies to catalog entries only");
  return {instantiate(r, params)};
}

// --- subcommands ------------------------------------------------------------

struct Options {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  std::string grid;
  std::string params;
  std::string taaf;

  // list
  bool disputed = false;
  bool catalog = false;
  // describe / eval / table
  std::string id;
  bool all = false;
  double z = 0.0;
  double from = -1.0;
  double to = 1.0;
  std::size_t steps = 0;
  // verify / gradcheck
  std::string name;
  std::string subject;
  // fit
  std::string inner;
  std::string planted;
  std::string init = "1,1,0,0";
  std::string weights = "1";
  std::string mask = "alpha,beta,gamma,delta";
  std::size_t n = 1024;
  double lr = 0.05;
  std::size_t epochs = 20000;
  double noise = 0.0;
  std::string loss_csv;
  // bench
  std::string subjects;
  std::size_t n_evals = 1000000;
  std::size_t repeats = 5;
};

inline std::optional<TaafParams> taaf_option(const Options& o) {
  if (o.taaf.empty()) return std::nullopt;
  return parse_taaf_params(o.taaf, "--taaf");
}

inline int cmd_list(const Options& o, std::ostream& out) {
  if (o.catalog) {
    if (o.json) {
      out << io::catalog_to_json().dump(2) << '\n';
    } else {
      for (const auto& e : catalog_entries()) out << e.descriptor.id << '\n';
    }
    return kExitOk;
  }
  const Registry reg = active_registry();
  if (o.json) {
    const Registry filtered = o.disputed ? Registry(reg.list(true)) : reg;
    out << io::registry_to_json(filtered).dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& r : reg.list(o.disputed ? std::optional<bool>(true) : std::nullopt)) {
    out << r.name << '\n';
  }
  return kExitOk;
}

inline int cmd_describe(const Options& o, std::ostream& out) {
  if (o.all) {
    out << io::catalog_to_json().dump(2) << '\n';
    return kExitOk;
  }
  if (o.id.empty()) throw UsageError("describe needs an id or --all");
  if (has_entry(o.id)) {
    out << io::to_json(describe(o.id)).dump(2) << '\n';
    return kExitOk;
  }
  out << io::to_json(active_registry().find(o.id)).dump(2) << '\n';
  return kExitOk;
}

inline int cmd_eval(const Options& o, std::ostream& out) {
  const auto s = resolve_subject(o.id, parse_params(o.params), taaf_option(o));
  out << format_double(taaf_eval(s.node, o.z)) << '\n';
  return kExitOk;
}

inline int cmd_table(const Options& o, std::ostream& out) {
  const auto s = resolve_subject(o.id, parse_params(o.params), taaf_option(o));
  std::vector<double> zs;
  if (!o.grid.empty()) {
    zs = parse_grid(o.grid);
  } else {
    if (o.steps < 1) throw UsageError("table needs --steps >= 1 (or --grid)");
    if (!std::isfinite(o.from) || !std::isfinite(o.to)) throw UsageError("bounds must be finite");
    zs = linspace(o.from, o.to, o.steps);
  }
  const BoundTaaf g(s.node);
  out << "z,value,derivative\n";
  for (double z : zs) {
    out << format_double(z) << ',' << format_double(g.value(z)) << ','
        << format_double(g.gradient(z).d_z) << '\n';
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const Registry reg = active_registry();
  if (o.all == !o.name.empty()) throw UsageError("verify needs exactly one of --all or --name");
  const std::vector<double> grid = o.grid.empty() ? standard_grid() : parse_grid(o.grid);

  std::vector<EquivalenceRecord> records =
      o.all ? reg.records() : std::vector<EquivalenceRecord>{reg.find(o.name)};
  if (!o.params.empty() && o.all) throw UsageError("--params needs --name");

  // Buffered so a bad binding leaves stdout empty.
  std::ostringstream csv;
  std::ostringstream notes;
  bool ok = true;
  csv << "name,binding,max_abs_diff,worst_z,pass\n";
  for (const auto& r : records) {
    std::vector<FixedParamBinding> bindings =
        o.params.empty() ? seeded_bindings(r, o.seed) : std::vector{parse_params(o.params)};
    for (const auto& b : bindings) {
      const VerifyResult v = verify(r, b, grid);
      const bool pass = v.max_abs_diff <= equivalence_tolerance(r);
      if (!pass && !r.disputed) ok = false;
      csv << r.name << ',' << io::binding_to_text(b) << ',' << format_double(v.max_abs_diff) << ','
          << format_double(v.worst_z) << ',' << (pass ? "true" : "false") << '\n';
    }
    if (r.disputed) notes << "note: " << r.name << " is disputed and does not affect the exit code\n";
  }
  out << csv.str();
  err << notes.str();
  return ok ? kExitOk : kExitCheckFailed;
}

inline int cmd_gradcheck(const Options& o, std::ostream& out) {
  if (o.all == !o.subject.empty()) {
    throw UsageError("gradcheck needs exactly one of --all or --subject");
  }
  const std::vector<double> grid = o.grid.empty() ? standard_grid() : parse_grid(o.grid);
  std::vector<GradReport> reports;
  if (o.all) {
    for (const auto& e : catalog_entries()) {
      reports.push_back(check(CatalogSubject{e.descriptor.id, {}}, grid));
    }
    const Registry reg = active_registry();
    for (const auto& r : reg.list(false)) {
      for (const auto& b : seeded_bindings(r, o.seed)) {
        GradReport rep = check(instantiate(r, b), grid);
        rep.subject = r.name + "{" + io::binding_to_text(b) + "}";
        reports.push_back(std::move(rep));
      }
    }
  } else {
    const auto taaf = taaf_option(o);
    const FixedParamBinding params = parse_params(o.params);
    if (has_entry(o.subject) && !taaf) {
      reports.push_back(check(CatalogSubject{o.subject, params}, grid));
    } else {
      GradReport rep = check(resolve_subject(o.subject, params, taaf).node, grid);
      rep.subject = o.subject;
      reports.push_back(std::move(rep));
    }
  }

  bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  if (o.json) {
    io::Json arr = io::Json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    io::Json doc;
    doc["passed"] = ok;
    doc["reports"] = arr;
    out << doc.dump(2) << '\n';
  } else {
    out << "subject,points_checked,points_skipped,failures,passed\n";
    for (const auto& r : reports) {
      out << r.subject << ',' << r.points_checked << ',' << r.points_skipped << ','
          << r.failures.size() << ',' << (r.passed ? "true" : "false") << '\n';
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

inline TrainMask parse_mask(const std::string& text) {
  TrainMask m{false, false, false, false, false};
  for (const auto& item : split(text, ',')) {
    if (item == "alpha") m.alpha = true;
    else if (item == "beta") m.beta = true;
    else if (item == "gamma") m.gamma = true;
    else if (item == "delta") m.delta = true;
    else if (item == "weights") m.weights = true;
    else if (!item.empty()) throw UsageError("unknown --train entry '" + item + "'");
  }
  return m;
}

inline int cmd_fit(const Options& o, std::ostream& out) {
  if (o.inner.empty() || o.planted.empty()) throw UsageError("fit needs --inner and --planted");
  const TaafNode target{parse_taaf_params(o.planted, "--planted"), o.inner, {}};
  const std::vector<double> w = parse_list(o.weights, 0, "--weights");
  const Dataset data = generate_synthetic(target, w, o.n, o.seed, o.noise);

  TrainConfig cfg;
  cfg.learning_rate = o.lr;
  cfg.epochs = o.epochs;
  cfg.init = parse_taaf_params(o.init, "--init");
  cfg.init_weights = w;
  cfg.mask = parse_mask(o.mask);
  cfg.seed = o.seed;
  const FitReport rep = fit(data, o.inner, cfg);

  out << io::to_json(rep).dump(2) << '\n';
  if (!o.loss_csv.empty()) {
    std::ofstream csv(o.loss_csv);
    if (!csv) throw UsageError("cannot write '" + o.loss_csv + "'");
    io::write_loss_csv(csv, rep);
  }
  return kExitOk;
}

inline int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<BenchSubject> subjects;
  for (const auto& s : split(o.subjects, ',')) {
    if (s.empty()) continue;
    subjects.push_back(CatalogSubject{s, {}});
  }
  if (subjects.empty()) throw UsageError("bench needs --subjects");
  const std::vector<BenchRecord> recs =
      subjects.size() == 1 ? std::vector{bench(subjects[0], o.n_evals, o.repeats, o.seed)}
                           : compare(subjects, o.n_evals, o.repeats, o.seed);
  for (const auto& r : recs) err << "checksum " << r.subject << ' ' << format_double(r.checksum) << '\n';
  if (o.json) {
    io::Json arr = io::Json::array();
    for (const auto& r : recs) arr.push_back(io::to_json(r));
    out << arr.dump(2) << '\n';
  } else {
    io::write_bench_csv(out, recs);
  }
  return kExitOk;
}

// --- entry point ------------------------------------------------------------

inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Transformative adaptive activation functions: evaluate, verify, train, bench",
               "taaf"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List registry records (or catalog entries)");
  list->add_flag("--disputed", o.disputed, "Only records with a disputed parameterization");
  list->add_flag("--catalog", o.catalog, "List catalog entries instead of records");
  list->add_flag("--json", o.json, "Emit the registry (or catalog) file format");

  auto* desc = app.add_subcommand("describe", "JSON descriptor of a catalog entry or record");
  desc->add_option("id", o.id, "Catalog id or record name");
  desc->add_flag("--all", o.all, "Export the whole catalog");

  auto* ev = app.add_subcommand("eval", "Evaluate a function at one point");
  ev->add_option("id", o.id, "Catalog id or record name")->required();
  ev->add_option("--z", o.z, "Input value")->required();
  ev->add_option("--params", o.params, "Fixed parameters, name=value,...");
  ev->add_option("--taaf", o.taaf, "Wrap a catalog entry in a TAAF: alpha,beta,gamma,delta");

  auto* table = app.add_subcommand("table", "Tabulate value and derivative as CSV");
  table->add_option("id", o.id, "Catalog id or record name")->required();
  table->add_option("--from", o.from, "First z");
  table->add_option("--to", o.to, "Last z");
  table->add_option("--steps", o.steps, "Number of points");
  table->add_option("--grid", o.grid, "lo:hi:n, overrides --from/--to/--steps");
  table->add_option("--params", o.params, "Fixed parameters, name=value,...");
  table->add_option("--taaf", o.taaf, "alpha,beta,gamma,delta");

  auto* verify_cmd = app.add_subcommand("verify", "Check special-case equivalences numerically");
  verify_cmd->add_flag("--all", o.all, "Every record");
  verify_cmd->add_option("--name", o.name, "One record");
  verify_cmd->add_option("--seed", o.seed, "Seed for random bindings");
  verify_cmd->add_option("--grid", o.grid, "lo:hi:n (default -5:5:201)");
  verify_cmd->add_option("--params", o.params, "Explicit binding instead of seeded ones");

  auto* grad = app.add_subcommand("gradcheck", "Compare analytic derivatives with finite differences");
  grad->add_flag("--all", o.all, "Catalog entries and registry nodes");
  grad->add_option("--subject", o.subject, "Catalog id or record name");
  grad->add_option("--params", o.params, "Fixed parameters, name=value,...");
  grad->add_option("--taaf", o.taaf, "alpha,beta,gamma,delta");
  grad->add_option("--seed", o.seed, "Seed for registry bindings");
  grad->add_option("--grid", o.grid, "lo:hi:n (default -5:5:201)");
  grad->add_flag("--json", o.json, "Full JSON report");

  auto* fit_cmd = app.add_subcommand("fit", "Recover planted TAAF parameters by gradient descent");
  fit_cmd->add_option("--inner", o.inner, "Inner catalog id")->required();
  fit_cmd->add_option("--planted", o.planted, "alpha,beta,gamma,delta of the generator")->required();
  fit_cmd->add_option("--n", o.n, "Number of samples");
  fit_cmd->add_option("--lr", o.lr, "Learning rate");
  fit_cmd->add_option("--epochs", o.epochs, "Epochs");
  fit_cmd->add_option("--seed", o.seed, "Dataset seed");
  fit_cmd->add_option("--noise", o.noise, "Gaussian target noise sigma");
  fit_cmd->add_option("--init", o.init, "Initial alpha,beta,gamma,delta");
  fit_cmd->add_option("--weights", o.weights, "Planted (and initial) weights, comma-separated");
  fit_cmd->add_option("--train", o.mask, "Trained subset of alpha,beta,gamma,delta,weights");
  fit_cmd->add_option("--loss-csv", o.loss_csv, "Write the loss curve (epoch,mse) here");

  auto* bench_cmd = app.add_subcommand("bench", "Evaluation throughput");
  bench_cmd->add_option("--subjects", o.subjects, "Comma-separated catalog ids")->required();
  bench_cmd->add_option("--n", o.n_evals, "Evaluations per repeat (>= 100000)");
  bench_cmd->add_option("--repeats", o.repeats, "Timed repeats (>= 3)");
  bench_cmd->add_option("--seed", o.seed, "Input buffer seed");
  bench_cmd->add_flag("--json", o.json, "JSON instead of CSV");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "taaf: " << e.what() << " (run 'taaf --help')\n";
    return kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_list(o, out);
    if (desc->parsed()) return cmd_describe(o, out);
    if (ev->parsed()) return cmd_eval(o, out);
    if (table->parsed()) return cmd_table(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out, err);
    if (grad->parsed()) return cmd_gradcheck(o, out);
    if (fit_cmd->parsed()) return cmd_fit(o, out);
    if (bench_cmd->parsed()) return cmd_bench(o, out, err);
  } catch (const DivergenceError& e) {
    err << "taaf: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const NumericalError& e) {
    err << "taaf: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "taaf: " << e.what() << " (run 'taaf --help')\n";
    return kExitUsage;
  }
  err << "taaf: no subcommand (run 'taaf --help')\n";
  return kExitUsage;
}

}  // namespace taaf::cli
