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

// JSON and CSV encodings for every exported type. Objects use insertion
// (declaration) order so output is byte-stable; doubles are written as the
// shortest round-trip decimal.

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "taaf/bench.hpp"
#include "taaf/catalog.hpp"
#include "taaf/error.hpp"
#include "taaf/format.hpp"
#include "taaf/gradcheck.hpp"
#include "taaf/param_expr.hpp"
#include "taaf/registry.hpp"
#include "taaf/taaf.hpp"
#include "taaf/trainer.hpp"

namespace taaf::io {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
T get(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad value for '") + key + "': " + e.what());
  }
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing key '") + key + "'");
  }
  return j.at(key);
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace detail

// --- catalog ---------------------------------------------------------------

inline Json to_json(const Interval& iv) {
  Json j;
  j["lo"] = detail::number_or_null(iv.lo);
  j["hi"] = detail::number_or_null(iv.hi);
  j["lo_open"] = iv.lo_open;
  j["hi_open"] = iv.hi_open;
  return j;
}

inline Interval interval_from_json(const Json& j) {
  Interval iv;
  iv.lo = j.contains("lo") && !j.at("lo").is_null() ? detail::get<double>(j, "lo") : -kInf;
  iv.hi = j.contains("hi") && !j.at("hi").is_null() ? detail::get<double>(j, "hi") : kInf;
  iv.lo_open = j.value("lo_open", false);
  iv.hi_open = j.value("hi_open", false);
  return iv;
}

inline Json to_json(const ActivationDescriptor& d) {
  Json j;
  j["id"] = d.id;
  Json params = Json::array();
  for (const auto& p : d.fixed_params) {
    Json pj;
    pj["name"] = p.name;
    pj["default"] = p.default_value;
    pj["domain"] = to_json(p.domain);
    pj["integral"] = p.integral;
    params.push_back(pj);
  }
  j["fixed_params"] = params;
  j["kinks"] = d.kink_rule;
  j["anchor"] = d.anchor;
  j["notes"] = d.notes;
  return j;
}

inline Json catalog_to_json() {
  Json arr = Json::array();
  for (const auto& e : catalog_entries()) arr.push_back(to_json(e.descriptor));
  return arr;
}

inline Json to_json(const FixedParamBinding& b) {
  Json j = Json::object();
  for (const auto& [k, v] : b) j[k] = v;
  return j;
}

inline FixedParamBinding binding_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("binding must be a JSON object");
  FixedParamBinding b;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ParseError("binding value for '" + k + "' must be a number");
    b.emplace(k, v.get<double>());
  }
  return b;
}

// --- nodes -----------------------------------------------------------------

inline Json to_json(const TaafParams& p) {
  Json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["gamma"] = p.gamma;
  j["delta"] = p.delta;
  return j;
}

inline TaafParams params_from_json(const Json& j) {
  return {detail::get<double>(j, "alpha"), detail::get<double>(j, "beta"),
          detail::get<double>(j, "gamma"), detail::get<double>(j, "delta")};
}

inline Json to_json(const TaafNode& n) {
  Json j;
  j["kind"] = "taaf";
  j["params"] = to_json(n.params);
  j["inner"] = n.inner_id;
  j["fixed"] = to_json(n.inner_fixed);
  return j;
}

inline Json to_json(const CompositeNode& n) {
  Json j;
  j["kind"] = to_string(n.kind);
  Json br = Json::array();
  for (const auto& b : n.branches) br.push_back(to_json(b));
  j["branches"] = br;
  if (n.kind == CompositeKind::weighted_average) j["weights"] = n.weights;
  return j;
}

inline TaafNode taaf_node_from_json(const Json& j) {
  if (detail::get<std::string>(j, "kind") != "taaf") throw ParseError("expected kind 'taaf'");
  TaafNode n;
  n.params = params_from_json(detail::field(j, "params"));
  n.inner_id = detail::get<std::string>(j, "inner");
  if (j.contains("fixed")) n.inner_fixed = binding_from_json(detail::field(j, "fixed"));
  return n;
}

using AnyNode = std::variant<TaafNode, CompositeNode>;

inline AnyNode node_from_json(const Json& j) {
  const auto kind = detail::get<std::string>(j, "kind");
  if (kind == "taaf") return taaf_node_from_json(j);
  CompositeNode n;
  n.kind = composite_kind_from_string(kind);
  const Json& br = detail::field(j, "branches");
  if (!br.is_array()) throw ParseError("branches must be an array");
  for (const auto& b : br) n.branches.push_back(taaf_node_from_json(b));
  if (j.contains("weights")) n.weights = detail::get<std::vector<double>>(j, "weights");
  return n;
}

inline AnyNode node_from_string(const std::string& text) {
  return node_from_json(detail::parse_text(text));
}

// --- registry --------------------------------------------------------------

inline Json to_json(const EquivalenceRecord& r) {
  Json j;
  j["name"] = r.name;
  j["direct_id"] = r.direct_id;
  j["inner"] = r.inner_id;
  j["alpha"] = r.alpha.to_string();
  j["beta"] = r.beta.to_string();
  j["gamma"] = r.gamma.to_string();
  j["delta"] = r.delta.to_string();
  Json fixed = Json::object();
  for (const auto& [k, e] : r.inner_fixed) fixed[k] = e.to_string();
  j["inner_fixed"] = fixed;
  Json doms = Json::object();
  for (const auto& [k, iv] : r.param_domains) doms[k] = to_json(iv);
  j["param_domains"] = doms;
  j["disputed"] = r.disputed;
  j["anchor"] = r.anchor;
  j["notes"] = r.notes;
  return j;
}

inline EquivalenceRecord record_from_json(const Json& j) {
  EquivalenceRecord r;
  r.name = detail::get<std::string>(j, "name");
  r.direct_id = j.value("direct_id", r.name);
  r.inner_id = detail::get<std::string>(j, "inner");
  r.alpha = ParamExpr::parse(detail::get<std::string>(j, "alpha"));
  r.beta = ParamExpr::parse(detail::get<std::string>(j, "beta"));
  r.gamma = ParamExpr::parse(detail::get<std::string>(j, "gamma"));
  r.delta = ParamExpr::parse(detail::get<std::string>(j, "delta"));
  if (j.contains("inner_fixed")) {
    for (const auto& [k, v] : j.at("inner_fixed").items()) {
      r.inner_fixed.emplace(k, ParamExpr::parse(v.get<std::string>()));
    }
  }
  if (j.contains("param_domains")) {
    for (const auto& [k, v] : j.at("param_domains").items()) {
      r.param_domains.emplace(k, interval_from_json(v));
    }
  }
  r.disputed = j.value("disputed", false);
  r.anchor = j.value("anchor", "");
  r.notes = j.value("notes", "");
  find_entry(r.inner_id);
  return r;
}

inline Json registry_to_json(const Registry& reg) {
  Json arr = Json::array();
  for (const auto& r : reg.records()) arr.push_back(to_json(r));
  return arr;
}

inline Registry registry_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("registry file must be a JSON array");
  std::vector<EquivalenceRecord> records;
  for (const auto& rj : j) records.push_back(record_from_json(rj));
  return Registry(std::move(records));
}

inline Registry load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open registry file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return registry_from_json(detail::parse_text(ss.str()));
}

// --- reports ---------------------------------------------------------------

inline Json to_json(const VerifyResult& v) {
  Json j;
  j["max_abs_diff"] = detail::number_or_null(v.max_abs_diff);
  j["worst_z"] = v.worst_z;
  j["points_checked"] = v.points_checked;
  j["points_skipped"] = v.points_skipped;
  return j;
}

inline Json to_json(const GradReport& r) {
  Json j;
  j["subject"] = r.subject;
  j["points_checked"] = r.points_checked;
  j["points_skipped"] = r.points_skipped;
  Json fs = Json::array();
  for (const auto& f : r.failures) {
    Json fj;
    fj["z"] = f.z;
    fj["partial"] = f.partial;
    fj["analytic"] = detail::number_or_null(f.analytic);
    fj["numeric"] = detail::number_or_null(f.numeric);
    fj["error"] = detail::number_or_null(f.error);
    fs.push_back(fj);
  }
  j["failures"] = fs;
  j["passed"] = r.passed;
  return j;
}

inline Json to_json(const FitReport& r) {
  Json j;
  j["final_params"] = to_json(r.final_params);
  j["final_weights"] = r.final_weights;
  j["final_mse"] = r.loss_curve.empty() ? Json(nullptr) : Json(r.loss_curve.back());
  j["epochs"] = r.loss_curve.empty() ? 0 : r.loss_curve.size() - 1;
  j["recovered"] = r.recovered;
  j["loss_curve"] = r.loss_curve;
  return j;
}

inline Json to_json(const Dataset& d) {
  Json j;
  j["seed"] = d.seed;
  j["noise_sigma"] = d.noise_sigma;
  j["inputs"] = d.inputs;
  j["targets"] = d.targets;
  if (d.planted) {
    j["planted"] = to_json(*d.planted);
    j["planted_weights"] = d.planted_weights;
  }
  return j;
}

inline Dataset dataset_from_json(const Json& j) {
  Dataset d;
  d.seed = j.value("seed", std::uint64_t{0});
  d.noise_sigma = j.value("noise_sigma", 0.0);
  d.inputs = detail::get<std::vector<std::vector<double>>>(j, "inputs");
  d.targets = detail::get<std::vector<double>>(j, "targets");
  if (j.contains("planted")) {
    d.planted = params_from_json(detail::field(j, "planted"));
    d.planted_weights = detail::get<std::vector<double>>(j, "planted_weights");
  }
  d.validate();
  return d;
}

inline Json to_json(const BenchRecord& b) {
  Json j;
  j["subject"] = b.subject;
  j["n_evals"] = b.n_evals;
  j["repeats"] = b.repeats;
  j["median_evals_per_sec"] = b.median_evals_per_sec;
  j["cv"] = b.coefficient_of_variation;
  j["checksum"] = detail::number_or_null(b.checksum);
  j["timestamp"] = b.timestamp;
  return j;
}

// --- CSV -------------------------------------------------------------------

inline void write_loss_csv(std::ostream& out, const FitReport& r) {
  out << "epoch,mse\n";
  for (std::size_t e = 0; e < r.loss_curve.size(); ++e) {
    out << e << ',' << format_double(r.loss_curve[e]) << '\n';
  }
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "subject,n_evals,repeats,median_evals_per_sec,cv\n";
  for (const auto& b : records) {
    out << b.subject << ',' << b.n_evals << ',' << b.repeats << ','
        << format_double(b.median_evals_per_sec) << ',' << format_double(b.coefficient_of_variation)
        << '\n';
  }
}

// "a=1;b=-0.5"
inline std::string binding_to_text(const FixedParamBinding& b) {
  std::string s;
  for (const auto& [k, v] : b) {
    if (!s.empty()) s += ';';
    s += k + "=" + format_double(v);
  }
  return s;
}

}  // namespace taaf::io
