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

// Registry of published activation functions that are special cases of a
// TAAF. Each record binds the TAAF parameters to expressions over the
// function's own fixed parameters; verify() compares the instantiated TAAF
// against an independent implementation of the function's closed form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taaf/catalog.hpp"
#include "taaf/error.hpp"
#include "taaf/numeric.hpp"
#include "taaf/param_expr.hpp"
#include "taaf/rng.hpp"
#include "taaf/taaf.hpp"

namespace taaf {

struct EquivalenceRecord {
  std::string name;
  std::string direct_id;
  std::string inner_id;
  ParamExpr alpha;
  ParamExpr beta;
  ParamExpr gamma;
  ParamExpr delta;
  std::map<std::string, ParamExpr> inner_fixed;
  std::map<std::string, Interval> param_domains;
  bool disputed = false;
  std::string anchor;
  std::string notes;

  friend bool operator==(const EquivalenceRecord&, const EquivalenceRecord&) = default;
};

// Closed-form implementation of a named function, written independently of
// the TAAF machinery.
struct DirectForm {
  std::string id;
  double (*value)(const FixedParamBinding&, double);
  std::vector<double> (*kinks)(const FixedParamBinding&);
};

struct VerifyResult {
  double max_abs_diff = 0.0;
  double worst_z = 0.0;
  std::size_t points_checked = 0;
  std::size_t points_skipped = 0;
};

inline constexpr double kKinkSkipRadius = 1e-3;
inline constexpr double kEquivalenceTolerance = 1e-12;
inline constexpr double kErfEquivalenceTolerance = 1e-6;

// 201 equally spaced points on [-5, 5].
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> g;
  g.reserve(n);
  if (n == 1) {
    g.push_back(lo);
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Weighted endpoints keep the grid exactly symmetric when lo = -hi.
    const double a = static_cast<double>(n - 1 - i), b = static_cast<double>(i);
    g.push_back((lo * a + hi * b) / static_cast<double>(n - 1));
  }
  return g;
}

inline std::vector<double> standard_grid() { return linspace(-5.0, 5.0, 201); }

namespace direct {

inline double p(const FixedParamBinding& b, const char* name) {
  auto it = b.find(name);
  if (it == b.end()) throw DomainError(std::string("direct form needs parameter '") + name + "'");
  return it->second;
}

inline double relu(double z) { return z > 0 ? z : 0.0; }
inline double hardtanh(double z) { return z < -1 ? -1.0 : (z > 1 ? 1.0 : z); }
inline double sgn(double z) { return z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0); }
inline double sigma(double z) { return 1.0 / (1.0 + std::exp(-z)); }
inline double softplus(double z) { return std::log(1.0 + std::exp(z)); }
inline double elu(double a, double z) { return z >= 0 ? z : a * (std::exp(z) - 1.0); }
inline double lrelu(double slope, double z) { return z < 0 ? slope * z : z; }
inline double fts(double z) { return z >= 0 ? z / (1.0 + std::exp(-z)) : 0.0; }

inline std::vector<double> none(const FixedParamBinding&) { return {}; }
inline std::vector<double> at_zero(const FixedParamBinding&) { return {0.0}; }

// Elu kink vanishes only when the negative branch has unit slope.
inline std::vector<double> elu_kink(double a, double at) {
  return a == 1.0 ? std::vector<double>{} : std::vector<double>{at};
}

inline std::vector<DirectForm> build() {
  using B = const FixedParamBinding&;
  std::vector<DirectForm> d;
  auto add = [&](std::string id, double (*v)(B, double),
                 std::vector<double> (*k)(B) = none) { d.push_back({std::move(id), v, k}); };

  add("scaled_tanh", [](B b, double z) { return p(b, "a") * std::tanh(p(b, "b") * z); });
  add("e_tanh", [](B b, double z) { return p(b, "a") * std::exp(z) * std::tanh(z); });
  add("sss", [](B b, double z) { return sigma(p(b, "a") * (z - p(b, "b"))); });
  add("vsf", [](B b, double z) { return p(b, "a") * sigma(p(b, "b") * z) - p(b, "c"); });
  add("slrelu", [](B b, double z) { return p(b, "a") * relu(z); }, at_zero);
  add("e_swish", [](B b, double z) { return p(b, "a") * z * sigma(z); });
  add("sgelu", [](B b, double z) {
    return p(b, "a") * z * numeric::erf_approx(z / std::sqrt(2.0));
  });
  add("comb_h_sine", [](B b, double z) {
    const double x = p(b, "a") * z;
    return std::sinh(x) + std::asinh(x);
  });
  add("drlu", [](B b, double z) { return relu(z + p(b, "a")); },
      [](B b) { return std::vector{-p(b, "a")}; });
  add("drelu", [](B b, double z) { return relu(z - p(b, "a")) + p(b, "a"); },
      [](B b) { return std::vector{p(b, "a")}; });
  add("disrelu", [](B b, double z) { return relu(z + p(b, "a")) - p(b, "a"); },
      [](B b) { return std::vector{-p(b, "a")}; });
  add("fts", [](B b, double z) { return fts(z) + p(b, "T"); }, at_zero);
  add("psoftplus", [](B b, double z) { return p(b, "a") * (softplus(z) - p(b, "b")); });
  add("frelu", [](B b, double z) { return relu(z + p(b, "a")) + p(b, "b"); },
      [](B b) { return std::vector{-p(b, "a")}; });
  add("shilu", [](B b, double z) { return p(b, "a") * relu(z) + p(b, "b"); }, at_zero);
  add("abrelu", [](B b, double z) { return relu(z - p(b, "a")); },
      [](B b) { return std::vector{p(b, "a")}; });
  add("pprelu", [](B b, double z) { return p(b, "a") * relu(z); }, at_zero);
  add("plogish", [](B b, double z) {
    return p(b, "a") * z * std::log(1.0 + sigma(p(b, "b") * z));
  });
  add("aoaf", [](B b, double z) { return relu(z - p(b, "b") * p(b, "a")) + p(b, "c") * p(b, "a"); },
      [](B b) { return std::vector{p(b, "b") * p(b, "a")}; });
  add("lelelu", [](B b, double z) { return p(b, "a") * lrelu(0.01, z); }, at_zero);
  add("rmaf", [](B b, double z) {
    return p(b, "a") * (p(b, "b") / std::pow(0.25 * (1.0 + std::exp(-z)) + 0.75, p(b, "c"))) * z;
  });
  add("rsign", [](B b, double z) { return sgn(z - p(b, "a")); },
      [](B b) { return std::vector{p(b, "a")}; });
  add("paired_relu_1", [](B b, double z) { return relu(p(b, "a") * z - p(b, "b")); },
      [](B b) { return std::vector{p(b, "b") / p(b, "a")}; });
  add("paired_relu_2", [](B b, double z) { return relu(p(b, "c") * z - p(b, "d")); },
      [](B b) { return std::vector{p(b, "d") / p(b, "c")}; });
  add("mba_1", [](B b, double z) { return relu(z + p(b, "b_1")); },
      [](B b) { return std::vector{-p(b, "b_1")}; });
  add("mba_2", [](B b, double z) { return relu(z + p(b, "b_2")); },
      [](B b) { return std::vector{-p(b, "b_2")}; });
  add("shelu", [](B b, double z) { return elu(p(b, "a"), z + p(b, "b")); },
      [](B b) { return elu_kink(p(b, "a"), -p(b, "b")); });
  add("svelu", [](B b, double z) { return elu(p(b, "a"), z) + p(b, "b"); },
      [](B b) { return elu_kink(p(b, "a"), 0.0); });
  add("pshelu", [](B b, double z) { return p(b, "a") * elu(1.0, (z + p(b, "c")) / p(b, "b")); });
  add("psvelu", [](B b, double z) { return p(b, "a") * elu(1.0, z / p(b, "b")) + p(b, "c"); });
  add("sh_hardtanh", [](B b, double z) { return hardtanh(z - p(b, "a")); },
      [](B b) { return std::vector{p(b, "a") - 1.0, p(b, "a") + 1.0}; });
  add("sv_hardtanh", [](B b, double z) { return hardtanh(z) + p(b, "a"); },
      [](B) { return std::vector{-1.0, 1.0}; });
  add("pfelu", [](B b, double z) { return elu(p(b, "a"), z) + p(b, "b"); },
      [](B b) { return elu_kink(p(b, "a"), 0.0); });
  add("adaptive_hardtanh", [](B b, double z) { return hardtanh(p(b, "a_t") * (z - p(b, "b"))); },
      [](B b) {
        const double s = 1.0 / p(b, "a_t");
        return std::vector{p(b, "b") - s, p(b, "b") + s};
      });
  add("shape_autotuning_sigmoid", [](B b, double z) {
    const double e = std::exp(p(b, "a") * z);
    return p(b, "a") * 2.0 * (1.0 - e) / (1.0 + e);
  });
  add("generalized_tanh", [](B b, double z) {
    const double e = std::exp(p(b, "b") * z);
    return p(b, "a") * (1.0 - e) / (1.0 + e);
  });
  add("trainable_amplitude", [](B b, double z) { return p(b, "a") * std::tanh(z) + p(b, "b"); });
  add("slope_varying", [](B b, double z) { return softplus(p(b, "a") * z); });
  add("svaf", [](B b, double z) { return std::tanh(p(b, "a") * z); });
  add("assf", [](B b, double z) { return sigma(p(b, "a") * z); });
  add("psigmoid", [](B b, double z) { return p(b, "a") * sigma(p(b, "b") * z); });
  add("swish", [](B b, double z) {
    const double x = p(b, "a") * z;
    return x * sigma(x);
  });
  add("ahaf", [](B b, double z) {
    const double x = p(b, "b") * z;
    return p(b, "a") * x * sigma(x);
  });
  add("adaptive_slope_tanh", [](B b, double z) { return std::tanh(p(b, "a") * z); });
  add("pstanh", [](B b, double z) {
    const double x = p(b, "b") * z;
    return p(b, "a") * x * (1.0 + std::tanh(x));
  });
  add("ssinh", [](B b, double z) { return p(b, "a") * std::sinh(p(b, "b") * z); });
  add("sexp", [](B b, double z) { return p(b, "a") * std::expm1(p(b, "b") * z); });
  add("pfts", [](B b, double z) { return fts(z) + p(b, "T"); }, at_zero);
  add("parameterized_softplus", [](B b, double z) { return softplus(z) - p(b, "a"); });
  add("scaled_logistic_sigmoid", [](B b, double z) { return p(b, "a") * sigma(p(b, "b") * z); });
  add("erturul_af1", [](B b, double z) { return sigma(p(b, "a") * z + p(b, "b")); });
  add("erturul_af2", [](B b, double z) { return std::sin(p(b, "a") * z + p(b, "b")); });
  add("erturul_af3", [](B b, double z) { return std::exp(-std::abs(p(b, "a") * (z - p(b, "b")))); },
      [](B b) { return std::vector{p(b, "b")}; });
  add("erturul_af4", [](B b, double z) { return p(b, "a") * z + p(b, "b") <= 0 ? 1.0 : 0.0; },
      [](B b) { return std::vector{-p(b, "b") / p(b, "a")}; });
  return d;
}

}  // namespace direct

inline const DirectForm& find_direct(std::string_view id) {
  static const std::vector<DirectForm> forms = direct::build();
  auto it = std::find_if(forms.begin(), forms.end(), [&](const DirectForm& f) { return f.id == id; });
  if (it == forms.end()) throw UnknownIdError("direct form", std::string(id));
  return *it;
}

namespace detail {

struct RecordSpec {
  const char* name;
  const char* inner;
  const char* alpha;
  const char* beta;
  const char* gamma;
  const char* delta;
  std::vector<std::pair<const char*, Interval>> domains;
  std::vector<std::pair<const char*, const char*>> inner_fixed = {};
  bool disputed = false;
  const char* anchor = "";
  const char* notes = "";
};

inline EquivalenceRecord make_record(const RecordSpec& s) {
  EquivalenceRecord r;
  r.name = s.name;
  r.direct_id = s.name;
  r.inner_id = s.inner;
  r.alpha = ParamExpr::parse(s.alpha);
  r.beta = ParamExpr::parse(s.beta);
  r.gamma = ParamExpr::parse(s.gamma);
  r.delta = ParamExpr::parse(s.delta);
  for (const auto& [k, v] : s.inner_fixed) r.inner_fixed.emplace(k, ParamExpr::parse(v));
  for (const auto& [k, v] : s.domains) r.param_domains.emplace(k, v);
  r.disputed = s.disputed;
  r.anchor = s.anchor;
  r.notes = s.notes;
  return r;
}

inline std::vector<EquivalenceRecord> build_registry() {
  const Interval R = Interval::all();
  const std::vector<RecordSpec> specs = {
      {"scaled_tanh", "tanh", "a", "b", "0", "0", {{"a", R}, {"b", R}}, {}, false,
       "scaled hyperbolic tangent a tanh(b z)"},
      {"e_tanh", "etanh_core", "a", "1", "0", "0", {{"a", R}}, {}, false,
       "E-Tanh a exp(z) tanh(z), fixed vertical scale a"},
      {"sss", "logistic_sigmoid", "1", "a", "neg(mul(a,b))", "0", {{"a", R}, {"b", R}}, {}, false,
       "logistic sigmoid with input scale a and shift b: sigma(a (z - b))"},
      {"vsf", "logistic_sigmoid", "a", "b", "0", "neg(c)", {{"a", R}, {"b", R}, {"c", R}}, {}, false,
       "scaled and translated sigmoid a sigma(b z) - c"},
      {"slrelu", "relu", "a", "1", "0", "0", {{"a", R}}, {}, false,
       "ReLU with a slope parameter for positive inputs"},
      {"e_swish", "silu", "a", "1", "0", "0", {{"a", R}}, {}, false, "E-swish a z sigma(z)"},
      {"sgelu", "gelu_erf", "a", "1", "0", "0", {{"a", R}}, {}, false,
       "SGELU a z erf(z / sqrt 2)", "direct and TAAF sides share the rational erf"},
      {"comb_h_sine", "combhsine_core", "1", "a", "0", "0", {{"a", R}}, {}, false,
       "comb-H-sine sinh(a z) + asinh(a z)"},
      {"drlu", "relu", "1", "1", "a", "0", {{"a", R}}, {}, false, "ReLU shifted left by fixed a"},
      {"drelu", "relu", "1", "1", "neg(a)", "a", {{"a", R}}, {}, false,
       "ReLU shifted right and up by a"},
      {"disrelu", "relu", "1", "1", "a", "neg(a)", {{"a", R}}, {}, false,
       "ReLU shifted left and down by a"},
      {"fts", "fts_core", "1", "1", "0", "T", {{"T", R}}, {}, false,
       "flatted-T swish relu(z) sigma(z) + T"},
      {"psoftplus", "softplus", "a", "1", "0", "neg(mul(a,b))", {{"a", R}, {"b", R}}, {}, false,
       "scaled and translated softplus a (softplus(z) - b)"},
      {"frelu", "relu", "1", "1", "a", "b", {{"a", R}, {"b", R}}, {}, false,
       "ReLU with horizontal shift a and vertical shift b"},
      {"shilu", "relu", "a", "1", "0", "b", {{"a", R}, {"b", R}}, {}, false,
       "a relu(z) + b"},
      {"abrelu", "relu", "1", "1", "neg(a)", "0", {{"a", R}}, {}, false,
       "ReLU shifted by the input average a"},
      {"pprelu", "relu", "a", "1", "0", "0", {{"a", R}}, {}, false,
       "adaptive positive-slope ReLU a relu(z)"},
      {"plogish", "logish_core", "div(a,b)", "b", "0", "0", {{"a", R}, {"b", R}}, {}, false,
       "parametric logish a z ln(1 + sigma(b z))"},
      {"aoaf", "relu", "1", "1", "neg(mul(b,a))", "mul(c,a)", {{"a", R}, {"b", R}, {"c", R}}, {},
       false, "relu(z - b a) + c a with a the input mean"},
      {"lelelu", "lrelu", "a", "1", "0", "1", {{"a", R}}, {}, true,
       "a lrelu(z)",
       "printed with delta = 1 although the function is a pure scaling a lrelu(z)"},
      {"rmaf", "rmaf_core", "a", "1", "0", "0",
       {{"a", R}, {"b", R}, {"c", Interval{0.0, kInf, false, false}}},
       {{"b", "b"}, {"c", "c"}}, false, "a b z / (0.25 (1 + exp(-z)) + 0.75)^c",
       "exponent c restricted to c >= 0 so the denominator never amplifies"},
      {"rsign", "sgn", "1", "1", "neg(a)", "0", {{"a", R}}, {}, false, "sgn(z - a)"},
      {"paired_relu_1", "relu", "1", "a", "neg(b)", "0", {{"a", R}, {"b", R}}, {}, false,
       "first output of paired ReLU: relu(a z - b)"},
      {"paired_relu_2", "relu", "1", "c", "neg(d)", "0", {{"c", R}, {"d", R}}, {}, false,
       "second output of paired ReLU: relu(c z - d)"},
      {"mba_1", "relu", "1", "1", "b_1", "0", {{"b_1", R}}, {}, false,
       "multi-bias activation, output k = 1: relu(z + b_1)"},
      {"mba_2", "relu", "1", "1", "b_2", "0", {{"b_2", R}}, {}, false,
       "multi-bias activation, output k = 2: relu(z + b_2)"},
      {"shelu", "elu", "1", "1", "b", "0", {{"a", R}, {"b", R}}, {{"a", "a"}}, false,
       "horizontally shifted ELU elu_a(z + b)"},
      {"svelu", "elu", "1", "1", "0", "b", {{"a", R}, {"b", R}}, {{"a", "a"}}, false,
       "vertically shifted ELU elu_a(z) + b"},
      {"pshelu", "elu", "a", "recip(b)", "div(c,b)", "0", {{"a", R}, {"b", R}, {"c", R}}, {}, false,
       "parametric shifted ELU a elu((z + c) / b)"},
      {"psvelu", "elu", "a", "recip(b)", "0", "c", {{"a", R}, {"b", R}, {"c", R}}, {}, false,
       "parametric vertically shifted ELU a elu(z / b) + c"},
      {"sh_hardtanh", "hard_tanh", "1", "1", "neg(a)", "0", {{"a", R}}, {}, false,
       "hardtanh(z - a)"},
      {"sv_hardtanh", "hard_tanh", "1", "1", "0", "a", {{"a", R}}, {}, false, "hardtanh(z) + a"},
      {"pfelu", "elu", "1", "1", "0", "b", {{"a", R}, {"b", R}}, {{"a", "a"}}, false,
       "FELU with a trainable vertical shift b",
       "FELU evaluates the same function as ELU; a is its own negative-branch scale"},
      {"adaptive_hardtanh", "hard_tanh", "1", "a_t", "neg(mul(a_t,b))", "0", {{"a_t", R}, {"b", R}},
       {}, false, "hardtanh(a_t (z - b)), a_t scheduled per epoch"},
      {"shape_autotuning_sigmoid", "double_bipolar", "a", "neg(a)", "0", "0",
       {{"a", Interval::positive()}}, {}, false,
       "sigmoid with shape autotuning 2 a (1 - exp(a z)) / (1 + exp(a z)), a > 0"},
      {"generalized_tanh", "bipolar_sigmoid", "a", "neg(b)", "0", "0", {{"a", R}, {"b", R}}, {},
       false, "generalized hyperbolic tangent a (1 - exp(b z)) / (1 + exp(b z))"},
      {"trainable_amplitude", "tanh", "a", "1", "0", "b", {{"a", R}, {"b", R}}, {}, false,
       "a g(z) + b", "any inner function; tanh instantiated here"},
      {"slope_varying", "softplus", "1", "a", "0", "0", {{"a", R}}, {}, false, "g(a z)",
       "any inner function; softplus instantiated here"},
      {"svaf", "tanh", "1", "a", "0", "0", {{"a", R}}, {}, false, "tanh(a z)"},
      {"assf", "logistic_sigmoid", "1", "a", "0", "0", {{"a", R}}, {}, false, "sigma(a z)"},
      {"psigmoid", "logistic_sigmoid", "a", "b", "0", "0", {{"a", R}, {"b", R}}, {}, false,
       "a sigma(b z), b shared per layer"},
      {"swish", "silu", "1", "a", "0", "0", {{"a", R}}, {}, false, "a z sigma(a z)",
       "the TAAF form expands to a z sigma(a z); the commonly cited swish is z sigma(a z)"},
      {"ahaf", "silu", "a", "b", "0", "0", {{"a", R}, {"b", R}}, {}, false,
       "a (b z) sigma(b z)"},
      {"adaptive_slope_tanh", "tanh", "1", "a", "1", "1", {{"a", R}}, {}, true, "tanh(a z)",
       "printed with gamma = 1, delta = 1 although the function is a pure slope change"},
      {"pstanh", "pstanh_core", "a", "b", "0", "0", {{"a", R}, {"b", R}}, {}, false,
       "a (b z) (1 + tanh(b z))"},
      {"ssinh", "sinh", "a", "b", "0", "0", {{"a", R}, {"b", R}}, {}, false, "a sinh(b z)"},
      {"sexp", "exp_minus_one", "a", "b", "0", "0", {{"a", R}, {"b", R}}, {}, false,
       "a (exp(b z) - 1)"},
      {"pfts", "fts_core", "1", "1", "1", "T", {{"T", R}}, {}, true,
       "relu(z) sigma(z) + T with adaptive T",
       "printed with gamma = 1 although the function is a vertical shift only"},
      {"parameterized_softplus", "softplus", "1", "1", "0", "neg(a)", {{"a", Interval::closed(0, 1)}},
       {}, false, "softplus(z) - a, shift limited to [-1, 0]"},
      {"scaled_logistic_sigmoid", "logistic_sigmoid", "a", "b", "0", "0", {{"a", R}, {"b", R}}, {},
       false, "a sigma(b z)"},
      {"erturul_af1", "logistic_sigmoid", "1", "a", "b", "0", {{"a", R}, {"b", R}}, {}, false,
       "sigma(a z + b)"},
      {"erturul_af2", "sin", "1", "a", "b", "0", {{"a", R}, {"b", R}}, {}, false, "sin(a z + b)"},
      {"erturul_af3", "gauss_exp", "1", "a", "neg(mul(a,b))", "0", {{"a", R}, {"b", R}}, {}, false,
       "exp(-|a (z - b)|)"},
      {"erturul_af4", "step", "1", "a", "b", "0", {{"a", R}, {"b", R}}, {}, false,
       "step with threshold: 1 if a z + b <= 0 else 0"},
  };
  std::vector<EquivalenceRecord> out;
  out.reserve(specs.size());
  for (const auto& s : specs) out.push_back(make_record(s));
  std::sort(out.begin(), out.end(),
            [](const EquivalenceRecord& x, const EquivalenceRecord& y) { return x.name < y.name; });
  return out;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Immutable collection of records, ordered by name.
class Registry {
 public:
  Registry() = default;
  explicit Registry(std::vector<EquivalenceRecord> records) : records_(std::move(records)) {
    std::sort(records_.begin(), records_.end(),
              [](const auto& x, const auto& y) { return x.name < y.name; });
    for (std::size_t i = 1; i < records_.size(); ++i) {
      if (records_[i].name == records_[i - 1].name) {
        throw InvalidArgumentError("duplicate record '" + records_[i].name + "'");
      }
    }
  }

  static const Registry& builtin() {
    static const Registry r(detail::build_registry());
    return r;
  }

  const std::vector<EquivalenceRecord>& records() const { return records_; }

  std::vector<EquivalenceRecord> list(std::optional<bool> disputed = std::nullopt) const {
    std::vector<EquivalenceRecord> out;
    for (const auto& r : records_) {
      if (!disputed || r.disputed == *disputed) out.push_back(r);
    }
    return out;
  }

  const EquivalenceRecord& find(std::string_view name) const {
    auto it = std::find_if(records_.begin(), records_.end(),
                           [&](const auto& r) { return r.name == name; });
    if (it == records_.end()) throw UnknownIdError("record", std::string(name));
    return *it;
  }

 private:
  std::vector<EquivalenceRecord> records_;
};

inline std::vector<EquivalenceRecord> list_records(std::optional<bool> disputed = std::nullopt) {
  return Registry::builtin().list(disputed);
}

inline bool uses_erf(const EquivalenceRecord& r) { return r.inner_id == "gelu_erf"; }

inline double equivalence_tolerance(const EquivalenceRecord& r) {
  return uses_erf(r) ? kErfEquivalenceTolerance : kEquivalenceTolerance;
}

inline void check_binding(const EquivalenceRecord& r, const FixedParamBinding& binding) {
  for (const auto& [name, v] : binding) {
    auto it = r.param_domains.find(name);
    if (it == r.param_domains.end()) {
      throw DomainError("record '" + r.name + "' has no parameter '" + name + "'");
    }
    if (!it->second.contains(v)) {
      throw DomainError("parameter '" + name + "' of '" + r.name + "' = " + format_double(v) +
                        " outside " + it->second.to_string());
    }
  }
  for (const auto& [name, _] : r.param_domains) {
    if (!binding.contains(name)) {
      throw DomainError("record '" + r.name + "' needs parameter '" + name + "'");
    }
  }
}

inline TaafNode instantiate(const EquivalenceRecord& r, const FixedParamBinding& binding) {
  check_binding(r, binding);
  TaafNode node;
  node.params = {r.alpha.evaluate(binding), r.beta.evaluate(binding), r.gamma.evaluate(binding),
                 r.delta.evaluate(binding)};
  if (!node.params.finite()) {
    throw DomainError("record '" + r.name + "' yields non-finite TAAF parameters");
  }
  node.inner_id = r.inner_id;
  for (const auto& [k, e] : r.inner_fixed) node.inner_fixed.emplace(k, e.evaluate(binding));
  BoundTaaf validate(node);
  return node;
}

// Draws one value per parameter from domain intersected with [-3, 3],
// rejecting |v| < 1e-3. Parameters are visited in name order.
inline FixedParamBinding random_binding(const EquivalenceRecord& r, std::uint64_t seed,
                                        std::size_t index) {
  SplitMix64 rng(seed ^ detail::fnv1a(r.name) ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  FixedParamBinding b;
  for (const auto& [name, dom] : r.param_domains) {
    const double lo = std::max(dom.lo, -3.0);
    const double hi = std::min(dom.hi, 3.0);
    if (!(lo < hi)) throw DomainError("domain of '" + name + "' does not meet [-3, 3]");
    double v = 0.0;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000) throw DomainError("cannot sample parameter '" + name + "'");
      v = rng.uniform(lo, hi);
      if (std::abs(v) >= 1e-3 && dom.contains(v)) break;
    }
    b.emplace(name, v);
  }
  return b;
}

inline std::vector<FixedParamBinding> seeded_bindings(const EquivalenceRecord& r,
                                                      std::uint64_t seed, std::size_t count = 3) {
  std::vector<FixedParamBinding> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_binding(r, seed, i));
  return out;
}

inline VerifyResult verify(const EquivalenceRecord& r, const FixedParamBinding& binding,
                           std::span<const double> grid) {
  const TaafNode node = instantiate(r, binding);
  const BoundTaaf taaf(node);
  const DirectForm& form = find_direct(r.direct_id);

  std::vector<double> skip = taaf.kinks_in_z();
  for (double k : form.kinks(binding)) skip.push_back(k);

  VerifyResult res;
  for (double z : grid) {
    if (!std::isfinite(z)) throw InvalidArgumentError("grid points must be finite");
    const bool near_kink = std::any_of(skip.begin(), skip.end(), [&](double k) {
      return std::abs(z - k) <= kKinkSkipRadius;
    });
    if (near_kink) {
      ++res.points_skipped;
      continue;
    }
    const double diff = std::abs(taaf.value(z) - form.value(binding, z));
    ++res.points_checked;
    if (diff > res.max_abs_diff || std::isnan(diff)) {
      res.max_abs_diff = std::isnan(diff) ? kInf : diff;
      res.worst_z = z;
    }
  }
  return res;
}

}  // namespace taaf
