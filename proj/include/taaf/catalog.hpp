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

// Catalog of scalar activation functions. Each entry carries its value,
// analytic first derivative and its kinks, the points where the left and
// right derivatives differ. At a kink the derivative is the right derivative.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taaf/error.hpp"
#include "taaf/format.hpp"
#include "taaf/numeric.hpp"

namespace taaf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Fixed vertical offset of Soft++: softplus(0) = ln 2 is removed so f(0) = 0.
inline constexpr double kSoftPlusPlusOffset = -0.69314718055994530942;

// Closed interval by default; either end may be open or infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = false;
  bool hi_open = false;

  static Interval all() { return {}; }
  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval positive() { return {0.0, kInf, true, false}; }

  bool contains(double v) const {
    if (std::isnan(v)) return false;
    if (lo_open ? !(v > lo) : !(v >= lo)) return false;
    if (hi_open ? !(v < hi) : !(v <= hi)) return false;
    return true;
  }

  std::string to_string() const {
    auto end = [](double v) {
      if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
      return format_double(v);
    };
    return std::string(lo_open || std::isinf(lo) ? "(" : "[") + end(lo) + ", " +
           end(hi) + (hi_open || std::isinf(hi) ? ")" : "]");
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ParamSpec {
  std::string name;
  double default_value = 0.0;
  Interval domain;
  bool integral = false;

  friend bool operator==(const ParamSpec&, const ParamSpec&) = default;
};

// Name -> value for the fixed parameters of one catalog entry.
using FixedParamBinding = std::map<std::string, double>;

struct ActivationDescriptor {
  std::string id;
  std::vector<ParamSpec> fixed_params;
  std::string kink_rule;
  std::string anchor;
  std::string notes;
};

// Parameters arrive resolved, in fixed_params order.
using ParamView = std::span<const double>;
using ScalarFn = double (*)(ParamView, double);
using KinkFn = std::vector<double> (*)(ParamView);

struct CatalogEntry {
  ActivationDescriptor descriptor;
  ScalarFn value;
  ScalarFn derivative;
  KinkFn kinks;
  // Points where f' is continuous but f'' jumps. Central differences lose
  // their second-order accuracy there, so gradient checks skip them too.
  KinkFn second_order_breaks = nullptr;
};

namespace detail {

inline std::vector<double> no_kinks(ParamView) { return {}; }
inline std::vector<double> kink_at_zero(ParamView) { return {0.0}; }

inline CatalogEntry entry(std::string id, std::vector<ParamSpec> params,
                          std::string kink_rule, std::string anchor, ScalarFn value,
                          ScalarFn derivative, KinkFn kinks, std::string notes = {}) {
  return CatalogEntry{
      ActivationDescriptor{std::move(id), std::move(params), std::move(kink_rule),
                           std::move(anchor), std::move(notes)},
      value, derivative, kinks};
}

inline std::vector<CatalogEntry> build_catalog() {
  using numeric::sigmoid;
  std::vector<CatalogEntry> c;
  const Interval all = Interval::all();

  c.push_back(entry(
      "identity", {}, "none", "z", [](ParamView, double z) { return z; },
      [](ParamView, double) { return 1.0; }, no_kinks));

  c.push_back(entry(
      "relu", {}, "{0}", "max(0, z)",
      [](ParamView, double z) { return z > 0 ? z : 0.0; },
      [](ParamView, double z) { return z >= 0 ? 1.0 : 0.0; }, kink_at_zero));

  c.push_back(entry(
      "neg_relu", {}, "{0}", "max(0, -z)",
      [](ParamView, double z) { return z < 0 ? -z : 0.0; },
      [](ParamView, double z) { return z < 0 ? -1.0 : 0.0; }, kink_at_zero,
      "mirrored ReLU used by the piecewise-linear sum units"));

  c.push_back(entry(
      "lrelu", {{"slope", 0.01, all, false}}, "{0} unless slope = 1",
      "slope * z for z < 0, z otherwise",
      [](ParamView p, double z) { return z < 0 ? p[0] * z : z; },
      [](ParamView p, double z) { return z < 0 ? p[0] : 1.0; },
      [](ParamView p) { return p[0] == 1.0 ? std::vector<double>{} : std::vector{0.0}; }));

  c.push_back(entry(
      "hard_tanh", {}, "{-1, 1}", "clamp(z, -1, 1)",
      [](ParamView, double z) { return std::clamp(z, -1.0, 1.0); },
      [](ParamView, double z) { return (z >= -1.0 && z < 1.0) ? 1.0 : 0.0; },
      [](ParamView) { return std::vector{-1.0, 1.0}; }));

  c.push_back(entry(
      "sgn", {}, "{0}", "sign(z), sgn(0) = 0",
      [](ParamView, double z) { return z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0); },
      [](ParamView, double) { return 0.0; }, kink_at_zero, "jump discontinuity at 0"));

  c.push_back(entry(
      "step", {}, "{0}", "1 for z <= 0, 0 otherwise",
      [](ParamView, double z) { return z <= 0 ? 1.0 : 0.0; },
      [](ParamView, double) { return 0.0; }, kink_at_zero,
      "jump discontinuity at 0; note the orientation, 1 on the left"));

  c.push_back(entry(
      "logistic_sigmoid", {}, "none", "1 / (1 + exp(-z))",
      [](ParamView, double z) { return sigmoid(z); },
      [](ParamView, double z) {
        const double s = sigmoid(z);
        return s * (1.0 - s);
      },
      no_kinks));

  c.push_back(entry(
      "tanh", {}, "none", "tanh(z)", [](ParamView, double z) { return std::tanh(z); },
      [](ParamView, double z) {
        const double t = std::tanh(z);
        return 1.0 - t * t;
      },
      no_kinks));

  c.push_back(entry(
      "sinh", {}, "none", "sinh(z)", [](ParamView, double z) { return std::sinh(z); },
      [](ParamView, double z) { return std::cosh(z); }, no_kinks));

  c.push_back(entry(
      "asinh", {}, "none", "asinh(z)", [](ParamView, double z) { return std::asinh(z); },
      [](ParamView, double z) { return 1.0 / std::hypot(1.0, z); }, no_kinks));

  c.push_back(entry(
      "exp_minus_one", {}, "none", "exp(z) - 1",
      [](ParamView, double z) { return std::expm1(z); },
      [](ParamView, double z) { return std::exp(z); }, no_kinks));

  c.push_back(entry(
      "softplus", {}, "none", "ln(1 + exp(z))",
      [](ParamView, double z) { return numeric::softplus(z); },
      [](ParamView, double z) { return sigmoid(z); }, no_kinks));

  c.push_back(entry(
      "elu", {{"a", 1.0, all, false}}, "{0} unless a = 1",
      "z for z >= 0, a * (exp(z) - 1) otherwise",
      [](ParamView p, double z) { return z >= 0 ? z : p[0] * std::expm1(z); },
      [](ParamView p, double z) { return z >= 0 ? 1.0 : p[0] * std::exp(z); },
      [](ParamView p) { return p[0] == 1.0 ? std::vector<double>{} : std::vector{0.0}; },
      "a scales the negative branch only"));
  c.back().second_order_breaks = [](ParamView p) {
    return p[0] == 1.0 ? std::vector{0.0} : std::vector<double>{};
  };

  c.push_back(entry(
      "silu", {}, "none", "z * sigmoid(z)",
      [](ParamView, double z) { return z * sigmoid(z); },
      [](ParamView, double z) {
        const double s = sigmoid(z);
        return s * (1.0 + z * (1.0 - s));
      },
      no_kinks));

  c.push_back(entry(
      "gelu_erf", {}, "none", "z * erf(z / sqrt(2))",
      [](ParamView, double z) { return z * numeric::erf_approx(z * numeric::kInvSqrt2); },
      [](ParamView, double z) {
        const double x = z * numeric::kInvSqrt2;
        return numeric::erf_approx(x) +
               z * numeric::erf_approx_derivative(x) * numeric::kInvSqrt2;
      },
      no_kinks, "erf is a rational approximation, |error| <= 1.5e-7"));

  c.push_back(entry(
      "fts_core", {}, "{0}", "relu(z) * sigmoid(z)",
      [](ParamView, double z) { return z > 0 ? z * sigmoid(z) : 0.0; },
      [](ParamView, double z) {
        if (z < 0) return 0.0;
        const double s = sigmoid(z);
        return s + z * s * (1.0 - s);
      },
      kink_at_zero));

  c.push_back(entry(
      "etanh_core", {}, "none", "exp(z) * tanh(z)",
      [](ParamView, double z) { return std::exp(z) * std::tanh(z); },
      [](ParamView, double z) {
        const double t = std::tanh(z);
        return std::exp(z) * (t + 1.0 - t * t);
      },
      no_kinks));

  c.push_back(entry(
      "combhsine_core", {}, "none", "sinh(z) + asinh(z)",
      [](ParamView, double z) { return std::sinh(z) + std::asinh(z); },
      [](ParamView, double z) { return std::cosh(z) + 1.0 / std::hypot(1.0, z); },
      no_kinks));

  c.push_back(entry(
      "logish_core", {}, "none", "z * ln(1 + sigmoid(z))",
      [](ParamView, double z) { return z * std::log1p(sigmoid(z)); },
      [](ParamView, double z) {
        const double s = sigmoid(z);
        return std::log1p(s) + z * s * (1.0 - s) / (1.0 + s);
      },
      no_kinks));

  // 0.25 (1 + e^-z) + 0.75 = 1 + 0.25 e^-z; its log is softplus(ln 0.25 - z).
  c.push_back(entry(
      "rmaf_core", {{"b", 1.0, all, false}, {"c", 1.0, all, false}}, "none",
      "b * z / (0.25 * (1 + exp(-z)) + 0.75)^c",
      [](ParamView p, double z) {
        const double log_den = numeric::softplus(std::log(0.25) - z);
        return p[0] * z * std::exp(-p[1] * log_den);
      },
      [](ParamView p, double z) {
        const double log_den = numeric::softplus(std::log(0.25) - z);
        const double q = sigmoid(std::log(0.25) - z);  // 0.25 e^-z / den
        return p[0] * std::exp(-p[1] * log_den) * (1.0 + p[1] * z * q);
      },
      no_kinks, "defaults b = 1, c = 1 are a configuration choice"));

  c.push_back(entry(
      "bipolar_sigmoid", {}, "none", "(1 - exp(-z)) / (1 + exp(-z))",
      [](ParamView, double z) { return std::tanh(0.5 * z); },
      [](ParamView, double z) {
        const double t = std::tanh(0.5 * z);
        return 0.5 * (1.0 - t * t);
      },
      no_kinks, "evaluated as tanh(z / 2)"));

  c.push_back(entry(
      "double_bipolar", {}, "none", "2 * (1 - exp(-z)) / (1 + exp(-z))",
      [](ParamView, double z) { return 2.0 * std::tanh(0.5 * z); },
      [](ParamView, double z) {
        const double t = std::tanh(0.5 * z);
        return 1.0 - t * t;
      },
      no_kinks, "evaluated as 2 tanh(z / 2)"));

  c.push_back(entry(
      "pstanh_core", {}, "none", "z * (1 + tanh(z))",
      [](ParamView, double z) { return z * (1.0 + std::tanh(z)); },
      [](ParamView, double z) {
        const double t = std::tanh(z);
        return 1.0 + t + z * (1.0 - t * t);
      },
      no_kinks));

  c.push_back(entry(
      "sin", {}, "none", "sin(z)", [](ParamView, double z) { return std::sin(z); },
      [](ParamView, double z) { return std::cos(z); }, no_kinks));

  c.push_back(entry(
      "gauss_exp", {}, "{0}", "exp(-|z|)",
      [](ParamView, double z) { return std::exp(-std::abs(z)); },
      [](ParamView, double z) { return z >= 0 ? -std::exp(-z) : std::exp(z); },
      kink_at_zero));

  c.push_back(entry(
      "gaussian_pdf", {}, "none", "exp(-z^2 / 2) / sqrt(2 pi)",
      [](ParamView, double z) { return numeric::kInvSqrt2Pi * std::exp(-0.5 * z * z); },
      [](ParamView, double z) {
        return -z * numeric::kInvSqrt2Pi * std::exp(-0.5 * z * z);
      },
      no_kinks, "mixture-of-Gaussians branch kernel"));

  c.push_back(entry(
      "power_k", {{"k", 2.0, Interval::closed(0, 16), true}}, "none", "z^k, integer k",
      [](ParamView p, double z) { return std::pow(z, p[0]); },
      [](ParamView p, double z) {
        return p[0] == 0.0 ? 0.0 : p[0] * std::pow(z, p[0] - 1.0);
      },
      no_kinks, "polynomial inner function for power-series units"));

  return c;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = detail::build_catalog();
  return entries;
}

inline const CatalogEntry& find_entry(std::string_view id) {
  static const std::map<std::string, const CatalogEntry*, std::less<>> index = [] {
    std::map<std::string, const CatalogEntry*, std::less<>> m;
    for (const auto& e : catalog_entries()) m.emplace(e.descriptor.id, &e);
    return m;
  }();
  auto it = index.find(id);
  if (it == index.end()) throw UnknownIdError("activation", std::string(id));
  return *it->second;
}

inline bool has_entry(std::string_view id) {
  try {
    find_entry(id);
    return true;
  } catch (const UnknownIdError&) {
    return false;
  }
}

inline ActivationDescriptor describe(std::string_view id) { return find_entry(id).descriptor; }

// Fills defaults and validates names and domains.
inline std::vector<double> resolve_params(const CatalogEntry& e, const FixedParamBinding& b) {
  const auto& specs = e.descriptor.fixed_params;
  for (const auto& [name, _] : b) {
    const bool known = std::any_of(specs.begin(), specs.end(),
                                   [&](const ParamSpec& s) { return s.name == name; });
    if (!known) {
      throw DomainError("'" + e.descriptor.id + "' has no fixed parameter '" + name + "'");
    }
  }
  std::vector<double> out;
  out.reserve(specs.size());
  for (const auto& s : specs) {
    auto it = b.find(s.name);
    const double v = it == b.end() ? s.default_value : it->second;
    if (!s.domain.contains(v) || (s.integral && std::trunc(v) != v)) {
      throw DomainError("parameter '" + s.name + "' of '" + e.descriptor.id + "' = " +
                        format_double(v) + " outside " + s.domain.to_string() +
                        (s.integral ? " (integer)" : ""));
    }
    out.push_back(v);
  }
  return out;
}

// A catalog entry with resolved parameters; cheap to call repeatedly.
class BoundActivation {
 public:
  BoundActivation(std::string_view id, const FixedParamBinding& binding)
      : entry_(&find_entry(id)), params_(resolve_params(*entry_, binding)) {}

  const std::string& id() const { return entry_->descriptor.id; }

  double value(double z, numeric::Diagnostics* diag = nullptr) const {
    return numeric::saturate(entry_->value(params_, z), diag);
  }
  double derivative(double z, numeric::Diagnostics* diag = nullptr) const {
    return numeric::saturate(entry_->derivative(params_, z), diag);
  }
  std::vector<double> kinks() const { return entry_->kinks(params_); }
  // Kinks plus second-order breaks: where finite differences are unreliable.
  std::vector<double> fd_exclusions() const {
    std::vector<double> out = kinks();
    if (entry_->second_order_breaks) {
      for (double b : entry_->second_order_breaks(params_)) out.push_back(b);
    }
    return out;
  }
  std::span<const double> params() const { return params_; }

 private:
  const CatalogEntry* entry_;
  std::vector<double> params_;
};

namespace detail {
inline void require_finite(double z) {
  if (!std::isfinite(z)) throw InvalidArgumentError("input z must be finite");
}
}  // namespace detail

inline double eval(std::string_view id, const FixedParamBinding& params, double z,
                   numeric::Diagnostics* diag = nullptr) {
  detail::require_finite(z);
  return BoundActivation(id, params).value(z, diag);
}

inline double eval_derivative(std::string_view id, const FixedParamBinding& params, double z,
                              numeric::Diagnostics* diag = nullptr) {
  detail::require_finite(z);
  return BoundActivation(id, params).derivative(z, diag);
}

inline std::vector<double> kinks(std::string_view id, const FixedParamBinding& params) {
  return BoundActivation(id, params).kinks();
}

}  // namespace taaf
