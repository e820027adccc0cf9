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

// Transformative adaptive activation: g(f, z) = alpha * f(beta * z + gamma) + delta,
// its partial derivatives, the single-neuron forward pass, and composite
// units (sum, max, weighted average) over TAAF branches.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "taaf/catalog.hpp"
#include "taaf/error.hpp"

namespace taaf {

struct TaafParams {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 0.0;
  double delta = 0.0;

  // (1, 1, 0, 0) reduces any TAAF to its inner function.
  static constexpr TaafParams identity() { return {}; }

  bool finite() const {
    return std::isfinite(alpha) && std::isfinite(beta) && std::isfinite(gamma) &&
           std::isfinite(delta);
  }

  friend bool operator==(const TaafParams&, const TaafParams&) = default;
};

struct TaafNode {
  TaafParams params;
  std::string inner_id;
  FixedParamBinding inner_fixed;

  friend bool operator==(const TaafNode&, const TaafNode&) = default;
};

struct TaafGradient {
  double d_z = 0.0;
  double d_alpha = 0.0;
  double d_beta = 0.0;
  double d_gamma = 0.0;
  double d_delta = 0.0;

  friend bool operator==(const TaafGradient&, const TaafGradient&) = default;
};

// A validated node with its inner function resolved once.
class BoundTaaf {
 public:
  explicit BoundTaaf(const TaafNode& node)
      : params_(node.params), inner_(node.inner_id, node.inner_fixed) {
    if (!params_.finite()) throw InvalidArgumentError("TAAF parameters must be finite");
  }

  const TaafParams& params() const { return params_; }
  const BoundActivation& inner() const { return inner_; }

  double preactivation(double z) const { return params_.beta * z + params_.gamma; }

  double value(double z, numeric::Diagnostics* diag = nullptr) const {
    const double f = inner_.value(preactivation(z), diag);
    return numeric::saturate(params_.alpha * f + params_.delta, diag);
  }

  TaafGradient gradient(double z, numeric::Diagnostics* diag = nullptr) const {
    const double u = preactivation(z);
    const double f = inner_.value(u, diag);
    const double df = inner_.derivative(u, diag);
    const double a_df = params_.alpha * df;
    return TaafGradient{
        .d_z = numeric::saturate(a_df * params_.beta, diag),
        .d_alpha = f,
        .d_beta = numeric::saturate(a_df * z, diag),
        .d_gamma = a_df,
        .d_delta = 1.0,
    };
  }

  // Inner kinks mapped from u-space to z-space; empty when beta == 0.
  std::vector<double> kinks_in_z() const {
    std::vector<double> out;
    if (params_.beta == 0.0) return out;
    for (double k : inner_.kinks()) out.push_back((k - params_.gamma) / params_.beta);
    return out;
  }

 private:
  TaafParams params_;
  BoundActivation inner_;
};

inline double taaf_eval(const TaafNode& node, double z, numeric::Diagnostics* diag = nullptr) {
  detail::require_finite(z);
  return BoundTaaf(node).value(z, diag);
}

inline TaafGradient taaf_grad(const TaafNode& node, double z,
                              numeric::Diagnostics* diag = nullptr) {
  detail::require_finite(z);
  return BoundTaaf(node).gradient(z, diag);
}

// alpha * f(beta * sum_i w_i x_i + gamma) + delta
inline double preactivation(std::span<const double> weights, std::span<const double> inputs) {
  if (weights.size() != inputs.size() || weights.empty()) {
    throw InvalidArgumentError("weights and inputs must have the same non-zero length (" +
                               std::to_string(weights.size()) + " vs " +
                               std::to_string(inputs.size()) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * inputs[i];
  return s;
}

inline double neuron_forward(std::span<const double> weights, std::span<const double> inputs,
                             const TaafNode& node) {
  return taaf_eval(node, preactivation(weights, inputs));
}

// ---------------------------------------------------------------------------
// Composite units

enum class CompositeKind { sum, max, weighted_average };

inline std::string to_string(CompositeKind k) {
  switch (k) {
    case CompositeKind::sum:
      return "sum";
    case CompositeKind::max:
      return "max";
    case CompositeKind::weighted_average:
      return "weighted_average";
  }
  return "?";
}

inline CompositeKind composite_kind_from_string(const std::string& s) {
  if (s == "sum") return CompositeKind::sum;
  if (s == "max") return CompositeKind::max;
  if (s == "weighted_average") return CompositeKind::weighted_average;
  throw ParseError("unknown composite kind '" + s + "'");
}

struct CompositeNode {
  CompositeKind kind = CompositeKind::sum;
  std::vector<TaafNode> branches;
  std::vector<double> weights;  // weighted_average only

  friend bool operator==(const CompositeNode&, const CompositeNode&) = default;
};

struct CompositeGradient {
  std::vector<TaafGradient> branches;
  std::vector<double> d_weights;  // weighted_average only
  double d_z = 0.0;
  std::size_t active_branch = 0;  // max only
};

class BoundComposite {
 public:
  explicit BoundComposite(const CompositeNode& node) : kind_(node.kind), weights_(node.weights) {
    if (node.branches.empty()) throw InvalidArgumentError("composite needs at least one branch");
    if (kind_ == CompositeKind::max && node.branches.size() < 2) {
      throw InvalidArgumentError("max composite needs at least two branches");
    }
    if (kind_ == CompositeKind::weighted_average) {
      if (weights_.size() != node.branches.size()) {
        throw InvalidArgumentError("weighted_average needs one weight per branch");
      }
      weight_sum_ = 0.0;
      for (double w : weights_) {
        if (!std::isfinite(w)) throw InvalidArgumentError("weights must be finite");
        weight_sum_ += w;
      }
      if (weight_sum_ == 0.0) throw DivisionGuardError("weighted_average weights sum to zero");
    } else if (!weights_.empty()) {
      throw InvalidArgumentError("weights are only allowed for weighted_average");
    }
    branches_.reserve(node.branches.size());
    for (const auto& b : node.branches) branches_.emplace_back(b);
  }

  CompositeKind kind() const { return kind_; }
  const std::vector<BoundTaaf>& branches() const { return branches_; }
  std::span<const double> weights() const { return weights_; }

  double value(double z) const {
    switch (kind_) {
      case CompositeKind::sum: {
        double s = 0.0;
        for (const auto& b : branches_) s += b.value(z);
        return s;
      }
      case CompositeKind::max:
        return branches_[argmax(z)].value(z);
      case CompositeKind::weighted_average: {
        double s = 0.0;
        for (std::size_t j = 0; j < branches_.size(); ++j) s += weights_[j] * branches_[j].value(z);
        return s / weight_sum_;
      }
    }
    return 0.0;
  }

  // Lowest index wins ties.
  std::size_t argmax(double z) const {
    std::size_t best = 0;
    double best_v = branches_[0].value(z);
    for (std::size_t j = 1; j < branches_.size(); ++j) {
      const double v = branches_[j].value(z);
      if (v > best_v) {
        best_v = v;
        best = j;
      }
    }
    return best;
  }

  CompositeGradient gradient(double z) const {
    CompositeGradient g;
    g.branches.resize(branches_.size());
    switch (kind_) {
      case CompositeKind::sum:
        for (std::size_t j = 0; j < branches_.size(); ++j) {
          g.branches[j] = branches_[j].gradient(z);
          g.d_z += g.branches[j].d_z;
        }
        break;
      case CompositeKind::max: {
        g.active_branch = argmax(z);
        g.branches[g.active_branch] = branches_[g.active_branch].gradient(z);
        g.d_z = g.branches[g.active_branch].d_z;
        break;
      }
      case CompositeKind::weighted_average: {
        const double avg = value(z);
        g.d_weights.resize(branches_.size());
        for (std::size_t j = 0; j < branches_.size(); ++j) {
          const double scale = weights_[j] / weight_sum_;
          TaafGradient bg = branches_[j].gradient(z);
          bg.d_z *= scale;
          bg.d_alpha *= scale;
          bg.d_beta *= scale;
          bg.d_gamma *= scale;
          bg.d_delta *= scale;
          g.branches[j] = bg;
          g.d_z += bg.d_z;
          g.d_weights[j] = (branches_[j].value(z) - avg) / weight_sum_;
        }
        break;
      }
    }
    return g;
  }

 private:
  CompositeKind kind_;
  std::vector<double> weights_;
  double weight_sum_ = 0.0;
  std::vector<BoundTaaf> branches_;
};

inline double composite_eval(const CompositeNode& node, double z) {
  detail::require_finite(z);
  return BoundComposite(node).value(z);
}

inline CompositeGradient composite_grad(const CompositeNode& node, double z) {
  detail::require_finite(z);
  return BoundComposite(node).gradient(z);
}

}  // namespace taaf
