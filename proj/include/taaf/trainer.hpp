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

// Full-batch gradient descent on a single TAAF neuron, used to show that the
// four adaptive parameters can be recovered from data they generated.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taaf/catalog.hpp"
#include "taaf/error.hpp"
#include "taaf/format.hpp"
#include "taaf/rng.hpp"
#include "taaf/taaf.hpp"

namespace taaf {

struct Dataset {
  std::vector<std::vector<double>> inputs;
  std::vector<double> targets;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  // Set by generate_synthetic; ground truth for recovery checks.
  std::optional<TaafParams> planted;
  std::vector<double> planted_weights;

  std::size_t dim() const { return inputs.empty() ? 0 : inputs.front().size(); }

  void validate() const {
    if (inputs.empty() || inputs.size() != targets.size()) {
      throw InvalidArgumentError("dataset needs equally many inputs and targets, at least one");
    }
    if (!(noise_sigma >= 0)) throw InvalidArgumentError("noise_sigma must be >= 0");
    const std::size_t d = dim();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i].size() != d || d == 0) {
        throw InvalidArgumentError("dataset rows must share one non-zero dimension");
      }
      for (double x : inputs[i]) {
        if (!std::isfinite(x)) throw InvalidArgumentError("dataset inputs must be finite");
      }
      if (!std::isfinite(targets[i])) throw InvalidArgumentError("dataset targets must be finite");
    }
  }
};

// Inputs are drawn first, row-major, uniform on [-2, 2]; then one normal
// deviate per sample when noise_sigma > 0. See rng.hpp for the bit stream.
inline Dataset generate_synthetic(const TaafNode& target, std::span<const double> weights,
                                  std::size_t n, std::uint64_t seed, double noise_sigma) {
  if (n == 0) throw InvalidArgumentError("generate_synthetic: n must be >= 1");
  if (weights.empty()) throw InvalidArgumentError("generate_synthetic: weights must be non-empty");
  if (!(noise_sigma >= 0)) throw InvalidArgumentError("noise_sigma must be >= 0");
  const BoundTaaf node(target);
  SplitMix64 rng(seed);
  Dataset d;
  d.seed = seed;
  d.noise_sigma = noise_sigma;
  d.planted = target.params;
  d.planted_weights.assign(weights.begin(), weights.end());
  d.inputs.assign(n, std::vector<double>(weights.size()));
  for (auto& row : d.inputs) {
    for (double& x : row) x = rng.uniform(-2.0, 2.0);
  }
  d.targets.reserve(n);
  for (const auto& row : d.inputs) d.targets.push_back(node.value(preactivation(weights, row)));
  if (noise_sigma > 0) {
    for (double& y : d.targets) y += noise_sigma * rng.normal();
  }
  return d;
}

struct TrainMask {
  bool alpha = true;
  bool beta = true;
  bool gamma = true;
  bool delta = true;
  bool weights = true;

  static TrainMask params_only() { return {true, true, true, true, false}; }
};

struct TrainConfig {
  double learning_rate = 0.05;
  std::size_t epochs = 1000;
  TaafParams init = TaafParams::identity();
  // Empty: seeded uniform draw on [-1, 1] per weight.
  std::vector<double> init_weights;
  TrainMask mask;
  std::uint64_t seed = 0;
  double recovery_tolerance = 0.05;

  void validate() const {
    if (!(learning_rate > 0) || !std::isfinite(learning_rate)) {
      throw InvalidArgumentError("learning_rate must be finite and > 0");
    }
    if (!init.finite()) throw InvalidArgumentError("init parameters must be finite");
    if (!(recovery_tolerance >= 0)) throw InvalidArgumentError("recovery_tolerance must be >= 0");
  }
};

struct FitReport {
  TaafParams final_params;
  std::vector<double> final_weights;
  std::vector<double> loss_curve;
  bool recovered = false;
};

// Inner functions with f(-u) = -f(u); for these (a, b, c, d) and
// (-a, -b, -c, d) define the same TAAF.
inline bool is_odd_inner(std::string_view id) {
  static constexpr std::string_view odd[] = {"identity", "tanh", "sinh", "asinh", "sgn",
                                             "sin", "bipolar_sigmoid", "double_bipolar"};
  return std::find(std::begin(odd), std::end(odd), id) != std::end(odd);
}

// Planted-parameter recovery up to the odd-inner sign symmetry. When the
// weights were trained, beta is only identifiable through beta * w.
inline bool is_recovered(const TaafParams& got, std::span<const double> got_w,
                         const TaafParams& want, std::span<const double> want_w,
                         bool weights_trained, bool odd_inner, double tol) {
  auto matches = [&](double sign) {
    auto close = [&](double a, double b) { return std::abs(a - b) <= tol; };
    if (!close(got.alpha, sign * want.alpha) || !close(got.gamma, sign * want.gamma) ||
        !close(got.delta, want.delta)) {
      return false;
    }
    if (!weights_trained) return close(got.beta, sign * want.beta);
    if (got_w.size() != want_w.size()) return false;
    for (std::size_t k = 0; k < got_w.size(); ++k) {
      if (!close(got.beta * got_w[k], sign * want.beta * want_w[k])) return false;
    }
    return true;
  };
  return matches(1.0) || (odd_inner && matches(-1.0));
}

inline FitReport fit(const Dataset& data, std::string_view inner_id, const TrainConfig& config) {
  data.validate();
  config.validate();
  const std::size_t n = data.inputs.size();
  const std::size_t dim = data.dim();
  const BoundActivation f(inner_id, {});

  TaafParams p = config.init;
  std::vector<double> w = config.init_weights;
  if (w.empty()) {
    SplitMix64 rng(config.seed);
    w.resize(dim);
    for (double& wk : w) wk = rng.uniform(-1.0, 1.0);
  }
  if (w.size() != dim) throw InvalidArgumentError("init_weights must match the input dimension");

  FitReport report;
  report.loss_curve.reserve(config.epochs + 1);
  std::vector<double> gw(dim);
  const double scale = 2.0 / static_cast<double>(n);

  for (std::size_t epoch = 0;; ++epoch) {
    double loss = 0.0;
    double ga = 0.0, gb = 0.0, gc = 0.0, gd = 0.0;
    std::fill(gw.begin(), gw.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = data.inputs[i];
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += w[k] * x[k];
      const double u = p.beta * s + p.gamma;
      const double fu = f.value(u);
      const double r = p.alpha * fu + p.delta - data.targets[i];
      loss += r * r;
      const double back = r * p.alpha * f.derivative(u);
      ga += r * fu;
      gb += back * s;
      gc += back;
      gd += r;
      if (config.mask.weights) {
        for (std::size_t k = 0; k < dim; ++k) gw[k] += back * p.beta * x[k];
      }
    }
    loss /= static_cast<double>(n);
    if (!std::isfinite(loss)) {
      throw DivergenceError("training diverged at epoch " + std::to_string(epoch) +
                            " (loss not finite; try a smaller learning rate)");
    }
    report.loss_curve.push_back(loss);
    if (epoch == config.epochs) break;

    const double lr = config.learning_rate;
    if (config.mask.alpha) p.alpha -= lr * scale * ga;
    if (config.mask.beta) p.beta -= lr * scale * gb;
    if (config.mask.gamma) p.gamma -= lr * scale * gc;
    if (config.mask.delta) p.delta -= lr * scale * gd;
    if (config.mask.weights) {
      for (std::size_t k = 0; k < dim; ++k) w[k] -= lr * scale * gw[k];
    }
  }

  report.final_params = p;
  report.final_weights = w;
  if (data.planted) {
    report.recovered = is_recovered(p, w, *data.planted, data.planted_weights, config.mask.weights,
                                    is_odd_inner(inner_id), config.recovery_tolerance);
  }
  return report;
}

}  // namespace taaf
