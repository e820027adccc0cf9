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

// Scalar kernels shared by the catalog: overflow-safe logistic and softplus,
// a rational erf approximation with its exact derivative, and saturation.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace taaf::numeric {

inline constexpr double kMaxFinite = std::numeric_limits<double>::max();

// Collects saturation events. Owned by the caller, never shared implicitly.
struct Diagnostics {
  bool saturated = false;
  int saturation_count = 0;
};

// Clamps non-finite or out-of-range results to +-max finite.
// NaN is passed through untouched; it only arises from NaN inputs.
inline double saturate(double v, Diagnostics* diag) {
  if (std::isinf(v)) {
    if (diag != nullptr) {
      diag->saturated = true;
      ++diag->saturation_count;
    }
    return v > 0 ? kMaxFinite : -kMaxFinite;
  }
  return v;
}

// Logistic sigmoid, branch-wise so exp never sees a large positive argument.
inline double sigmoid(double z) {
  if (z >= 0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// ln(1 + e^z) = max(z, 0) + ln(1 + e^-|z|).
inline double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// Abramowitz & Stegun 7.1.26. Absolute error <= 1.5e-7 on the real line.
//   erf(x) ~= 1 - (a1 t + a2 t^2 + a3 t^3 + a4 t^4 + a5 t^5) exp(-x^2),
//   t = 1 / (1 + p x),  x >= 0,  extended as an odd function.
struct ErfApprox {
  static constexpr double kP = 0.3275911;
  static constexpr std::array<double, 5> kA = {
      0.254829592, -0.284496736, 1.421413741, -1.453152027, 1.061405429};
  static constexpr double kMaxAbsError = 1.5e-7;
};

inline double erf_approx(double x) {
  const double ax = std::abs(x);
  const double t = 1.0 / (1.0 + ErfApprox::kP * ax);
  const auto& a = ErfApprox::kA;
  const double poly = t * (a[0] + t * (a[1] + t * (a[2] + t * (a[3] + t * a[4]))));
  const double r = 1.0 - poly * std::exp(-ax * ax);
  return x < 0 ? -r : r;
}

// Derivative of erf_approx itself (not of the exact erf), so finite
// differences of the approximation agree with it to rounding.
inline double erf_approx_derivative(double x) {
  const double ax = std::abs(x);
  const double t = 1.0 / (1.0 + ErfApprox::kP * ax);
  const auto& a = ErfApprox::kA;
  const double poly = t * (a[0] + t * (a[1] + t * (a[2] + t * (a[3] + t * a[4]))));
  const double dpoly_dt =
      a[0] + t * (2 * a[1] + t * (3 * a[2] + t * (4 * a[3] + t * 5 * a[4])));
  const double dt_dx = -ErfApprox::kP * t * t;
  const double g = std::exp(-ax * ax);
  // d/dx [1 - P(t) g] for x >= 0; the odd extension has an even derivative.
  return -(dpoly_dt * dt_dx * g + poly * (-2.0 * ax) * g);
}

inline constexpr double kInvSqrt2 = 0.70710678118654752440;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

}  // namespace taaf::numeric
