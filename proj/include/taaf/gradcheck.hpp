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

// Central finite-difference oracle for catalog derivatives and TAAF /
// composite partials. Failures are returned as data.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "taaf/catalog.hpp"
#include "taaf/error.hpp"
#include "taaf/format.hpp"
#include "taaf/taaf.hpp"

namespace taaf {

struct FdPolicy {
  // h = step_scale * max(1, |x|); the default is cbrt(machine epsilon).
  double step_scale = std::cbrt(std::numeric_limits<double>::epsilon());
  double kink_exclusion_radius = 1e-3;  // open ball; 0 disables exclusion
  double rel_tol = 1e-6;
  double abs_tol = 1e-8;

  double step(double x) const { return step_scale * std::max(1.0, std::abs(x)); }

  void validate() const {
    if (!(step_scale > 0) || !(kink_exclusion_radius >= 0) || !(rel_tol > 0) || !(abs_tol > 0)) {
      throw InvalidArgumentError("invalid finite-difference policy");
    }
  }

  // |analytic - numeric| <= max(abs_tol, rel_tol * max(1, |analytic|))
  bool accepts(double analytic, double numeric) const {
    const double err = std::abs(analytic - numeric);
    return err <= std::max(abs_tol, rel_tol * std::max(1.0, std::abs(analytic)));
  }
};

template <class F>
double central_diff(F&& f, double x, const FdPolicy& policy = {}) {
  if (!std::isfinite(x)) throw InvalidArgumentError("central_diff: x must be finite");
  const double h = policy.step(x);
  const double up = f(x + h);
  const double down = f(x - h);
  if (!std::isfinite(up) || !std::isfinite(down)) {
    throw NumericalError("central_diff: non-finite value at probe points around " +
                         format_double(x));
  }
  return (up - down) / (2.0 * h);
}

struct GradFailure {
  double z = 0.0;
  std::string partial;
  double analytic = 0.0;
  double numeric = 0.0;
  double error = 0.0;  // |analytic - numeric| / max(1, |analytic|)
};

struct GradReport {
  std::string subject;
  std::size_t points_checked = 0;
  std::size_t points_skipped = 0;
  std::vector<GradFailure> failures;
  bool passed = true;
};

struct CatalogSubject {
  std::string id;
  FixedParamBinding fixed;
};

using GradSubject = std::variant<CatalogSubject, TaafNode, CompositeNode>;

namespace detail {

class ReportBuilder {
 public:
  ReportBuilder(std::string subject, const FdPolicy& policy) : policy_(policy) {
    policy_.validate();
    report_.subject = std::move(subject);
  }

  void compare(double z, const char* partial, double analytic, double numeric) {
    if (!policy_.accepts(analytic, numeric)) {
      report_.failures.push_back(
          {z, partial, analytic, numeric,
           std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic))});
    }
  }

  // FD with non-finite probes reported as a failure instead of thrown.
  template <class F>
  void compare_fd(double z, const char* partial, double analytic, F&& f, double x) {
    try {
      compare(z, partial, analytic, central_diff(f, x, policy_));
    } catch (const NumericalError&) {
      report_.failures.push_back({z, partial, analytic, std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::infinity()});
    }
  }

  void checked() { ++report_.points_checked; }
  void skipped() { ++report_.points_skipped; }
  const FdPolicy& policy() const { return policy_; }

  GradReport finish() {
    std::stable_sort(report_.failures.begin(), report_.failures.end(),
                     [](const GradFailure& a, const GradFailure& b) { return a.z < b.z; });
    report_.passed = report_.failures.empty();
    return std::move(report_);
  }

 private:
  FdPolicy policy_;
  GradReport report_;
};

inline bool near_any(double x, std::span<const double> points, double radius) {
  return std::any_of(points.begin(), points.end(),
                     [&](double k) { return std::abs(x - k) < radius; });
}

inline std::string describe_node(const TaafNode& n) {
  return "taaf(" + format_double(n.params.alpha) + "," + format_double(n.params.beta) + "," +
         format_double(n.params.gamma) + "," + format_double(n.params.delta) + ";" + n.inner_id +
         ")";
}

// Evaluates `node` with one of its five slots replaced.
inline double taaf_with(const TaafNode& node, int slot, double v, double z) {
  TaafNode m = node;
  switch (slot) {
    case 0: m.params.alpha = v; break;
    case 1: m.params.beta = v; break;
    case 2: m.params.gamma = v; break;
    case 3: m.params.delta = v; break;
    default: break;
  }
  return BoundTaaf(m).value(z);
}

inline double slot_value(const TaafParams& p, int slot) {
  switch (slot) {
    case 0: return p.alpha;
    case 1: return p.beta;
    case 2: return p.gamma;
    default: return p.delta;
  }
}

inline double grad_slot(const TaafGradient& g, int slot) {
  switch (slot) {
    case 0: return g.d_alpha;
    case 1: return g.d_beta;
    case 2: return g.d_gamma;
    default: return g.d_delta;
  }
}

inline constexpr const char* kSlotNames[] = {"d_alpha", "d_beta", "d_gamma", "d_delta"};

}  // namespace detail

inline GradReport check(const CatalogSubject& subject, std::span<const double> grid,
                        const FdPolicy& policy = {}) {
  const BoundActivation f(subject.id, subject.fixed);
  const std::vector<double> kinks = f.fd_exclusions();
  detail::ReportBuilder rb(subject.id, policy);
  for (double z : grid) {
    if (detail::near_any(z, kinks, policy.kink_exclusion_radius)) {
      rb.skipped();
      continue;
    }
    rb.checked();
    rb.compare_fd(z, "d_z", f.derivative(z), [&](double x) { return f.value(x); }, z);
  }
  return rb.finish();
}

inline GradReport check(const TaafNode& node, std::span<const double> grid,
                        const FdPolicy& policy = {}) {
  const BoundTaaf g(node);
  const std::vector<double> kinks = g.inner().fd_exclusions();
  detail::ReportBuilder rb(detail::describe_node(node), policy);
  for (double z : grid) {
    if (node.params.beta == 0.0) {
      // Constant in z: only d_z = 0 is meaningful.
      rb.checked();
      rb.compare(z, "d_z", g.gradient(z).d_z, 0.0);
      continue;
    }
    if (detail::near_any(g.preactivation(z), kinks, policy.kink_exclusion_radius)) {
      rb.skipped();
      continue;
    }
    rb.checked();
    const TaafGradient an = g.gradient(z);
    rb.compare_fd(z, "d_z", an.d_z, [&](double x) { return g.value(x); }, z);
    for (int slot = 0; slot < 4; ++slot) {
      rb.compare_fd(z, detail::kSlotNames[slot], detail::grad_slot(an, slot),
                    [&](double v) { return detail::taaf_with(node, slot, v, z); },
                    detail::slot_value(node.params, slot));
    }
  }
  return rb.finish();
}

inline GradReport check(const CompositeNode& node, std::span<const double> grid,
                        const FdPolicy& policy = {}) {
  const BoundComposite comp(node);
  detail::ReportBuilder rb(to_string(node.kind) + "[" + std::to_string(node.branches.size()) + "]",
                           policy);
  std::vector<std::vector<double>> branch_kinks;
  for (const auto& b : comp.branches()) branch_kinks.push_back(b.inner().fd_exclusions());

  for (double z : grid) {
    bool skip = false;
    for (std::size_t j = 0; j < comp.branches().size() && !skip; ++j) {
      const auto& b = comp.branches()[j];
      skip = b.params().beta != 0.0 &&
             detail::near_any(b.preactivation(z), branch_kinks[j], policy.kink_exclusion_radius);
    }
    if (!skip && node.kind == CompositeKind::max) {
      // Crossover between the two largest branches is a kink of the max.
      std::vector<double> v;
      for (const auto& b : comp.branches()) v.push_back(b.value(z));
      std::sort(v.begin(), v.end(), std::greater<>());
      skip = v[0] - v[1] <= policy.kink_exclusion_radius;
    }
    if (skip) {
      rb.skipped();
      continue;
    }
    rb.checked();
    const CompositeGradient an = comp.gradient(z);
    rb.compare_fd(z, "d_z", an.d_z, [&](double x) { return comp.value(x); }, z);
    for (std::size_t j = 0; j < node.branches.size(); ++j) {
      for (int slot = 0; slot < 4; ++slot) {
        auto perturbed = [&](double v) {
          CompositeNode m = node;
          TaafParams& p = m.branches[j].params;
          (slot == 0 ? p.alpha : slot == 1 ? p.beta : slot == 2 ? p.gamma : p.delta) = v;
          return BoundComposite(m).value(z);
        };
        rb.compare_fd(z, detail::kSlotNames[slot], detail::grad_slot(an.branches[j], slot),
                      perturbed, detail::slot_value(node.branches[j].params, slot));
      }
      if (node.kind == CompositeKind::weighted_average) {
        auto perturbed = [&](double v) {
          CompositeNode m = node;
          m.weights[j] = v;
          return BoundComposite(m).value(z);
        };
        rb.compare_fd(z, "d_weight", an.d_weights[j], perturbed, node.weights[j]);
      }
    }
  }
  return rb.finish();
}

inline GradReport check(const GradSubject& subject, std::span<const double> grid,
                        const FdPolicy& policy = {}) {
  return std::visit([&](const auto& s) { return check(s, grid, policy); }, subject);
}

}  // namespace taaf
