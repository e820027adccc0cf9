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

// Builders for published multi-branch units expressed over TAAF branches.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "taaf/error.hpp"
#include "taaf/taaf.hpp"

namespace taaf::templates {

namespace detail {
inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw InvalidArgumentError(std::string(what) + ": parameter lists differ in length");
}
inline TaafNode branch(double alpha, double beta, double gamma, double delta, std::string inner,
                       FixedParamBinding fixed = {}) {
  return TaafNode{{alpha, beta, gamma, delta}, std::move(inner), std::move(fixed)};
}
}  // namespace detail

// max_k (w_k z + b_k)
inline CompositeNode maxout(std::span<const double> w, std::span<const double> b) {
  detail::require_same_size(w.size(), b.size(), "maxout");
  CompositeNode n{CompositeKind::max, {}, {}};
  for (std::size_t k = 0; k < w.size(); ++k) {
    n.branches.push_back(detail::branch(w[k], 1.0, 0.0, b[k], "identity"));
  }
  return n;
}

// sum_j a_j g_j(z)
inline CompositeNode abu(std::span<const double> a, std::span<const std::string> inners) {
  detail::require_same_size(a.size(), inners.size(), "abu");
  CompositeNode n{CompositeKind::sum, {}, {}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    n.branches.push_back(detail::branch(a[j], 1.0, 0.0, 0.0, inners[j]));
  }
  return n;
}

// sum_j a_j g_j(z - b_j)
inline CompositeNode abu_bias(std::span<const double> a, std::span<const double> b,
                              std::span<const std::string> inners) {
  detail::require_same_size(a.size(), inners.size(), "abu_bias");
  detail::require_same_size(b.size(), inners.size(), "abu_bias");
  CompositeNode n{CompositeKind::sum, {}, {}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    n.branches.push_back(detail::branch(a[j], 1.0, -b[j], 0.0, inners[j]));
  }
  return n;
}

// (sum_j a_j g_j(z)) / (sum_j a_j)
inline CompositeNode apaf(std::span<const double> a, std::span<const std::string> inners) {
  detail::require_same_size(a.size(), inners.size(), "apaf");
  CompositeNode n{CompositeKind::weighted_average, {}, {a.begin(), a.end()}};
  for (const auto& g : inners) n.branches.push_back(detail::branch(1.0, 1.0, 0.0, 0.0, g));
  return n;
}

// relu(z) + sum_s a_s relu(-z + b_s), each hinge a TAAF over max(0, -z).
inline CompositeNode aplu(std::span<const double> a, std::span<const double> b) {
  detail::require_same_size(a.size(), b.size(), "aplu");
  CompositeNode n{CompositeKind::sum, {}, {}};
  n.branches.push_back(detail::branch(1.0, 1.0, 0.0, 0.0, "relu"));
  for (std::size_t s = 0; s < a.size(); ++s) {
    n.branches.push_back(detail::branch(a[s], 1.0, -b[s], 0.0, "neg_relu"));
  }
  return n;
}

// sum_j (a_j / sigma_j) phi((z - mu_j) / sigma_j)
inline CompositeNode mogu(std::span<const double> a, std::span<const double> mu,
                          std::span<const double> sigma) {
  detail::require_same_size(a.size(), mu.size(), "mogu");
  detail::require_same_size(a.size(), sigma.size(), "mogu");
  CompositeNode n{CompositeKind::sum, {}, {}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (sigma[j] == 0.0) throw DivisionGuardError("mogu: sigma must be non-zero");
    n.branches.push_back(
        detail::branch(a[j] / sigma[j], 1.0 / sigma[j], -mu[j] / sigma[j], 0.0, "gaussian_pdf"));
  }
  return n;
}

// sum_j g(exp(a_j) z + exp(b_j))
inline CompositeNode tca(std::span<const double> a, std::span<const double> b,
                         const std::string& inner) {
  detail::require_same_size(a.size(), b.size(), "tca");
  CompositeNode n{CompositeKind::sum, {}, {}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    n.branches.push_back(detail::branch(1.0, std::exp(a[j]), std::exp(b[j]), 0.0, inner));
  }
  return n;
}

// sum_j exp(a_j) g(exp(b_j) z + exp(c_j)) / sum_j exp(a_j)
inline CompositeNode tca_v2(std::span<const double> a, std::span<const double> b,
                            std::span<const double> c, const std::string& inner) {
  detail::require_same_size(a.size(), b.size(), "tca_v2");
  detail::require_same_size(a.size(), c.size(), "tca_v2");
  CompositeNode n{CompositeKind::weighted_average, {}, {}};
  for (std::size_t j = 0; j < a.size(); ++j) {
    n.weights.push_back(std::exp(a[j]));
    n.branches.push_back(detail::branch(1.0, std::exp(b[j]), std::exp(c[j]), 0.0, inner));
  }
  return n;
}

// a sin(b z) + c sigmoid(d z)
inline CompositeNode sls_ss(double a, double b, double c, double d) {
  return CompositeNode{CompositeKind::sum,
                       {detail::branch(a, b, 0.0, 0.0, "sin"),
                        detail::branch(c, d, 0.0, 0.0, "logistic_sigmoid")},
                       {}};
}

// softplus(a z) + z / b - ln 2
inline CompositeNode soft_pp(double a, double b) {
  if (b == 0.0) throw DivisionGuardError("soft_pp: b must be non-zero");
  return CompositeNode{CompositeKind::sum,
                       {detail::branch(1.0, a, 0.0, kSoftPlusPlusOffset, "softplus"),
                        detail::branch(1.0 / b, 1.0, 0.0, 0.0, "identity")},
                       {}};
}

// Two outputs from one preactivation: relu(a z - b), relu(c z - d).
inline std::array<TaafNode, 2> paired_relu(double a, double b, double c, double d) {
  return {detail::branch(1.0, a, -b, 0.0, "relu"), detail::branch(1.0, c, -d, 0.0, "relu")};
}

// K outputs f(z + b_k) from one preactivation.
inline std::vector<TaafNode> mba(std::span<const double> b, const std::string& inner = "relu") {
  std::vector<TaafNode> out;
  for (double bk : b) out.push_back(detail::branch(1.0, 1.0, bk, 0.0, inner));
  return out;
}

}  // namespace taaf::templates
