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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "taaf/registry.hpp"

namespace {

using taaf::FixedParamBinding;

const taaf::EquivalenceRecord& rec(const char* name) { return taaf::Registry::builtin().find(name); }

const std::vector<double>& grid() {
  static const std::vector<double> g = taaf::standard_grid();
  return g;
}

TEST(Registry, StandardGrid) {
  const auto& g = grid();
  ASSERT_EQ(g.size(), 201u);
  EXPECT_EQ(g.front(), -5.0);
  EXPECT_EQ(g.back(), 5.0);
  EXPECT_EQ(g[100], 0.0);
  EXPECT_EQ(g[101], 0.05);
}

TEST(Registry, ListingOrderAndCounts) {
  const auto all = taaf::list_records();
  EXPECT_GE(all.size(), 50u);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(),
                             [](const auto& a, const auto& b) { return a.name < b.name; }));
  std::set<std::string> disputed;
  for (const auto& r : taaf::list_records(true)) disputed.insert(r.name);
  EXPECT_TRUE(disputed.contains("adaptive_slope_tanh"));
  EXPECT_TRUE(disputed.contains("pfts"));
  const auto clean = taaf::list_records(false);
  EXPECT_GE(clean.size(), 48u);
  EXPECT_EQ(clean.size() + disputed.size(), all.size());
  for (const auto& r : clean) EXPECT_FALSE(disputed.contains(r.name));
}

TEST(Registry, RequiredNamesPresent) {
  for (const char* n :
       {"scaled_tanh", "e_tanh", "sss", "vsf", "slrelu", "e_swish", "sgelu", "comb_h_sine", "drlu",
        "drelu", "disrelu", "fts", "psoftplus", "frelu", "shilu", "abrelu", "pprelu", "plogish",
        "aoaf", "lelelu", "rmaf", "rsign", "paired_relu_1", "paired_relu_2", "mba_1", "mba_2",
        "shelu", "svelu", "pshelu", "psvelu", "sh_hardtanh", "sv_hardtanh", "pfelu",
        "adaptive_hardtanh", "shape_autotuning_sigmoid", "generalized_tanh",
        "trainable_amplitude", "slope_varying", "svaf", "assf", "psigmoid", "swish", "ahaf",
        "adaptive_slope_tanh", "pstanh", "ssinh", "sexp", "pfts", "parameterized_softplus",
        "scaled_logistic_sigmoid", "erturul_af1", "erturul_af2", "erturul_af3", "erturul_af4"}) {
    EXPECT_NO_THROW(rec(n)) << n;
  }
  EXPECT_THROW(rec("erturul_af5"), taaf::UnknownIdError);
}

TEST(Registry, RecordsAreWellFormed) {
  for (const auto& r : taaf::list_records()) {
    EXPECT_TRUE(taaf::has_entry(r.inner_id)) << r.name;
    EXPECT_NO_THROW(taaf::find_direct(r.direct_id)) << r.name;
    EXPECT_FALSE(r.anchor.empty()) << r.name;
    std::set<std::string> refs;
    for (const auto* e : {&r.alpha, &r.beta, &r.gamma, &r.delta}) e->collect_refs(refs);
    for (const auto& [k, e] : r.inner_fixed) e.collect_refs(refs);
    for (const auto& name : refs) EXPECT_TRUE(r.param_domains.contains(name)) << r.name << " " << name;
  }
}

TEST(Registry, InstantiateExamples) {
  const auto sss = taaf::instantiate(rec("sss"), {{"a", 2.0}, {"b", 0.5}});
  EXPECT_EQ(sss.params, (taaf::TaafParams{1, 2, -1, 0}));
  EXPECT_EQ(sss.inner_id, "logistic_sigmoid");
  const auto dis = taaf::instantiate(rec("disrelu"), {{"a", 1.0}});
  EXPECT_EQ(dis.params, (taaf::TaafParams{1, 1, 1, -1}));
  EXPECT_EQ(dis.inner_id, "relu");
  EXPECT_THROW(taaf::instantiate(rec("pshelu"), {{"a", 1.0}, {"b", 0.0}, {"c", 1.0}}),
               taaf::DivisionGuardError);
}

TEST(Registry, BindingValidation) {
  EXPECT_THROW(taaf::instantiate(rec("sss"), {{"a", 2.0}}), taaf::DomainError);
  EXPECT_THROW(taaf::instantiate(rec("sss"), {{"a", 2.0}, {"b", 1.0}, {"z", 1.0}}),
               taaf::DomainError);
  EXPECT_THROW(taaf::instantiate(rec("parameterized_softplus"), {{"a", 1.5}}), taaf::DomainError);
  EXPECT_NO_THROW(taaf::instantiate(rec("parameterized_softplus"), {{"a", 1.0}}));
  EXPECT_THROW(taaf::instantiate(rec("shape_autotuning_sigmoid"), {{"a", -1.0}}),
               taaf::DomainError);
}

TEST(Registry, VerifyExamples) {
  const auto dis = taaf::verify(rec("disrelu"), {{"a", 1.0}}, grid());
  EXPECT_EQ(dis.max_abs_diff, 0.0);
  EXPECT_EQ(dis.points_skipped, 1u);  // z = -1 is the kink
  EXPECT_LE(taaf::verify(rec("fts"), {{"T", -0.2}}, grid()).max_abs_diff, 1e-15);
  const auto sg = taaf::verify(rec("sgelu"), {{"a", 2.0}}, grid());
  EXPECT_LE(sg.max_abs_diff, 1e-6);
  EXPECT_EQ(taaf::equivalence_tolerance(rec("sgelu")), 1e-6);
  EXPECT_EQ(taaf::equivalence_tolerance(rec("sss")), 1e-12);
}

// a z erf(z / sqrt 2) with the library erf versus std::erf: the approximation
// bound carries through (measured 8.44e-7 against an mpmath oracle).
TEST(Registry, SgeluAgainstExactErf) {
  const auto node = taaf::instantiate(rec("sgelu"), {{"a", 2.0}});
  double worst = 0.0;
  for (double z : grid()) {
    worst = std::max(worst,
                     std::abs(taaf::taaf_eval(node, z) - 2.0 * z * std::erf(z / std::sqrt(2.0))));
  }
  EXPECT_LE(worst, 1e-6);
  EXPECT_NEAR(worst, 8.44e-7, 0.01e-7);
}

TEST(Registry, SeededBindingsAreDeterministicAndInDomain) {
  for (const auto& r : taaf::list_records()) {
    const auto a = taaf::seeded_bindings(r, 2024);
    const auto b = taaf::seeded_bindings(r, 2024);
    EXPECT_EQ(a, b);
    ASSERT_EQ(a.size(), 3u);
    for (const auto& binding : a) {
      EXPECT_NO_THROW(taaf::check_binding(r, binding)) << r.name;
      for (const auto& [k, v] : binding) {
        EXPECT_GE(std::abs(v), 1e-3);
        EXPECT_LE(std::abs(v), 3.0);
      }
    }
    if (!r.param_domains.empty()) {
      EXPECT_NE(a[0], a[1]) << r.name;
    }
  }
  EXPECT_NE(taaf::seeded_bindings(rec("sss"), 1), taaf::seeded_bindings(rec("sss"), 2));
}

TEST(Registry, EveryNonDisputedRecordVerifies) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& r : taaf::list_records(false)) {
    for (const auto& b : taaf::seeded_bindings(r, 2024)) {
      const auto v = taaf::verify(r, b, grid());
      EXPECT_LE(v.max_abs_diff, taaf::equivalence_tolerance(r)) << r.name << " worst z " << v.worst_z;
      EXPECT_GT(v.points_checked, 190u) << r.name;
    }
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
}

// Printed parameterizations are kept as printed; they do not match.
TEST(Registry, DisputedRecordsAreReportedNotFixed) {
  for (const auto& r : taaf::list_records(true)) {
    const auto b = taaf::seeded_bindings(r, 2024).front();
    EXPECT_GT(taaf::verify(r, b, grid()).max_abs_diff, 0.1) << r.name;
  }
  EXPECT_EQ(rec("adaptive_slope_tanh").gamma.to_string(), "1");
  EXPECT_EQ(rec("adaptive_slope_tanh").delta.to_string(), "1");
  EXPECT_EQ(rec("pfts").gamma.to_string(), "1");
}

TEST(Registry, SwishFollowsThePrintedBinding) {
  const auto& r = rec("swish");
  EXPECT_FALSE(r.disputed);
  EXPECT_EQ(r.inner_id, "silu");
  EXPECT_EQ(r.beta.to_string(), "a");
  EXPECT_FALSE(r.notes.empty());
  // a z sigmoid(a z), not z sigmoid(a z)
  const auto n = taaf::instantiate(r, {{"a", 2.0}});
  EXPECT_NEAR(taaf::taaf_eval(n, 1.0), 2.0 / (1.0 + std::exp(-2.0)), 1e-15);
}

// Two distinct bindings give two distinct nodes.
TEST(Registry, InstantiateIsInjective) {
  for (const auto& r : taaf::list_records()) {
    if (r.param_domains.empty()) continue;
    const auto b = taaf::seeded_bindings(r, 99, 2);
    EXPECT_FALSE(taaf::instantiate(r, b[0]) == taaf::instantiate(r, b[1])) << r.name;
  }
}

TEST(Registry, DuplicateNamesRejected) {
  auto records = taaf::list_records();
  records.push_back(records.front());
  EXPECT_THROW(taaf::Registry(std::move(records)), taaf::InvalidArgumentError);
}

}  // namespace
