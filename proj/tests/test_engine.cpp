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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "taaf/catalog.hpp"
#include "taaf/gradcheck.hpp"
#include "taaf/registry.hpp"
#include "taaf/taaf.hpp"
#include "taaf/trainer.hpp"

namespace {

using taaf::CompositeKind;
using taaf::CompositeNode;
using taaf::TaafNode;
using taaf::TaafParams;

TaafNode node(double a, double b, double c, double d, std::string inner,
              taaf::FixedParamBinding fixed = {}) {
  return TaafNode{{a, b, c, d}, std::move(inner), std::move(fixed)};
}

const std::vector<double>& grid() {
  static const std::vector<double> g = taaf::standard_grid();
  return g;
}

TEST(TaafEval, Examples) {
  EXPECT_EQ(taaf::taaf_eval(node(1, 1, 0, 0, "relu"), 3.0), 3.0);
  EXPECT_EQ(taaf::taaf_eval(node(2, 1, 0, 5, "relu"), -4.0), 5.0);
  EXPECT_EQ(taaf::taaf_eval(node(1, 2, -1, 0, "tanh"), 0.5), 0.0);
}

TEST(TaafEval, InvalidNodes) {
  EXPECT_THROW(taaf::taaf_eval(node(NAN, 1, 0, 0, "relu"), 1.0), taaf::InvalidArgumentError);
  EXPECT_THROW(taaf::taaf_eval(node(1, INFINITY, 0, 0, "relu"), 1.0), taaf::InvalidArgumentError);
  EXPECT_THROW(taaf::taaf_eval(node(1, 1, 0, 0, "nope"), 1.0), taaf::UnknownIdError);
  EXPECT_THROW(taaf::taaf_eval(node(1, 1, 0, 0, "relu"), NAN), taaf::InvalidArgumentError);
}

TEST(TaafGrad, Examples) {
  const auto g = taaf::taaf_grad(node(1, 1, 0, 0, "relu"), 3.0);
  EXPECT_EQ(g, (taaf::TaafGradient{1, 3, 3, 1, 1}));
  const auto t = taaf::taaf_grad(node(1, 1, 0, 0, "tanh"), 0.0);
  EXPECT_EQ(t, (taaf::TaafGradient{1, 0, 0, 1, 1}));
}

// Chain rule expanded by hand and evaluated in mpmath at 40 digits for
// ((2, 3, 0.5, -1), logistic_sigmoid).
TEST(TaafGrad, HandExpandedChainRule) {
  struct Row {
    double z, val, dz, da, db, dc;
  };
  const Row rows[] = {
      {1.0, 0.94137553849728736227, 0.17071814327841335904, 0.97068776924864368113,
       0.056906047759471119679, 0.056906047759471119679},
      {-0.7, -0.66403677026784896368, 0.83858275159836596781, 0.16798161486607551816,
       -0.19566930870628539249, 0.27952758386612198927},
      {0.2, 0.50052021119023520842, 1.1242192772851235185, 0.75026010559511760421,
       0.074947951819008234565, 0.37473975909504117282},
  };
  const TaafNode n = node(2, 3, 0.5, -1, "logistic_sigmoid");
  for (const auto& r : rows) {
    const auto g = taaf::taaf_grad(n, r.z);
    EXPECT_NEAR(taaf::taaf_eval(n, r.z), r.val, 1e-15) << r.z;
    EXPECT_NEAR(g.d_z, r.dz, 1e-15) << r.z;
    EXPECT_NEAR(g.d_alpha, r.da, 1e-15) << r.z;
    EXPECT_NEAR(g.d_beta, r.db, 1e-15) << r.z;
    EXPECT_NEAR(g.d_gamma, r.dc, 1e-15) << r.z;
    EXPECT_EQ(g.d_delta, 1.0);
  }
  EXPECT_TRUE(taaf::check(n, grid()).passed);
}

TEST(TaafGrad, DeltaPartialIsOne) {
  for (const auto& e : taaf::catalog_entries()) {
    const TaafNode n = node(-0.7, 1.3, 0.2, 4.0, e.descriptor.id);
    for (double z : {-2.0, 0.3, 1.7}) EXPECT_EQ(taaf::taaf_grad(n, z).d_delta, 1.0);
  }
}

TEST(TaafGrad, ZeroBetaIsConstant) {
  const TaafNode n = node(2, 0, 0.5, -1, "tanh");
  const auto g = taaf::taaf_grad(n, 3.0);
  EXPECT_EQ(g.d_z, 0.0);
  EXPECT_EQ(g.d_beta, 2.0 * (1.0 - std::tanh(0.5) * std::tanh(0.5)) * 3.0);
  EXPECT_EQ(taaf::taaf_eval(n, -4.0), taaf::taaf_eval(n, 4.0));
  EXPECT_TRUE(taaf::BoundTaaf(n).kinks_in_z().empty());
  EXPECT_TRUE(taaf::check(n, grid()).passed);
}

TEST(TaafGrad, KinksMapThroughPreactivation) {
  const taaf::BoundTaaf g(node(1, 2, -1, 0, "hard_tanh"));
  EXPECT_EQ(g.kinks_in_z(), (std::vector<double>{0.0, 1.0}));
}

TEST(TaafInvariants, IdentityReduction) {
  double worst = 0.0;
  for (const auto& e : taaf::catalog_entries()) {
    for (double z : grid()) {
      const double d = std::abs(taaf::taaf_eval(node(1, 1, 0, 0, e.descriptor.id), z) -
                                taaf::eval(e.descriptor.id, {}, z));
      worst = std::max(worst, d);
    }
  }
  EXPECT_LE(worst, 1e-15);
}

TEST(TaafInvariants, DeltaShift) {
  for (const char* id : {"tanh", "logistic_sigmoid", "relu", "sin", "hard_tanh", "gauss_exp"}) {
    for (double z : grid()) {
      const double base = taaf::taaf_eval(node(1.3, -0.6, 0.25, 0.5, id), z);
      const double shifted = taaf::taaf_eval(node(1.3, -0.6, 0.25, 0.5 + 2.25, id), z);
      EXPECT_NEAR(shifted, base + 2.25, 1e-15) << id << " " << z;
    }
  }
}

TEST(TaafInvariants, AlphaScaling) {
  for (const auto& e : taaf::catalog_entries()) {
    for (double z : grid()) {
      const double one = taaf::taaf_eval(node(0.75, 0.9, -0.2, 0, e.descriptor.id), z);
      const double two = taaf::taaf_eval(node(1.5, 0.9, -0.2, 0, e.descriptor.id), z);
      EXPECT_NEAR(two, 2.0 * one, 1e-13 * std::max(1.0, std::abs(two))) << e.descriptor.id;
    }
  }
}

TEST(TaafInvariants, OddInnerSymmetry) {
  for (const char* id :
       {"tanh", "sinh", "sin", "identity", "sgn", "asinh", "bipolar_sigmoid", "double_bipolar"}) {
    ASSERT_TRUE(taaf::is_odd_inner(id)) << id;
    for (double z : grid()) {
      const double a = taaf::taaf_eval(node(1.5, 0.8, -0.3, 0.25, id), z);
      const double b = taaf::taaf_eval(node(-1.5, -0.8, 0.3, 0.25, id), z);
      EXPECT_NEAR(a, b, 1e-13) << id << " " << z;
    }
  }
  EXPECT_FALSE(taaf::is_odd_inner("relu"));
  EXPECT_FALSE(taaf::is_odd_inner("logistic_sigmoid"));
}

TEST(Neuron, Examples) {
  const std::vector<double> w1{1.0}, x1{2.0};
  EXPECT_EQ(taaf::neuron_forward(w1, x1, node(1, 1, 0, 0, "relu")), 2.0);

  const TaafNode n = node(1.2, 0.7, 0.4, -0.3, "softplus");
  const std::vector<double> w2{1.0, -1.0}, x2{3.0, 3.0};
  EXPECT_EQ(taaf::neuron_forward(w2, x2, n), taaf::taaf_eval(n, 0.0));

  const std::vector<double> w3{0.5, 0.5}, x3{1.0, 3.0};
  // mpmath: 2 tanh(2) + 1 = 2.9280551601516337679
  EXPECT_NEAR(taaf::neuron_forward(w3, x3, node(2, 1, 0, 1, "tanh")), 2.9280551601516337679,
              4e-16);
}

TEST(Neuron, LengthMismatch) {
  const std::vector<double> w{1.0, 2.0}, x{1.0};
  EXPECT_THROW(taaf::neuron_forward(w, x, node(1, 1, 0, 0, "relu")),
               taaf::InvalidArgumentError);
  const std::vector<double> empty;
  EXPECT_THROW(taaf::preactivation(empty, empty), taaf::InvalidArgumentError);
}

CompositeNode abs_node() {
  return CompositeNode{CompositeKind::max,
                       {node(1, 1, 0, 0, "identity"), node(-1, 1, 0, 0, "identity")},
                       {}};
}

TEST(Composite, MaxIsAbsExactly) {
  EXPECT_EQ(taaf::composite_eval(abs_node(), -2.0), 2.0);
  for (double z : grid()) EXPECT_EQ(taaf::composite_eval(abs_node(), z), std::abs(z));
}

TEST(Composite, MaxGradientAndTies) {
  const auto g3 = taaf::composite_grad(abs_node(), 3.0);
  EXPECT_EQ(g3.active_branch, 0u);
  EXPECT_EQ(g3.d_z, 1.0);
  EXPECT_EQ(g3.branches[1], taaf::TaafGradient{});
  const auto gm = taaf::composite_grad(abs_node(), -3.0);
  EXPECT_EQ(gm.active_branch, 1u);
  EXPECT_EQ(gm.d_z, -1.0);
  const auto g0 = taaf::composite_grad(abs_node(), 0.0);
  EXPECT_EQ(g0.active_branch, 0u);
  EXPECT_EQ(g0.d_z, 1.0);
}

TEST(Composite, MaxDominance) {
  const CompositeNode n{CompositeKind::max,
                        {node(1, 1, 0, 0, "tanh"), node(0.5, 2, 0.1, 0.2, "sin"),
                         node(-1, 0.3, 0, 0.4, "softplus")},
                        {}};
  const taaf::BoundComposite c(n);
  for (double z : grid()) {
    const double v = c.value(z);
    for (const auto& b : c.branches()) EXPECT_GE(v, b.value(z));
  }
}

TEST(Composite, SumWithZeroAlphaIsZero) {
  const CompositeNode n{CompositeKind::sum,
                        {node(0, 1, 0, 0, "tanh"), node(0, 2, 1, 0, "exp_minus_one"),
                         node(0, -1, 0, 0, "relu")},
                        {}};
  for (double z : grid()) EXPECT_EQ(taaf::composite_eval(n, z), 0.0);
}

TEST(Composite, AverageOfIdenticalBranches) {
  const TaafNode b = node(1.5, 0.8, -0.3, 0.25, "tanh");
  const CompositeNode n{CompositeKind::weighted_average, {b, b}, {1.0, 1.0}};
  for (double z : grid()) {
    EXPECT_EQ(taaf::composite_eval(n, z), taaf::taaf_eval(b, z));
    EXPECT_NEAR(taaf::composite_grad(n, z).d_z, taaf::taaf_grad(b, z).d_z, 1e-15);
  }
}

TEST(Composite, WeightedAverageWeightPartials) {
  const CompositeNode n{CompositeKind::weighted_average,
                        {node(1, 1, 0, 0, "tanh"), node(2, 1, 0, 1, "relu")},
                        {0.25, 0.75}};
  // v = (tanh(1), 3), W = 1, avg = 0.25 tanh(1) + 2.25; d/dw_j = (v_j - avg) / W
  const auto g = taaf::composite_grad(n, 1.0);
  const double avg = 0.25 * std::tanh(1.0) + 2.25;
  EXPECT_NEAR(taaf::composite_eval(n, 1.0), avg, 1e-15);
  EXPECT_NEAR(g.d_weights[0], std::tanh(1.0) - avg, 1e-15);
  EXPECT_NEAR(g.d_weights[1], 3.0 - avg, 1e-15);
  EXPECT_NEAR(g.branches[1].d_delta, 0.75, 1e-15);
  EXPECT_TRUE(taaf::check(n, grid()).passed);
}

TEST(Composite, Validation) {
  const TaafNode b = node(1, 1, 0, 0, "tanh");
  EXPECT_THROW(taaf::BoundComposite(CompositeNode{CompositeKind::sum, {}, {}}),
               taaf::InvalidArgumentError);
  EXPECT_THROW(taaf::BoundComposite(CompositeNode{CompositeKind::max, {b}, {}}),
               taaf::InvalidArgumentError);
  EXPECT_THROW(taaf::BoundComposite(CompositeNode{CompositeKind::weighted_average, {b, b}, {1}}),
               taaf::InvalidArgumentError);
  EXPECT_THROW(
      taaf::BoundComposite(CompositeNode{CompositeKind::weighted_average, {b, b}, {1, -1}}),
      taaf::DivisionGuardError);
  EXPECT_THROW(taaf::BoundComposite(CompositeNode{CompositeKind::sum, {b}, {1}}),
               taaf::InvalidArgumentError);
}

TEST(Composite, KindNames) {
  for (auto k : {CompositeKind::sum, CompositeKind::max, CompositeKind::weighted_average}) {
    EXPECT_EQ(taaf::composite_kind_from_string(taaf::to_string(k)), k);
  }
  EXPECT_THROW(taaf::composite_kind_from_string("min"), taaf::ParseError);
}

}  // namespace
