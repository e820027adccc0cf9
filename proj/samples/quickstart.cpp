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

// Evaluate a TAAF, check its gradient, confirm one registry equivalence and
// recover planted parameters.

#include <cstdio>
#include <vector>

#include "taaf/gradcheck.hpp"
#include "taaf/registry.hpp"
#include "taaf/taaf.hpp"
#include "taaf/trainer.hpp"

int main() {
  const taaf::TaafNode node{{2.0, 3.0, 0.5, -1.0}, "logistic_sigmoid", {}};
  const auto g = taaf::taaf_grad(node, 1.0);
  std::printf("g(1) = %.17g\n", taaf::taaf_eval(node, 1.0));
  std::printf("d_z %.6g  d_alpha %.6g  d_beta %.6g  d_gamma %.6g  d_delta %.6g\n", g.d_z,
              g.d_alpha, g.d_beta, g.d_gamma, g.d_delta);

  const auto grid = taaf::standard_grid();
  std::printf("gradcheck: %s\n", taaf::check(node, grid).passed ? "passed" : "FAILED");

  const auto& sss = taaf::Registry::builtin().find("sss");
  const auto v = taaf::verify(sss, {{"a", 2.0}, {"b", 0.5}}, grid);
  std::printf("sss equivalence: max |diff| = %g\n", v.max_abs_diff);

  const std::vector<double> w{1.0};
  const auto data = taaf::generate_synthetic({{1.5, 0.8, -0.3, 0.25}, "tanh", {}}, w, 1024, 1, 0.0);
  taaf::TrainConfig cfg;
  cfg.epochs = 20000;
  cfg.init_weights = w;
  cfg.mask = taaf::TrainMask::params_only();
  const auto fit = taaf::fit(data, "tanh", cfg);
  const auto& p = fit.final_params;
  std::printf("recovered (%.4f, %.4f, %.4f, %.4f), mse %.3g\n", p.alpha, p.beta, p.gamma, p.delta,
              fit.loss_curve.back());
  return 0;
}
