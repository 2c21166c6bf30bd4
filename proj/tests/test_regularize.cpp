/*
 * Copyright 2026 The cavitherm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "cavitherm/regularize.hpp"

using namespace cavitherm;
using namespace cavitherm::regularize;

namespace {
// Euler's constant. The cutoff function reduces to G(v) = ln(v e^gamma / pi),
// so its roots are pi e^-gamma and pi e^-(gamma+1).
constexpr double kEulerGamma = 0.57721566490153286061;
const double kVV = kPi * std::exp(-kEulerGamma);
const double kVE = kVV / std::exp(1.0);
}  // namespace

TEST_CASE("G against its logarithmic closed form") {
  for (double v : {0.05, 0.3, 0.64889408, 1.0, 1.7638769, 3.0, 6.0}) {
    CAPTURE(v);
    CHECK(std::abs(G(v) - std::log(v / kVV)) < 1e-10);
  }
}

TEST_CASE("the two quadrature schemes for G agree") {
  for (double v : {0.1, 0.9, 2.5, 5.0}) {
    CAPTURE(v);
    const auto a = G_detailed(v);
    const auto b = G_alternate(v);
    CHECK(std::abs(a.value - b.value) < 1e-10);
    CHECK(a.error_estimate < 1e-11);
  }
}

TEST_CASE("cutoff constants") {
  const auto t0 = std::chrono::steady_clock::now();
  const CutoffSolution s = solve_cutoffs_detailed(1e-10);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(seconds < 1.0);
  CHECK(std::abs(s.cutoffs.v_V - 1.763876988) < 1e-8);
  CHECK(std::abs(s.cutoffs.v_E - 0.64889408) < 1e-8);
  CHECK(std::abs(s.cutoffs.v_V - kVV) < 1e-10);
  CHECK(std::abs(s.cutoffs.v_E - kVE) < 1e-10);
  CHECK(std::abs(s.residual_V) < 1e-10);
  CHECK(std::abs(s.residual_E) < 1e-10);
  CHECK(s.g_evaluations > 0);
  CHECK(std::abs(zero_temperature_entropy(s.cutoffs)) < 1e-10);

  const CutoffConstants c = solve_cutoffs();
  CHECK(c.v_V == s.cutoffs.v_V);
  CHECK(c.v_E == s.cutoffs.v_E);
}

TEST_CASE("step selectors are closed on the right") {
  const CutoffConstants c{kVV, kVE};
  CHECK(K_V(kVV, c) == 1);
  CHECK(K_V(std::nextafter(kVV, 0.0), c) == 0);
  CHECK(K_E(kVE, c) == 1);
  CHECK(K_E(0.5 * kVE, c) == 0);
  CHECK(K_E(10.0, c) == 1);
}

TEST_CASE("misplaced cutoffs leave residual zero-temperature entropy") {
  CHECK(zero_temperature_entropy({1.0, kVE}) ==
        doctest::Approx(-std::log(1.0 / kVV) / 4.0).epsilon(1e-8));
  CHECK(std::abs(zero_temperature_entropy({kVV, 1.0})) > 0.1);
}
