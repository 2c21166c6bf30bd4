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
#pragma once

#include <cstdint>

#include "cavitherm/core.hpp"
#include "cavitherm/numeric.hpp"

namespace cavitherm::regularize {

// G(v0) = int_0^v0 g(v)/v dv + int_v0^inf (g(v) - 1)/v dv, the function
// whose roots fix the infrared cutoffs. Absolute accuracy 1e-11.
QuadratureResult G_detailed(double v0);
double G(double v0);

// The same integral by a different scheme (double-exponential rules on the
// raw integrands, no analytic splitting). Used only as a cross-check.
QuadratureResult G_alternate(double v0);

struct CutoffSolution {
  CutoffConstants cutoffs;
  std::int64_t g_evaluations = 0;
  double residual_V = 0.0;  // G(v_V)
  double residual_E = 0.0;  // G(v_E) + 1
};

// Roots of G = 0 (v_V) and G = -1 (v_E), refined by a bracketing,
// derivative-free method until |G - target| < tolerance.
CutoffSolution solve_cutoffs_detailed(double tolerance = 1e-10);
CutoffConstants solve_cutoffs(double tolerance = 1e-10);

// Step selectors, closed on the right: 1 for v >= threshold.
int K_V(double v, const CutoffConstants& c) noexcept;
int K_E(double v, const CutoffConstants& c) noexcept;

// Zero-temperature entropy implied by the cutoffs:
// -G(v_V)/4 - 3 (1 + G(v_E))/4, which vanishes for the solved constants.
double zero_temperature_entropy(const CutoffConstants& c);

}  // namespace cavitherm::regularize
