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

// Independent checks that share no code path with the regularised sums:
// thermal potentials summed mode by mode over the discrete spectrum, exact
// mode counting against the smooth (Weyl) count, and quadrature of the two
// oscillatory Bose integrals behind the image representation.

#include <cstdint>
#include <vector>

#include "cavitherm/core.hpp"

namespace cavitherm::oracle {

struct DirectValue {
  double value = 0.0;
  // Rigorous bound on the modes above omega_max.
  double tail_bound = 0.0;
};

// Thermal (zero-point excluded) potentials of the discrete spectrum.
struct DirectThermal {
  DirectValue free_energy;
  DirectValue entropy;
  DirectValue energy;
  DirectValue specific_heat;
  std::int64_t modes = 0;
};

// omega_max must be at least 30 T, otherwise TailBoundTooLarge. T = 0
// returns zeros.
DirectThermal direct_thermal(double T, const CavityGeometry& geometry,
                             double omega_max);
DirectValue direct_thermal_free_energy(double T, const CavityGeometry& geometry,
                                       double omega_max);
double direct_entropy(double T, const CavityGeometry& geometry,
                      double omega_max);
double direct_energy(double T, const CavityGeometry& geometry,
                     double omega_max);

// Thermal potentials of the smooth density V w^2/pi^2 - L/(2 pi), i.e. the
// exact integrals the discrete spectrum approaches for large cavities.
struct SmoothThermal {
  double free_energy = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
};
SmoothThermal weyl_thermal(double T, const CavityGeometry& geometry);

// One route to a thermal quantity compared with the direct mode sum.
struct RouteComparison {
  double route = 0.0;
  double direct = 0.0;
  double abs_diff = 0.0;
  // abs_diff relative to |direct|.
  double rel_to_direct = 0.0;
  // abs_diff relative to the summed magnitudes of the route's pieces.
  double rel_to_terms = 0.0;
};

struct ComparisonReport {
  double T = 0.0;
  double xi = 0.0;
  DirectThermal direct;
  double casimir_energy = 0.0;
  double delta_free_energy = 0.0;
  double delta_entropy = 0.0;
  double delta_energy = 0.0;
  // Routes built on the closed-form large-cavity part used by thermo.
  RouteComparison free_energy_blackbody;
  RouteComparison entropy_blackbody;
  RouteComparison energy_blackbody;
  // Routes built on the smooth-density integrals, with the energy route
  // including the T/2 of the zero-frequency edge mode.
  RouteComparison free_energy_weyl;
  RouteComparison entropy_weyl;
  RouteComparison energy_weyl;
};

// omega_max <= 0 picks 40 T.
ComparisonReport compare_regularized(double T, const CavityGeometry& geometry,
                                     const CutoffConstants& cutoffs,
                                     const SumPolicy& policy,
                                     double omega_max = 0.0);

// Oscillatory Bose integrals by half-period panels with Wynn-epsilon
// acceleration of the panel sums:
//   int_0^inf sin(u w)/(e^{beta w} - 1) dw
//   int_0^inf w cos(u w)/(e^{beta w} - 1) dw
double appendix_integral_sin(double u, double beta);
double appendix_integral_omega_cos(double u, double beta);

// Closed forms. K selects the contour branch of the first integral; only
// K = 0 is a real integral, K = +-1 shift it by -+pi/(2 beta).
double appendix_sin_closed_form(double u, double beta, int K = 0);
double appendix_omega_cos_closed_form(double u, double beta);

// Weighted mode count N(omega) by a plain triple loop.
double brute_force_mode_count(const CavityGeometry& geometry, double omega);

// N(omega) - N_smooth(omega) sampled on [omega_lo, omega_hi].
struct WeylReport {
  int samples = 0;
  double mean_difference = 0.0;
  double mean_count = 0.0;
  // |mean_difference| / mean_count.
  double relative_drift = 0.0;
  double max_abs_difference = 0.0;
};
WeylReport weyl_check(const CavityGeometry& geometry, double omega_lo,
                      double omega_hi, int samples = 2000);

}  // namespace cavitherm::oracle
