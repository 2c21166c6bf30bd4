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

// Imaginary-frequency (Matsubara) representation of the thermal correction
// and the diagnostics built on it. None of these values feed the thermo
// module: the double sums are formally divergent and are studied only
// through their growth with the truncation.
//
// With c_k = k/T the representation used here is
//
//   dF_M = -(2V/pi^2) sum'_n sum_k 1/(c_k^2 + u_n^2)^2
//          + sum_axes (a/(2 pi)) sum'_{n in Z} sum_k 1/(c_k^2 + u_n^2),
//
// whose coefficients follow from the real-frequency density after the
// rotation to imaginary frequency.

#include <cstdint>
#include <utility>
#include <vector>

#include "cavitherm/core.hpp"

namespace cavitherm::matsubara {

// Partial values of a truncated, divergent quantity together with the
// least-squares fit value ~ c0 + c1 ln(truncation).
struct DivergenceDiagnostic {
  std::vector<std::pair<double, double>> partial_values;  // (truncation, value)
  double c0 = 0.0;
  double c1 = 0.0;
  // Largest |value - fit| over the points.
  double fit_residual = 0.0;
  // max(value) - min(value).
  double spread = 0.0;
};

DivergenceDiagnostic log_fit(std::vector<std::pair<double, double>> points);

struct MatsubaraDiagnostic {
  // Truncation is the number of Matsubara frequencies k_max/4, k_max/2,
  // k_max; every lattice sum is converged at fixed k.
  DivergenceDiagnostic edge;
  DivergenceDiagnostic volume;
  DivergenceDiagnostic total;
};

MatsubaraDiagnostic delta_f_matsubara(double T, const CavityGeometry& geometry,
                                      int k_max, const SumPolicy& policy);

// One level of the decomposition check
//   dF = dE0 + dF_M + T ln(mu / sqrt(2 pi) T)
// with dF_M and the step-correction sums truncated jointly: images with
// u < U and Matsubara frequencies k <= k. The lattice radius is tied to the
// frequency count as U proportional to sqrt(k), so the frequency
// truncation error (about U T^2/k) vanishes along the sequence.
struct RelationLevel {
  int k = 0;
  double U = 0.0;
  double lhs = 0.0;  // regularised dF
  double casimir = 0.0;
  double matsubara_volume = 0.0;
  double matsubara_edge = 0.0;
  double correction_volume = 0.0;
  double correction_edge = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
};

struct RelationReport {
  std::vector<RelationLevel> levels;
  // |residual| at the largest truncation divided by that at the smallest.
  double residual_ratio = 0.0;
  // Fit of the two step-correction sums alone against ln U.
  DivergenceDiagnostic corrections;
};

// U_top <= 0 picks max(8 u_V, 5 a_max sqrt(k_max)).
RelationReport relation_check(double T, const CavityGeometry& geometry,
                              const CutoffConstants& cutoffs,
                              const SumPolicy& policy, int k_max,
                              double U_top = 0.0);

// Step-correction sums, both truncated at image length U:
//   volume: (V T/(2 pi)) sum'_{u_V <= u_n < U} 1/u_n^3
//   edge:  -(T/4) sum_axes sum_{n >= 1, u_E <= u_n < U} 1/n
struct CorrectionSums {
  double volume = 0.0;
  double edge = 0.0;
};
CorrectionSums correction_sums(double T, const CavityGeometry& geometry,
                               const CutoffConstants& cutoffs, double U);

// ln(mu / (sqrt(2 pi) T)) = (volume + edge correction)/T at truncations
// U/4, U/2, U, with separate fits of the two pieces. A formally divergent
// diagnostic.
struct ScaleFactorDiagnostic {
  DivergenceDiagnostic total;
  DivergenceDiagnostic volume;
  DivergenceDiagnostic edge;
};
ScaleFactorDiagnostic scale_factor_mu(double T, const CavityGeometry& geometry,
                                      const CutoffConstants& cutoffs,
                                      double truncation);

// Massive-photon free energy (volume part only),
//   -(V m^2/(4 pi^2)) sum_k sum'_n K2((m/2) s) / s^2,  s^2 = (k/T)^2 + u_n^2.
// The frequency sum is outermost and stops once a term is below rel_tol of
// the running total, or at k_max.
double delta_f_massive(double T, const CavityGeometry& geometry, double m_gamma,
                       int k_max, const SumPolicy& policy);

// -d/dT of delta_f_massive by central differences with one Richardson level.
double delta_s_massive(double T, const CavityGeometry& geometry, double m_gamma,
                       int k_max, const SumPolicy& policy);

// Closed forms quoted for the low-temperature regime, with x = m/(2T):
//   free energy  -T ln(1 - e^{-x})
//   entropy      ln(1 - e^{-x}) + x/(e^x - 1)
double delta_f_massive_low_t(double T, double m_gamma);
double delta_s_massive_closed_form(double T, double m_gamma);

}  // namespace cavitherm::matsubara
