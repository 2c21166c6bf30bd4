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

// Thermodynamic potentials of the cavity: the large-cavity (blackbody) part
// in closed form plus the regularised finite-size correction, which is a
// set of image-lattice sums of the coth-family kernels.

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cavitherm/core.hpp"
#include "cavitherm/lattice.hpp"

namespace cavitherm::thermo {

// Blackbody part, natural units.
double blackbody_free_energy(double T, const CavityGeometry& g);
double blackbody_entropy(double T, const CavityGeometry& g);
double blackbody_energy(double T, const CavityGeometry& g);
double blackbody_specific_heat(double T, const CavityGeometry& g);
std::array<double, 3> blackbody_pressures(double T, const CavityGeometry& g);

// Which images sit above their cutoff. Counts are over the full lattice,
// origin excluded, limited to what the sum policy enumerates.
struct BranchSignature {
  std::int64_t volume_active = 0;
  std::int64_t volume_inactive = 0;
  std::array<std::int64_t, 3> edge_active{};
  std::array<std::int64_t, 3> edge_inactive{};

  // Number of images still below their cutoff. Constant on a branch and
  // decreasing by at least one at every crossing.
  std::int64_t branch_id() const noexcept;
  // Componentwise "no fewer active images than other".
  bool dominates(const BranchSignature& other) const noexcept;
};

struct Decomposed {
  double total = 0.0;
  double blackbody = 0.0;
  double delta = 0.0;
};

struct ThermoReport {
  ThermoPoint point;
  // Natural units.
  Decomposed F, S, E, C_V;
  std::array<Decomposed, 3> P;
  // Dimensionless: f = pi a1 F, s = S, e = pi a1 E, c_v = C_V,
  // p_i = pi a1^4 P_i.
  Decomposed f, s, e, c_v;
  std::array<Decomposed, 3> p;
  BranchSignature branch;
  // |E - (P1+P2+P3) V| / |E|.
  double eos_residual = 0.0;
  // Largest truncation-error estimate of the lattice sums, relative to the
  // magnitude of each sum.
  double max_sum_error = 0.0;
  double casimir_energy = 0.0;
};

struct DeltaParts {
  double free_energy = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
  // d(Delta F)/d a_j at fixed T.
  std::array<double, 3> free_energy_gradient{};
  double max_sum_error = 0.0;
};

// Evaluation context: geometry, cutoffs and policy, plus caches (the sorted
// image list and the zero-temperature sums). Thread-safe for concurrent
// const use.
class CavityThermo {
 public:
  CavityThermo(const CavityGeometry& geometry, const CutoffConstants& cutoffs,
               const SumPolicy& policy);

  const CavityGeometry& geometry() const noexcept { return geometry_; }
  const CutoffConstants& cutoffs() const noexcept { return cutoffs_; }
  const SumPolicy& policy() const noexcept { return policy_; }

  double casimir_energy() const;
  std::array<double, 3> casimir_energy_gradient() const;

  double delta_free_energy(double T) const;
  double delta_entropy(double T) const;
  double delta_energy(double T) const;
  DeltaParts delta_parts(double T) const;

  // Total C_V from central differences of E with one Richardson level; the
  // lattice plan is frozen across the stencil.
  double specific_heat(double T) const;
  double delta_specific_heat(double T) const;
  // Term-wise temperature derivative of Delta E. Cross-check only.
  double delta_specific_heat_analytic(double T) const;

  // Total pressures. Throws BranchBoundary near a crossing.
  std::array<double, 3> pressures(double T) const;
  std::array<double, 3> delta_pressures(double T) const;

  ThermoReport evaluate(double T, bool with_specific_heat = true) const;

  BranchSignature branch_signature(double T) const;
  // Crossing temperatures expressed as xi, sorted and merged, over the
  // images the policy enumerates. xi_min <= 0 picks the smallest xi the
  // truncation resolves.
  std::vector<double> branch_boundaries(double xi_max,
                                        double xi_min = 0.0) const;
  // The crossing within |xi - xi_c| < tolerance, if any.
  std::optional<double> crossing_near(double xi, double tolerance) const;

 private:
  struct Plan {
    double volume_u = 0.0;
    std::array<double, 3> edge_u{};
  };
  DeltaParts compute(double T, Plan* plan) const;
  double delta_energy_planned(double T, const Plan& plan) const;
  const lattice::CasimirSums& casimir_sums() const;

  CavityGeometry geometry_;
  CutoffConstants cutoffs_;
  SumPolicy policy_;
  std::shared_ptr<lattice::ShellEnumerator> volume_shells_;
  std::array<std::shared_ptr<lattice::ShellEnumerator>, 3> edge_shells_;
  mutable std::mutex casimir_mutex_;
  mutable std::optional<lattice::CasimirSums> casimir_;
};

// Stateless wrappers.
double delta_free_energy(double T, const CavityGeometry& g,
                         const CutoffConstants& c, const SumPolicy& p);
double delta_entropy(double T, const CavityGeometry& g,
                     const CutoffConstants& c, const SumPolicy& p);
// Delta E does not depend on the cutoffs.
double delta_energy(double T, const CavityGeometry& g, const SumPolicy& p);
double specific_heat(double T, const CavityGeometry& g, const SumPolicy& p);
std::array<double, 3> pressures(double T, const CavityGeometry& g,
                                const CutoffConstants& c, const SumPolicy& p);
std::vector<double> branch_boundaries(const CavityGeometry& g,
                                      const CutoffConstants& c,
                                      const SumPolicy& p, double xi_max,
                                      double xi_min = 0.0);

// Exclusion half-width around a crossing, in xi.
inline constexpr double kBoundaryExclusion = 1e-9;

}  // namespace cavitherm::thermo
