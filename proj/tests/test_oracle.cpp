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

#include <cmath>

#include "cavitherm/lattice.hpp"
#include "cavitherm/oracle.hpp"
#include "cavitherm/regularize.hpp"

using namespace cavitherm;
using namespace cavitherm::oracle;

TEST_CASE("Bose integrals against their closed forms") {
  for (double u : {0.1, 1.0, 7.5})
    for (double beta : {0.5, 3.0, 20.0}) {
      CAPTURE(u);
      CAPTURE(beta);
      CHECK(std::abs(appendix_integral_sin(u, beta) - appendix_sin_closed_form(u, beta)) <
            1e-12);
      CHECK(std::abs(appendix_integral_omega_cos(u, beta) -
                     appendix_omega_cos_closed_form(u, beta)) < 1e-12);
    }
  // The other contour branches differ by a constant.
  CHECK(appendix_sin_closed_form(1.0, 2.0, 1) ==
        doctest::Approx(appendix_sin_closed_form(1.0, 2.0) - kPi / 4.0));
  CHECK(appendix_sin_closed_form(1.0, 2.0, -1) ==
        doctest::Approx(appendix_sin_closed_form(1.0, 2.0) + kPi / 4.0));
}

TEST_CASE("mode counting") {
  const CavityGeometry g = validate_geometry(1.0, 1.7, 0.6);
  for (double w : {3.0, 10.0, 40.0}) {
    CAPTURE(w);
    CHECK(brute_force_mode_count(g, w) == lattice::weighted_mode_count(g, w));
  }
  const CavityGeometry cube = validate_geometry(1, 1, 1);
  CHECK(brute_force_mode_count(cube, 20 * kPi) == 8320.0);
  const WeylReport r = weyl_check(cube, 20 * kPi, 40 * kPi, 500);
  CHECK(r.samples == 500);
  CHECK(r.relative_drift < 0.01);
}

TEST_CASE("direct mode sums") {
  const CavityGeometry cube = validate_geometry(1, 1, 1);
  const double T = 2.0 / kPi;
  const DirectThermal d = direct_thermal(T, cube, 40 * T);
  CHECK(d.modes > 0);
  CHECK(d.energy.value == doctest::Approx(d.free_energy.value + T * d.entropy.value));
  CHECK(d.free_energy.tail_bound < 1e-10);
  CHECK(direct_energy(T, cube, 40 * T) == d.energy.value);
  CHECK(direct_entropy(T, cube, 40 * T) == d.entropy.value);
  CHECK_THROWS_AS(direct_thermal(T, cube, 10 * T), TailBoundTooLarge);
  const DirectThermal cold = direct_thermal(0.0, cube, 10.0);
  CHECK(cold.energy.value == 0.0);
  CHECK(cold.free_energy.value == 0.0);

  // Specific heat against a difference of energies.
  const double h = 1e-4 * T;
  CHECK(d.specific_heat.value ==
        doctest::Approx((direct_energy(T + h, cube, 40 * T) -
                         direct_energy(T - h, cube, 40 * T)) / (2 * h))
            .epsilon(1e-6));
}

TEST_CASE("smooth-density potentials") {
  const CavityGeometry g = validate_geometry(1.0, 2.0, 3.0);
  const double T = 0.8;
  const SmoothThermal s = weyl_thermal(T, g);
  CHECK(s.energy == doctest::Approx(s.free_energy + T * s.entropy));
  CHECK(s.energy == doctest::Approx(g.volume() * kPi * kPi * std::pow(T, 4) / 15 -
                                    kPi * g.edge_sum() * T * T / 12));
}

TEST_CASE("energy route agrees with the direct sum") {
  const CavityGeometry cube = validate_geometry(1, 1, 1);
  const CutoffConstants c = regularize::solve_cutoffs();
  const ComparisonReport r = compare_regularized(1.0 / kPi, cube, c, SumPolicy{});
  CHECK(r.xi == doctest::Approx(1.0));
  CHECK(r.energy_weyl.rel_to_terms < 1e-4);
  CHECK(r.energy_weyl.abs_diff ==
        doctest::Approx(std::abs(r.energy_weyl.route - r.energy_weyl.direct)));
}
