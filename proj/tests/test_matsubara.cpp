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

#include "cavitherm/matsubara.hpp"
#include "cavitherm/regularize.hpp"
#include "cavitherm/thermo.hpp"

using namespace cavitherm;
using namespace cavitherm::matsubara;

namespace {
const CavityGeometry kCube = validate_geometry(1, 1, 1);
const CutoffConstants& cutoffs() {
  static const CutoffConstants c = regularize::solve_cutoffs();
  return c;
}
}  // namespace

TEST_CASE("log fit recovers an exact logarithm") {
  const auto d = log_fit({{10.0, 1.0 + 0.5 * std::log(10.0)},
                          {20.0, 1.0 + 0.5 * std::log(20.0)},
                          {40.0, 1.0 + 0.5 * std::log(40.0)}});
  CHECK(d.c0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.c1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(d.fit_residual < 1e-12);
  CHECK(d.spread == doctest::Approx(0.5 * std::log(4.0)));
}

TEST_CASE("edge part of the imaginary-frequency form grows like ln k") {
  const auto d = delta_f_matsubara(1.0 / kPi, kCube, 64, SumPolicy{});
  REQUIRE(d.edge.partial_values.size() == 3);
  CHECK(d.edge.partial_values[0].first == 16.0);
  CHECK(d.edge.partial_values[2].first == 64.0);
  CHECK(d.edge.c1 > 0.0);
  CHECK(d.edge.fit_residual < 0.01 * d.edge.spread);
  // Both pieces add up.
  for (int i = 0; i < 3; ++i)
    CHECK(d.total.partial_values[i].second ==
          doctest::Approx(d.edge.partial_values[i].second +
                          d.volume.partial_values[i].second));
  CHECK_THROWS(delta_f_matsubara(1.0, kCube, 4, SumPolicy{}));
  CHECK_THROWS(delta_f_matsubara(0.0, kCube, 64, SumPolicy{}));
}

TEST_CASE("step-correction sums") {
  const double T = 1.0 / kPi;
  // Below the smallest image length nothing is summed.
  const CorrectionSums none = correction_sums(T, kCube, cutoffs(), 1.5);
  CHECK(none.volume == 0.0);
  CHECK(none.edge == 0.0);
  // Six images at u = 2 pass v_V at xi = 1 (v = 2 > 1.76), and the two
  // edge images per axis at u = 2 pass v_E.
  const CorrectionSums first = correction_sums(T, kCube, cutoffs(), 2.5);
  CHECK(first.volume == doctest::Approx(T / (2 * kPi) * 6.0 / 8.0));
  CHECK(first.edge == doctest::Approx(-T / 4 * 3.0));
}

TEST_CASE("scale factor diagnostic") {
  const double T = 1.0 / kPi;
  const auto mu = scale_factor_mu(T, kCube, cutoffs(), 40.0);
  REQUIRE(mu.total.partial_values.size() == 3);
  CHECK(mu.total.partial_values[0].first == doctest::Approx(10.0));
  CHECK(mu.volume.c1 > 0.0);
  CHECK(mu.edge.c1 < 0.0);
  const double step = mu.total.partial_values[2].second - mu.total.partial_values[1].second;
  CHECK(step == doctest::Approx(mu.total.c1 * std::log(2.0)).epsilon(0.05));

  // Cold enough that no image reaches either cutoff: the exponent vanishes.
  const auto cold = scale_factor_mu(0.01 / kPi, kCube, cutoffs(), 40.0);
  for (const auto& [U, value] : cold.total.partial_values) CHECK(value == 0.0);
}

TEST_CASE("joint truncation of the decomposition") {
  const double T = 1.0 / kPi;
  const auto r = relation_check(T, kCube, cutoffs(), SumPolicy{}, 64);
  REQUIRE(r.levels.size() == 3);
  const double lhs = thermo::delta_free_energy(T, kCube, cutoffs(), SumPolicy{});
  for (const auto& l : r.levels) {
    CHECK(l.lhs == doctest::Approx(lhs));
    CHECK(l.rhs == doctest::Approx(l.casimir + l.matsubara_volume + l.matsubara_edge +
                                   l.correction_volume + l.correction_edge));
    CHECK(l.residual == doctest::Approx(l.lhs - l.rhs));
  }
  CHECK(std::abs(r.levels[2].residual) < std::abs(r.levels[0].residual));
  CHECK(r.residual_ratio < 1.0);
}

TEST_CASE("massive photon free energy vanishes as the mass grows") {
  const double T = 1.0 / kPi;
  double prev = -1e300;
  for (double m : {0.5, 1.0, 2.0, 5.0}) {
    CAPTURE(m);
    const double F = delta_f_massive(T, kCube, m, 256, SumPolicy{});
    CHECK(F < 0.0);
    CHECK(F > prev);
    prev = F;
  }
  CHECK_THROWS(delta_f_massive(T, kCube, 0.0, 256, SumPolicy{}));
}

TEST_CASE("low-temperature closed forms") {
  const double T = 0.1, m = 4.0;  // x = 20
  const double x = m / (2 * T);
  CHECK(delta_f_massive_low_t(T, m) ==
        doctest::Approx(-T * std::log1p(-std::exp(-x))).epsilon(1e-14));
  CHECK(delta_s_massive_closed_form(T, m) ==
        doctest::Approx(std::log1p(-std::exp(-x)) + x / std::expm1(x)).epsilon(1e-14));
  CHECK(delta_s_massive_closed_form(1e-4, 1.0) == 0.0);
}
