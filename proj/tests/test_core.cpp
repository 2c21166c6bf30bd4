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
#include <limits>

#include "cavitherm/core.hpp"
#include "cavitherm/numeric.hpp"

using namespace cavitherm;

TEST_CASE("geometry validation rejects non-physical edges") {
  CHECK_NOTHROW(validate_geometry(1.0, 100.0, 0.1));
  CHECK_THROWS_AS(validate_geometry(0.0, 1.0, 1.0), InvalidGeometry);
  CHECK_THROWS_AS(validate_geometry(1.0, -2.0, 1.0), InvalidGeometry);
  CHECK_THROWS_AS(validate_geometry(1.0, 1.0, std::nan("")), InvalidGeometry);
  CHECK_THROWS_AS(
      validate_geometry(std::numeric_limits<double>::infinity(), 1.0, 1.0),
      InvalidGeometry);

  const CavityGeometry g = validate_geometry(2.0, 3.0, 5.0);
  CHECK(g.volume() == doctest::Approx(30.0));
  CHECK(g.edge_sum() == doctest::Approx(10.0));
  CHECK(g.max_edge() == 5.0);
  CHECK(g.r2() == doctest::Approx(1.5));
  CHECK(g.r3() == doctest::Approx(2.5));
}

TEST_CASE("polarisation weights") {
  CHECK(mode_weight(1, 1, 1) == 2);
  CHECK(mode_weight(0, 3, 1) == 1);
  CHECK(mode_weight(4, 0, 2) == 1);
  CHECK(mode_weight(0, 0, 7) == 0);
  CHECK_THROWS_AS(mode_weight(0, 0, 0), ExcludedMode);
  CHECK_THROWS_AS(ModeTriple::make(0, 0, 0), ExcludedMode);

  const CavityGeometry cube = validate_geometry(1.0, 1.0, 1.0);
  const ModeTriple m = ModeTriple::make(1, 1, 0);
  CHECK(m.weight == 1);
  CHECK(m.omega(cube) == doctest::Approx(kPi * std::sqrt(2.0)));
}

TEST_CASE("image vectors") {
  const CavityGeometry g = validate_geometry(1.0, 2.0, 3.0);
  const ImageVector v = ImageVector::make(g, 1, 0, 0);
  CHECK(v.u == doctest::Approx(2.0));
  CHECK(ImageVector::make(g, 1, 1, 1).u == doctest::Approx(2.0 * std::sqrt(14.0)));
  CHECK(image_u(g, 0, -1, 0) == doctest::Approx(4.0));
  CHECK(v.v(0.5) == doctest::Approx(kPi));
  CHECK_THROWS_AS(ImageVector::make(g, 0, 0, 0), ExcludedMode);
}

TEST_CASE("temperature and xi convert through a1") {
  const CavityGeometry g = validate_geometry(2.0, 1.0, 1.0);
  const ThermoPoint p = ThermoPoint::from_xi(g, 1.0);
  CHECK(p.T == doctest::Approx(1.0 / (2.0 * kPi)));
  CHECK(ThermoPoint::from_T(g, p.T).xi == doctest::Approx(1.0));
}

TEST_CASE("sum policy") {
  for (TailMethod m : {TailMethod::none, TailMethod::continuum_integral,
                       TailMethod::extrapolation})
    CHECK(tail_method_from_string(to_string(m)) == m);
  CHECK_THROWS(tail_method_from_string("richardson"));

  SumPolicy p;
  CHECK_NOTHROW(p.validate());
  p.rel_tol = 0.0;
  CHECK_THROWS(p.validate());
  p = SumPolicy{};
  p.max_shell_radius = 0;
  CHECK_THROWS(p.validate());
}

TEST_CASE("compensated summation keeps small terms") {
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);

  CompensatedSum a, b;
  for (int i = 0; i < 1000; ++i) a.add(0.1);
  b.add(a);
  CHECK(b.value() == doctest::Approx(100.0).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature") {
  const auto r = integrate([](double x) { return std::exp(-x); }, 0.0,
                           std::numeric_limits<double>::infinity(), 1e-12);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.evaluations > 0);
  const auto s = integrate([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-12));
}
