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
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cavitherm/errors.hpp"
#include "cavitherm/specfun.hpp"

// Reference values come from 100-digit arithmetic on the defining
// expressions. Some summands cancel down to e^{-2v} against O(1/v^3) pieces,
// so fewer digits are not enough at v = 60.
namespace {

using mp = boost::multiprecision::cpp_bin_float_100;
using namespace cavitherm::specfun;

struct Ref {
  mp g, g1, g2, g3, h, h1;
};

Ref reference(double vd) {
  const mp v = vd;
  const mp coth = cosh(v) / sinh(v);
  const mp csch2 = 1 / (sinh(v) * sinh(v));
  Ref r;
  r.g = coth - 1 / v;
  r.g1 = 1 / (v * v) - csch2;
  r.g2 = 2 * coth * csch2 - 2 / (v * v * v);
  r.g3 = -2 * csch2 * csch2 - 4 * coth * coth * csch2 + 6 / (v * v * v * v);
  r.h = r.g1 / (v * v) - r.g / (v * v * v);
  r.h1 = r.g2 / (v * v) - 3 * r.g1 / (v * v * v) + 3 * r.g / (v * v * v * v);
  return r;
}

double rel(double got, const mp& want) {
  const mp w = want;
  if (w == 0) return std::abs(got);
  return static_cast<double>(abs((mp(got) - w) / w));
}

const std::vector<double> kPoints = {1e-6, 1e-3, 0.01,  0.049, 0.05, 0.051,
                                     0.2,  0.5,  0.99,  1.0,   1.01, 2.0,
                                     3.0,  5.0,  10.0,  30.0,  100.0, 400.0};

}  // namespace

TEST_CASE("g and its derivatives against high-precision references") {
  for (double v : kPoints) {
    CAPTURE(v);
    const Ref r = reference(v);
    CHECK(rel(g(v), r.g) < 2e-15);
    const GDerivs d = g_derivs(v);
    CHECK(rel(d.d1, r.g1) < 1e-13);
    CHECK(rel(d.d2, r.g2) < 1e-12);
    CHECK(rel(d.d3, r.g3) < 1e-11);
  }
}

TEST_CASE("h and h' against high-precision references") {
  for (double v : kPoints) {
    CAPTURE(v);
    const Ref r = reference(v);
    CHECK(rel(h(v), r.h) < 1e-13);
    CHECK(rel(h_prime(v), r.h1) < 1e-12);
  }
}

TEST_CASE("g domain and saturation") {
  CHECK_THROWS_AS(g(0.0), cavitherm::DomainError);
  CHECK_THROWS_AS(g(-0.7), cavitherm::DomainError);
  CHECK(g(1e3) == doctest::Approx(1.0 - 1e-3).epsilon(1e-15));
  // Series and closed form meet at the switch.
  CHECK(g(std::nextafter(kGSeriesSwitch, 0.0)) ==
        doctest::Approx(g(kGSeriesSwitch)).epsilon(1e-14));
}

TEST_CASE("Laurent coefficients") {
  CHECK(laurent_coefficient(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(laurent_coefficient(2) == doctest::Approx(-1.0 / 45.0).epsilon(1e-15));
  CHECK(laurent_coefficient(3) == doctest::Approx(2.0 / 945.0).epsilon(1e-15));
}

TEST_CASE("branch functions") {
  for (double v : {0.03, 0.7, 4.0, 50.0})
    for (int K : {-1, 0, 1}) {
      CAPTURE(v);
      CAPTURE(K);
      const Ref r = reference(v);
      const mp mv = v;
      CHECK(rel(f_branch(v, K), (r.g - K) / mv) < 1e-13);
      CHECK(rel(h_branch(v, K), r.h + K / (mv * mv * mv)) < 1e-12);
      CHECK(f_branch_value(v, K).K == K);
      CHECK(h_branch_value(v, K).value == h_branch(v, K));
      // Derivatives at fixed K, against a symmetric difference.
      const double dv = 1e-5 * v;
      CHECK(f_branch_prime(v, K) ==
            doctest::Approx((f_branch(v + dv, K) - f_branch(v - dv, K)) / (2 * dv))
                .epsilon(1e-6));
      CHECK(h_branch_prime(v, K) ==
            doctest::Approx((h_branch(v + dv, K) - h_branch(v - dv, K)) / (2 * dv))
                .epsilon(1e-6));
    }
}

TEST_CASE("combined summands against their definitions") {
  for (double v : {0.02, 0.4, 1.5, 8.0, 60.0})
    for (int K : {0, 1}) {
      CAPTURE(v);
      CAPTURE(K);
      const Ref r = reference(v);
      const mp mv = v;
      const mp hV = r.h + K / (mv * mv * mv);
      const mp fE = (r.g - K) / mv;
      CHECK(rel(entropy_volume_kernel(v, K),
                mv * r.h1 - 3 * K / (mv * mv * mv) + 4 * hV) < 1e-11);
      CHECK(rel(entropy_edge_kernel(v, K), 2 * fE + mv * mv * hV) < 1e-11);
      CHECK(rel(energy_volume_kernel(v), r.g2 / mv) < 1e-11);
      CHECK(rel(energy_edge_kernel(v), r.g1) < 1e-12);

      const VolumeKernels vk = volume_kernels(v, K);
      CHECK(vk.free == doctest::Approx(h_branch(v, K)).epsilon(1e-13));
      CHECK(vk.entropy == doctest::Approx(entropy_volume_kernel(v, K)).epsilon(1e-12));
      CHECK(rel(vk.heat, 3 * r.g2 / mv + r.g3) < 1e-10);
      const EdgeKernels ek = edge_kernels(v, K);
      CHECK(ek.free == doctest::Approx(f_branch(v, K)).epsilon(1e-13));
      CHECK(rel(ek.heat, 2 * r.g1 + mv * r.g2) < 1e-10);
    }
}

TEST_CASE("volume entropy summand falls at least like 1/v^4 on the upper branch") {
  // The rational parts cancel exactly for K = 1, leaving only e^{-2v} terms.
  double prev = 10.0;
  for (double v = 5.0; v < 2000.0; v *= 2.0) {
    CAPTURE(v);
    const double scaled = std::abs(entropy_volume_kernel(v, 1)) * std::pow(v, 4);
    CHECK(scaled <= prev);
    prev = scaled;
  }
  CHECK(prev == 0.0);
  // On the lower branch the 1/v^3 piece survives.
  CHECK(entropy_volume_kernel(200.0, 0) * std::pow(200.0, 3) ==
        doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("K2 against high-precision Bessel values") {
  for (double x : {1e-3, 0.1, 1.0, 2.5, 10.0, 100.0, 600.0}) {
    CAPTURE(x);
    const mp want = boost::math::cyl_bessel_k(2, mp(x));
    CHECK(rel(bessel_k2(x), want) < 1e-13);
  }
  CHECK(bessel_k2(900.0) == 0.0);
  CHECK_THROWS_AS(bessel_k2(0.0), cavitherm::DomainError);
  CHECK_THROWS_AS(bessel_k2(-1.0), cavitherm::DomainError);
}
