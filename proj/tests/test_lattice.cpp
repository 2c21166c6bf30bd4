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
#include <cstdint>
#include <cstdlib>

#include "cavitherm/lattice.hpp"

using namespace cavitherm;
using namespace cavitherm::lattice;

namespace {

std::int64_t brute_count_below(const CavityGeometry& g, double u) {
  const int r = static_cast<int>(u / (2 * std::min({g.a1(), g.a2(), g.a3()}))) + 1;
  std::int64_t n = 0;
  for (int i = -r; i <= r; ++i)
    for (int j = -r; j <= r; ++j)
      for (int k = -r; k <= r; ++k)
        if ((i || j || k) && image_u(g, i, j, k) < u) ++n;
  return n;
}

}  // namespace

TEST_CASE("window is a smooth partition of unity") {
  CHECK(window(0.0) == 1.0);
  CHECK(window(0.5) == 1.0);
  CHECK(window(1.0) == 0.0);
  CHECK(window(1.5) == 0.0);
  double prev = 1.0;
  for (double t = 0.5; t <= 1.0; t += 0.01) {
    CHECK(window(t) <= prev);
    prev = window(t);
  }
  CHECK(window(0.75) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("exact lattice counts") {
  const CavityGeometry g = validate_geometry(1.0, 1.3, 0.7);
  const ShellEnumerator shells(g, SumPolicy{}, SumKind::volume_3d);
  for (double u : {1.0, 2.9, 6.0, 11.3}) {
    CAPTURE(u);
    CHECK(shells.count_below(u) == brute_count_below(g, u));
  }
  // Octant entries with multiplicities reproduce the same count.
  const auto entries = shells.entries_below(6.0);
  std::int64_t total = 0;
  for (const auto& e : *entries) total += e.multiplicity;
  CHECK(total == brute_count_below(g, 6.0));
  for (std::size_t i = 1; i < entries->size(); ++i)
    CHECK((*entries)[i - 1].u <= (*entries)[i].u);

  const ShellEnumerator edge(g, SumPolicy{}, SumKind::edge_axis_2);
  // u = 2 n a2 < 10 for |n| = 1, 2, 3.
  CHECK(edge.count_below(10.0) == 6);
  CHECK(edge_axis(SumKind::edge_axis_3) == 2);
  CHECK(edge_kind(0) == SumKind::edge_axis_1);
  CHECK_THROWS(edge_axis(SumKind::volume_3d));
}

TEST_CASE("known lattice sums") {
  const CavityGeometry cube = validate_geometry(1.0, 1.0, 1.0);
  SumPolicy p;
  p.rel_tol = 1e-12;
  // sum' 1/u^4 over the cube lattice is the simple-cubic Epstein constant
  // 16.5323159597... divided by 16.
  const SumResult s4 = volume_sum(cube, p, [](double u) { return std::pow(u, -4); });
  CHECK(s4.value == doctest::Approx(1.0332697474851).epsilon(1e-11));
  CHECK(s4.truncation_error_estimate < 1e-10);
  CHECK(s4.terms_used > 0);

  // Edge sum of 1/u^2 with u = 2|n| a is zeta(2)/(2 a^2).
  const CavityGeometry g = validate_geometry(1.0, 2.0, 1.0);
  const SumResult e = edge_sum(g, p, 1, [](double u) { return 1.0 / (u * u); });
  CHECK(e.value == doctest::Approx(kPi * kPi / 48.0).epsilon(1e-11));
}

TEST_CASE("a step inside the lattice is summed exactly") {
  const CavityGeometry cube = validate_geometry(1.0, 1.0, 1.0);
  SumPolicy p;
  p.rel_tol = 1e-12;
  SumHints hints;
  hints.step = 3.0;
  const auto term = [](double u) { return (u >= 3.0 ? 2.0 : 1.0) * std::pow(u, -4); };
  const SumResult s = volume_sum(cube, p, term, hints);
  // Shift by sum over u < 3 of 1/u^4: shells |n|^2 = 1, 2 with u = 2, 2.83.
  const double below = 6.0 / 16.0 + 12.0 / 64.0;
  CHECK(s.value == doctest::Approx(2.0 * 1.0332697474851 - below).epsilon(1e-11));
}

TEST_CASE("thread count does not change results") {
  const CavityGeometry g = validate_geometry(1.0, 3.0, 0.5);
  SumPolicy one, four;
  four.threads = 4;
  const auto term = [](double u) { return std::exp(-0.3 * u) / (u * u); };
  SumHints hints;
  hints.smooth_beyond = 200.0;
  const double a = volume_sum(g, one, term, hints).value;
  const double b = volume_sum(g, four, term, hints).value;
  CHECK(a == b);
}

TEST_CASE("budget exhaustion raises with the partial sum attached") {
  const CavityGeometry cube = validate_geometry(1.0, 1.0, 1.0);
  SumPolicy p;
  p.max_shell_radius = 2;
  p.rel_tol = 1e-15;
  p.tail_method = TailMethod::none;
  try {
    volume_sum(cube, p, [](double u) { return std::pow(u, -3.5); });
    FAIL("expected ConvergenceFailure");
  } catch (const ConvergenceFailure& e) {
    CHECK(e.partial().value > 0.0);
    CHECK(e.partial().terms_used > 0);
  }
}

TEST_CASE("Casimir energy of the unit cube") {
  const CavityGeometry cube = validate_geometry(1.0, 1.0, 1.0);
  CHECK(casimir_energy(cube, SumPolicy{}) ==
        doctest::Approx(0.091657427012343).epsilon(1e-10));
  // Scale covariance: E0 ~ 1/a.
  const CavityGeometry big = validate_geometry(2.0, 2.0, 2.0);
  CHECK(casimir_energy(big, SumPolicy{}) ==
        doctest::Approx(0.091657427012343 / 2.0).epsilon(1e-10));
}

TEST_CASE("Casimir energy derivatives match finite differences") {
  const CavityGeometry g = validate_geometry(1.0, 1.4, 0.8);
  SumPolicy p;
  p.rel_tol = 1e-12;
  const ShellEnumerator shells(g, p, SumKind::volume_3d);
  const CasimirSums sums = casimir_sums(shells);
  for (int j = 0; j < 3; ++j) {
    CAPTURE(j);
    auto edges = g.edges();
    const double h = 1e-4;
    edges[j] += h;
    const double up =
        casimir_energy(validate_geometry(edges[0], edges[1], edges[2]), p);
    edges[j] -= 2 * h;
    const double down =
        casimir_energy(validate_geometry(edges[0], edges[1], edges[2]), p);
    CHECK(casimir_energy_derivative(g, sums, j) ==
          doctest::Approx((up - down) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("mode listing and counts") {
  const CavityGeometry g = validate_geometry(1.0, 1.5, 2.0);
  const auto modes = mode_frequencies(g, 12.0);
  REQUIRE(!modes.empty());
  double weighted = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    CHECK(modes[i].mode.weight > 0);
    if (i) CHECK(modes[i - 1].omega <= modes[i].omega);
    weighted += modes[i].mode.weight;
  }
  CHECK(weighted == weighted_mode_count(g, 12.0));
  // The lowest mode of this box is (0, 1, 1) with weight 1.
  CHECK(modes.front().mode.n1 == 0);
  CHECK(modes.front().omega == doctest::Approx(kPi * std::sqrt(1 / 2.25 + 1 / 4.0)));
  const double w = 200.0;
  CHECK(weyl_mode_count(g, w) ==
        doctest::Approx(g.volume() * w * w * w / (3 * kPi * kPi) -
                        g.edge_sum() * w / (2 * kPi)));
}
