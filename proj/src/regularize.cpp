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
#include "cavitherm/regularize.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cavitherm/specfun.hpp"

namespace cavitherm::regularize {
namespace {

constexpr double kAbsTol = 1e-11;
// Beyond this point coth v - 1 < 2.2 e^{-2v}; its integral against 1/v is
// below 1e-36 and is only added to the error budget.
constexpr double kTailStart = 40.0;

double coth_minus_one(double v) { return 2.0 / std::expm1(2.0 * v); }

}  // namespace

QuadratureResult G_detailed(double v0) {
  if (!(v0 > 0.0) || !std::isfinite(v0))
    throw DomainError("G: v0 must be positive and finite");
  QuadratureResult out;
  auto add = [&](const QuadratureResult& r) {
    out.value += r.value;
    out.error_estimate += r.error_estimate;
    out.evaluations += r.evaluations;
  };
  // g/v is the K = 0 branch function; it switches to the series near 0.
  add(integrate([](double v) { return specfun::f_branch(v, 0); }, 0.0, v0,
                kAbsTol));
  // (g - 1)/v = (coth v - 1)/v - 1/v^2. Integrate it directly up to 2,
  // then integrate the exponential piece alone and add -1/B analytically.
  const double B = std::max(v0, 2.0);
  if (v0 < B)
    add(integrate([](double v) { return specfun::f_branch(v, 1); }, v0, B,
                  kAbsTol));
  if (B < kTailStart)
    add(integrate([](double v) { return coth_minus_one(v) / v; }, B,
                  kTailStart, kAbsTol));
  out.value -= 1.0 / B;
  const double tail_start = std::max(B, kTailStart);
  out.error_estimate += 2.2 * std::exp(-2.0 * tail_start) / (2.0 * tail_start);
  if (out.error_estimate > kAbsTol) {
    std::ostringstream msg;
    msg << "G(" << v0 << ") error estimate " << out.error_estimate;
    throw QuadratureFailure(msg.str());
  }
  return out;
}

double G(double v0) { return G_detailed(v0).value; }

QuadratureResult G_alternate(double v0) {
  if (!(v0 > 0.0) || !std::isfinite(v0))
    throw DomainError("G: v0 must be positive and finite");
  QuadratureResult out;
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  boost::math::quadrature::tanh_sinh<double> ts;
  out.value += ts.integrate([](double v) { return specfun::f_branch(v, 0); },
                            0.0, v0, 1e-13, &err, &l1, &levels);
  out.error_estimate += err;
  boost::math::quadrature::exp_sinh<double> es;
  out.value += es.integrate([](double v) { return specfun::f_branch(v, 1); },
                            v0, std::numeric_limits<double>::infinity(), 1e-13,
                            &err, &l1, &levels);
  out.error_estimate += err;
  return out;
}

CutoffSolution solve_cutoffs_detailed(double tolerance) {
  if (!(tolerance > 0.0))
    throw DomainError("solve_cutoffs: tolerance must be positive");
  CutoffSolution sol;
  auto solve_for = [&](double target, double& residual) {
    auto f = [&](double v) {
      ++sol.g_evaluations;
      return G(v) - target;
    };
    double lo = 0.1, hi = 10.0;
    double flo = f(lo), fhi = f(hi);
    for (int i = 0; i < 60 && flo > 0.0; ++i) {
      hi = lo;
      fhi = flo;
      lo *= 0.5;
      flo = f(lo);
    }
    for (int i = 0; i < 60 && fhi < 0.0; ++i) {
      lo = hi;
      flo = fhi;
      hi *= 2.0;
      fhi = f(hi);
    }
    if (!(flo <= 0.0 && fhi >= 0.0))
      throw RootFailure("could not bracket a root of G");
    // G is increasing with slope at most 1/lo on [lo, hi], so a bracket
    // whose width is below tolerance * lo pins |G - target| < tolerance.
    auto done = [tolerance](double a, double b) {
      return std::fabs(b - a) <= tolerance * std::min(a, b);
    };
    std::uintmax_t iters = 200;
    const std::pair<double, double> r = boost::math::tools::toms748_solve(
        f, lo, hi, flo, fhi, done, iters);
    const double root = 0.5 * (r.first + r.second);
    residual = f(root);
    if (!(std::fabs(residual) < tolerance)) {
      std::ostringstream msg;
      msg << "root of G = " << target << " has residual " << residual;
      throw RootFailure(msg.str());
    }
    return root;
  };
  sol.cutoffs.v_V = solve_for(0.0, sol.residual_V);
  sol.cutoffs.v_E = solve_for(-1.0, sol.residual_E);
  return sol;
}

CutoffConstants solve_cutoffs(double tolerance) {
  return solve_cutoffs_detailed(tolerance).cutoffs;
}

int K_V(double v, const CutoffConstants& c) noexcept {
  return v >= c.v_V ? 1 : 0;
}

int K_E(double v, const CutoffConstants& c) noexcept {
  return v >= c.v_E ? 1 : 0;
}

double zero_temperature_entropy(const CutoffConstants& c) {
  return -G(c.v_V) / 4.0 - 3.0 * (1.0 + G(c.v_E)) / 4.0;
}

}  // namespace cavitherm::regularize
