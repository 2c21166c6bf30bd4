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
#include "cavitherm/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "cavitherm/errors.hpp"

namespace cavitherm::specfun {
namespace {

using ld = long double;

// Enough terms for v < 1: |c_k| ~ 2/pi^(2k), and the largest derivative
// weight is O(k^3).
constexpr int kTerms = 28;

struct SeriesTables {
  std::array<ld, kTerms + 1> c{};      // c[k], k = 1..kTerms
  std::array<ld, kTerms> g_over_v{};   // g/v    = sum a_j w^j
  std::array<ld, kTerms> g1{};         // g'     = sum a_j w^j
  std::array<ld, kTerms> g2_over_v{};  // g''/v  = sum a_j w^j
  std::array<ld, kTerms> g3{};         // g'''   = sum a_j w^j
  std::array<ld, kTerms> hs{};         // h      = sum a_j w^j
  std::array<ld, kTerms> h1_over_v{};  // h'/v   = sum a_j w^j

  SeriesTables() {
    for (int k = 1; k <= kTerms; ++k) {
      // 2 zeta(2k)/pi^(2k) = 2^(2k) |B_2k| / (2k)!, alternating in sign
      // exactly as B_2k does.
      const ld b = boost::math::bernoulli_b2n<ld>(k);
      c[k] = std::ldexp(b, 2 * k) / boost::math::factorial<ld>(2 * k);
    }
    for (int k = 1; k <= kTerms; ++k) {
      const ld m = 2 * k - 1;
      g_over_v[k - 1] = c[k];
      g1[k - 1] = m * c[k];
      if (k >= 2) {
        g2_over_v[k - 2] = m * (m - 1) * c[k];
        g3[k - 2] = m * (m - 1) * (m - 2) * c[k];
        hs[k - 2] = (m - 1) * c[k];
      }
      if (k >= 3) h1_over_v[k - 3] = (m - 1) * (m - 3) * c[k];
    }
  }
};

const SeriesTables& tables() {
  static const SeriesTables t;
  return t;
}

template <std::size_t N>
ld horner(const std::array<ld, N>& a, ld w) {
  ld s = 0;
  for (std::size_t i = N; i-- > 0;) s = s * w + a[i];
  return s;
}

// Exponential pieces with q = exp(-2v):
//   e = coth v - 1 = 2q/(1-q),   E = csch^2 v = 4q/(1-q)^2.
struct Hyp {
  ld e;
  ld E;
};

Hyp hyp(ld v) {
  const ld q = std::exp(-2 * v);
  const ld one_minus_q = -std::expm1(-2 * v);
  return Hyp{2 * q / one_minus_q, 4 * q / (one_minus_q * one_minus_q)};
}

void require_positive(double v, const char* who) {
  if (!(v > 0.0) || std::isnan(v))
    throw DomainError(std::string(who) + ": argument must be positive");
}

void require_branch(int K, const char* who) {
  if (K < -1 || K > 1)
    throw DomainError(std::string(who) + ": K must be -1, 0 or 1");
}

ld h_series(ld v) { return horner(tables().hs, v * v); }
ld h1_series(ld v) { return v * horner(tables().h1_over_v, v * v); }

ld h_closed(ld v) {
  const Hyp x = hyp(v);
  const ld v2 = v * v, v3 = v2 * v, v4 = v2 * v2;
  return 2 / v4 - 1 / v3 - x.E / v2 - x.e / v3;
}

ld h1_closed(ld v) {
  const Hyp x = hyp(v);
  const ld v2 = v * v, v3 = v2 * v, v4 = v2 * v2, v5 = v4 * v;
  return 3 / v4 - 8 / v5 + 2 * (1 + x.e) * x.E / v2 + 3 * x.E / v3 +
         3 * x.e / v4;
}

}  // namespace

double laurent_coefficient(int k) {
  if (k < 1 || k > kTerms) throw DomainError("laurent_coefficient: k out of range");
  return static_cast<double>(tables().c[k]);
}

double g(double v) {
  require_positive(v, "g");
  if (v < kGSeriesSwitch) {
    const ld lv = v;
    return static_cast<double>(lv * horner(tables().g_over_v, lv * lv));
  }
  const Hyp x = hyp(v);
  return static_cast<double>(1 + x.e - 1 / static_cast<ld>(v));
}

GDerivs g_derivs(double v) {
  require_positive(v, "g_derivs");
  const ld lv = v;
  const ld w = lv * lv;
  GDerivs out;
  if (v < kGSeriesSwitch) {
    out.d1 = static_cast<double>(horner(tables().g1, w));
  } else {
    out.d1 = static_cast<double>(1 / w - hyp(lv).E);
  }
  if (v < kDerivedSeriesSwitch) {
    out.d2 = static_cast<double>(lv * horner(tables().g2_over_v, w));
    out.d3 = static_cast<double>(horner(tables().g3, w));
  } else {
    const Hyp x = hyp(lv);
    const ld coth = 1 + x.e;
    out.d2 = static_cast<double>(2 * coth * x.E - 2 / (w * lv));
    out.d3 = static_cast<double>(-2 * x.E * x.E - 4 * coth * coth * x.E +
                                 6 / (w * w));
  }
  return out;
}

double h(double v) {
  require_positive(v, "h");
  const ld lv = v;
  return static_cast<double>(v < kDerivedSeriesSwitch ? h_series(lv)
                                                      : h_closed(lv));
}

double h_prime(double v) {
  require_positive(v, "h_prime");
  const ld lv = v;
  return static_cast<double>(v < kDerivedSeriesSwitch ? h1_series(lv)
                                                      : h1_closed(lv));
}

double f_branch(double v, int K) {
  require_positive(v, "f_branch");
  require_branch(K, "f_branch");
  const ld lv = v;
  if (v < kGSeriesSwitch)
    return static_cast<double>(horner(tables().g_over_v, lv * lv) - K / lv);
  // (g - K)/v = ((1 - K) + e - 1/v)/v, so the K = 1 branch never forms
  // coth v - 1 by subtraction.
  const Hyp x = hyp(lv);
  return static_cast<double>((1 - K) / lv + x.e / lv - 1 / (lv * lv));
}

double h_branch(double v, int K) {
  require_positive(v, "h_branch");
  require_branch(K, "h_branch");
  const ld lv = v;
  const ld v3 = lv * lv * lv;
  if (v < kDerivedSeriesSwitch) return static_cast<double>(h_series(lv) + K / v3);
  const Hyp x = hyp(lv);
  const ld v2 = lv * lv, v4 = v2 * v2;
  return static_cast<double>(2 / v4 + (K - 1) / v3 - x.E / v2 - x.e / v3);
}

BranchValue f_branch_value(double v, int K) { return {f_branch(v, K), K}; }
BranchValue h_branch_value(double v, int K) { return {h_branch(v, K), K}; }

double f_branch_prime(double v, int K) {
  require_positive(v, "f_branch_prime");
  require_branch(K, "f_branch_prime");
  const ld lv = v;
  if (v < kDerivedSeriesSwitch) {
    // d/dv (g/v) = v h, then the K term.
    return static_cast<double>(lv * h_series(lv) + K / (lv * lv));
  }
  const Hyp x = hyp(lv);
  const ld v2 = lv * lv, v3 = v2 * lv;
  return static_cast<double>(2 / v3 - (1 - K) / v2 - x.E / lv - x.e / v2);
}

double h_branch_prime(double v, int K) {
  require_positive(v, "h_branch_prime");
  require_branch(K, "h_branch_prime");
  const ld lv = v;
  const ld v4 = lv * lv * lv * lv;
  if (v < kDerivedSeriesSwitch) return static_cast<double>(h1_series(lv) - 3 * K / v4);
  const Hyp x = hyp(lv);
  const ld v2 = lv * lv, v3 = v2 * lv, v5 = v4 * lv;
  return static_cast<double>((3 - 3 * K) / v4 - 8 / v5 +
                             2 * (1 + x.e) * x.E / v2 + 3 * x.E / v3 +
                             3 * x.e / v4);
}

double entropy_volume_kernel(double v, int K) {
  require_positive(v, "entropy_volume_kernel");
  require_branch(K, "entropy_volume_kernel");
  const ld lv = v;
  const ld v3 = lv * lv * lv;
  if (v < kDerivedSeriesSwitch)
    return static_cast<double>(lv * h1_series(lv) + 4 * h_series(lv) + K / v3);
  const Hyp x = hyp(lv);
  const ld v2 = lv * lv;
  return static_cast<double>((K - 1) / v3 + 2 * (1 + x.e) * x.E / lv -
                             x.E / v2 - x.e / v3);
}

double entropy_edge_kernel(double v, int K) {
  require_positive(v, "entropy_edge_kernel");
  require_branch(K, "entropy_edge_kernel");
  const ld lv = v;
  if (v < kDerivedSeriesSwitch) {
    const ld w = lv * lv;
    return static_cast<double>(2 * horner(tables().g_over_v, w) +
                               w * h_series(lv) - K / lv);
  }
  const Hyp x = hyp(lv);
  return static_cast<double>((1 - K) / lv + x.e / lv - x.E);
}

double energy_volume_kernel(double v) {
  require_positive(v, "energy_volume_kernel");
  const ld lv = v;
  if (v < kDerivedSeriesSwitch)
    return static_cast<double>(horner(tables().g2_over_v, lv * lv));
  const Hyp x = hyp(lv);
  const ld v4 = lv * lv * lv * lv;
  return static_cast<double>(2 * (1 + x.e) * x.E / lv - 2 / v4);
}

double energy_edge_kernel(double v) { return g_derivs(v).d1; }

double bessel_k2(double x) {
  if (!(x > 0.0) || std::isnan(x))
    throw DomainError("bessel_k2: argument must be positive");
  using namespace boost::math::policies;
  using quiet = policy<underflow_error<ignore_error>>;
  if (x > 745.0) return 0.0;
  return boost::math::cyl_bessel_k(2, x, quiet());
}

}  // namespace cavitherm::specfun

namespace cavitherm::specfun {

VolumeKernels volume_kernels(double v, int K) {
  require_positive(v, "volume_kernels");
  require_branch(K, "volume_kernels");
  VolumeKernels k;
  const ld lv = v;
  const ld v2 = lv * lv, v3 = v2 * lv, v4 = v2 * v2, v5 = v4 * lv;
  if (v < kDerivedSeriesSwitch) {
    const SeriesTables& t = tables();
    const ld hs = horner(t.hs, v2);
    const ld h1 = lv * horner(t.h1_over_v, v2);
    const ld g2v = horner(t.g2_over_v, v2);
    k.free = static_cast<double>(hs + K / v3);
    k.entropy = static_cast<double>(lv * h1 + 4 * hs + K / v3);
    k.energy = static_cast<double>(g2v);
    k.free_prime = static_cast<double>(h1 - 3 * K / v4);
    k.heat = static_cast<double>(3 * g2v + horner(t.g3, v2));
    return k;
  }
  const Hyp x = hyp(lv);
  const ld coth = 1 + x.e;
  k.free = static_cast<double>(2 / v4 + (K - 1) / v3 - x.E / v2 - x.e / v3);
  k.entropy = static_cast<double>((K - 1) / v3 + 2 * coth * x.E / lv -
                                  x.E / v2 - x.e / v3);
  k.energy = static_cast<double>(2 * coth * x.E / lv - 2 / v4);
  k.free_prime = static_cast<double>((3 - 3 * K) / v4 - 8 / v5 +
                                     2 * coth * x.E / v2 + 3 * x.E / v3 +
                                     3 * x.e / v4);
  // 3 g''/v + g''' = 6 coth E / v - 2 E^2 - 4 coth^2 E.
  k.heat = static_cast<double>(6 * coth * x.E / lv - 2 * x.E * x.E -
                               4 * coth * coth * x.E);
  return k;
}

EdgeKernels edge_kernels(double v, int K) {
  require_positive(v, "edge_kernels");
  require_branch(K, "edge_kernels");
  EdgeKernels k;
  const ld lv = v;
  const ld v2 = lv * lv;
  if (v < kDerivedSeriesSwitch) {
    const SeriesTables& t = tables();
    const ld gv = horner(t.g_over_v, v2);
    const ld g1 = horner(t.g1, v2);
    const ld g2 = lv * horner(t.g2_over_v, v2);
    k.free = static_cast<double>(gv - K / lv);
    k.entropy = static_cast<double>(2 * gv + v2 * horner(t.hs, v2) - K / lv);
    k.energy = static_cast<double>(g1);
    k.heat = static_cast<double>(2 * g1 + lv * g2);
    return k;
  }
  const Hyp x = hyp(lv);
  const ld coth = 1 + x.e;
  k.free = static_cast<double>((1 - K) / lv + x.e / lv - 1 / v2);
  k.entropy = static_cast<double>((1 - K) / lv + x.e / lv - x.E);
  k.energy = static_cast<double>(1 / v2 - x.E);
  // 2 g' + v g'' = 2 coth E v - 2 E.
  k.heat = static_cast<double>(2 * coth * x.E * lv - 2 * x.E);
  return k;
}

}  // namespace cavitherm::specfun
