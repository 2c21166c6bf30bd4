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

// The coth family. With g(v) = coth v - 1/v every kernel below is a rational
// function of v, coth v and csch^2 v. Near v = 0 those pieces cancel badly,
// so each function switches to the Laurent series of g below a threshold.
// Above it the closed forms are written in q = exp(-2v) so nothing overflows
// and no O(1) quantities are subtracted at large v.

namespace cavitherm::specfun {

// Switch points between series and closed form.
inline constexpr double kGSeriesSwitch = 0.05;
inline constexpr double kDerivedSeriesSwitch = 1.0;

struct BranchValue {
  double value = 0.0;
  int K = 0;
};

struct GDerivs {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

double g(double v);
GDerivs g_derivs(double v);
double h(double v);
double h_prime(double v);

// (g(v) - K)/v and h(v) + K/v^3 for K in {-1, 0, 1}.
double f_branch(double v, int K);
double h_branch(double v, int K);
BranchValue f_branch_value(double v, int K);
BranchValue h_branch_value(double v, int K);

// d/dv of the branch functions at fixed K.
double f_branch_prime(double v, int K);
double h_branch_prime(double v, int K);

// Combined summands. Each is assembled analytically so that the large-v
// cancellations between the h and K/v^3 pieces never happen in floating
// point.
//   entropy_volume(v,K) = v h'(v) - 3K/v^3 + 4 h_V(v)
//   entropy_edge(v,K)   = 2 f_E(v) + v^2 h_E(v)
//   energy_volume(v)    = g''(v)/v
//   energy_edge(v)      = g'(v)
double entropy_volume_kernel(double v, int K);
double entropy_edge_kernel(double v, int K);
double energy_volume_kernel(double v);
double energy_edge_kernel(double v);

// Coefficient c_k of g(v) = sum_k c_k v^(2k-1), k >= 1.
double laurent_coefficient(int k);

// Modified Bessel function K_2. Underflows quietly to 0.
double bessel_k2(double x);

}  // namespace cavitherm::specfun

namespace cavitherm::specfun {

// Everything a regularised volume summand needs at one image, sharing the
// exponentials. Fields are h_V, the entropy kernel, g''/v, dh_V/dv and the
// specific-heat kernel 3 g''/v + g'''.
struct VolumeKernels {
  double free = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
  double free_prime = 0.0;
  double heat = 0.0;
};
VolumeKernels volume_kernels(double v, int K);

// Edge counterpart: f_E, the entropy kernel, g' (which is also
// f_E + v f_E'), and the specific-heat kernel 2 g' + v g''.
struct EdgeKernels {
  double free = 0.0;
  double entropy = 0.0;
  double energy = 0.0;
  double heat = 0.0;
};
EdgeKernels edge_kernels(double v, int K);

}  // namespace cavitherm::specfun
