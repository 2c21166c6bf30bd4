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

// Shared value types. Everything is in natural units (hbar = c = k_B = 1):
// lengths and image vectors u carry the same unit, temperature is an inverse
// length. Dimensionless reporting happens only in thermo/cli.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "cavitherm/errors.hpp"

namespace cavitherm {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

class CavityGeometry {
 public:
  double a1() const noexcept { return a_[0]; }
  double a2() const noexcept { return a_[1]; }
  double a3() const noexcept { return a_[2]; }
  // Zero-based axis index.
  double a(int axis) const { return a_.at(static_cast<std::size_t>(axis)); }
  const std::array<double, 3>& edges() const noexcept { return a_; }
  double volume() const noexcept { return a_[0] * a_[1] * a_[2]; }
  double edge_sum() const noexcept { return a_[0] + a_[1] + a_[2]; }
  double max_edge() const noexcept;
  double r2() const noexcept { return r2_; }
  double r3() const noexcept { return r3_; }

  friend bool operator==(const CavityGeometry&, const CavityGeometry&) = default;

 private:
  friend CavityGeometry validate_geometry(double, double, double);
  CavityGeometry(double a1, double a2, double a3)
      : a_{a1, a2, a3}, r2_(a2 / a1), r3_(a3 / a1) {}
  std::array<double, 3> a_;
  double r2_;
  double r3_;
};

// Throws InvalidGeometry for non-positive or non-finite lengths.
CavityGeometry validate_geometry(double a1, double a2, double a3);

// Polarisation weight of a non-negative mode triple: 2 for interior modes,
// 1 with one zero index, 0 with two zero indices. (0,0,0) is ExcludedMode.
int mode_weight(std::int64_t n1, std::int64_t n2, std::int64_t n3);

struct ModeTriple {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;
  int weight = 0;

  static ModeTriple make(std::int64_t n1, std::int64_t n2, std::int64_t n3);
  double omega(const CavityGeometry& g) const noexcept;
  friend bool operator==(const ModeTriple&, const ModeTriple&) = default;
};

struct ImageVector {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;
  double u = 0.0;

  // u = 2 sqrt(sum (n_i a_i)^2); the origin is rejected with ExcludedMode.
  static ImageVector make(const CavityGeometry& g, std::int64_t n1,
                          std::int64_t n2, std::int64_t n3);
  double v(double T) const noexcept { return kPi * T * u; }
};

double image_u(const CavityGeometry& g, std::int64_t n1, std::int64_t n2,
               std::int64_t n3) noexcept;

struct ThermoPoint {
  double T = 0.0;
  double xi = 0.0;

  static ThermoPoint from_T(const CavityGeometry& g, double T);
  static ThermoPoint from_xi(const CavityGeometry& g, double xi);
};

enum class TailMethod { none, continuum_integral, extrapolation };

std::string_view to_string(TailMethod m) noexcept;
TailMethod tail_method_from_string(std::string_view s);

struct SumPolicy {
  // Budget for the image lattice. The largest image length ever enumerated
  // is 2 * max_shell_radius * max(V^(1/3), a_max/2).
  int max_shell_radius = 200;
  double rel_tol = 1e-6;
  TailMethod tail_method = TailMethod::continuum_integral;
  // Worker threads for lattice reductions. Results do not depend on it.
  int threads = 1;

  void validate() const;
};

struct CutoffConstants {
  double v_V = 0.0;
  double v_E = 0.0;
};

}  // namespace cavitherm
