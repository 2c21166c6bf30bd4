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
#include "cavitherm/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cavitherm {

double CavityGeometry::max_edge() const noexcept {
  return std::max({a_[0], a_[1], a_[2]});
}

CavityGeometry validate_geometry(double a1, double a2, double a3) {
  const double a[3] = {a1, a2, a3};
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(a[i]) || !(a[i] > 0.0)) {
      std::ostringstream msg;
      msg << "edge a" << (i + 1) << " = " << a[i]
          << " must be positive and finite";
      throw InvalidGeometry(msg.str());
    }
  }
  return CavityGeometry(a1, a2, a3);
}

int mode_weight(std::int64_t n1, std::int64_t n2, std::int64_t n3) {
  if (n1 < 0 || n2 < 0 || n3 < 0)
    throw DomainError("mode indices must be non-negative");
  const int zeros = (n1 == 0) + (n2 == 0) + (n3 == 0);
  switch (zeros) {
    case 0: return 2;
    case 1: return 1;
    case 2: return 0;
    default: throw ExcludedMode("the (0,0,0) mode is excluded");
  }
}

ModeTriple ModeTriple::make(std::int64_t n1, std::int64_t n2,
                            std::int64_t n3) {
  return ModeTriple{n1, n2, n3, mode_weight(n1, n2, n3)};
}

double ModeTriple::omega(const CavityGeometry& g) const noexcept {
  const double x = static_cast<double>(n1) / g.a1();
  const double y = static_cast<double>(n2) / g.a2();
  const double z = static_cast<double>(n3) / g.a3();
  return kPi * std::sqrt(x * x + y * y + z * z);
}

double image_u(const CavityGeometry& g, std::int64_t n1, std::int64_t n2,
               std::int64_t n3) noexcept {
  const double x = static_cast<double>(n1) * g.a1();
  const double y = static_cast<double>(n2) * g.a2();
  const double z = static_cast<double>(n3) * g.a3();
  return 2.0 * std::sqrt(x * x + y * y + z * z);
}

ImageVector ImageVector::make(const CavityGeometry& g, std::int64_t n1,
                              std::int64_t n2, std::int64_t n3) {
  if (n1 == 0 && n2 == 0 && n3 == 0)
    throw ExcludedMode("the origin is not an image vector");
  return ImageVector{n1, n2, n3, image_u(g, n1, n2, n3)};
}

ThermoPoint ThermoPoint::from_T(const CavityGeometry& g, double T) {
  if (!std::isfinite(T) || T < 0.0)
    throw DomainError("temperature must be finite and non-negative");
  return ThermoPoint{T, kPi * T * g.a1()};
}

ThermoPoint ThermoPoint::from_xi(const CavityGeometry& g, double xi) {
  if (!std::isfinite(xi) || xi < 0.0)
    throw DomainError("xi must be finite and non-negative");
  return ThermoPoint{xi / (kPi * g.a1()), xi};
}

std::string_view to_string(TailMethod m) noexcept {
  switch (m) {
    case TailMethod::none: return "none";
    case TailMethod::continuum_integral: return "continuum_integral";
    case TailMethod::extrapolation: return "extrapolation";
  }
  return "unknown";
}

TailMethod tail_method_from_string(std::string_view s) {
  if (s == "none") return TailMethod::none;
  if (s == "continuum_integral") return TailMethod::continuum_integral;
  if (s == "extrapolation") return TailMethod::extrapolation;
  throw ConfigError("unknown tail method '" + std::string(s) + "'");
}

void SumPolicy::validate() const {
  if (max_shell_radius < 1) throw ConfigError("max_shell_radius must be >= 1");
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
    throw ConfigError("rel_tol must be positive");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

}  // namespace cavitherm
