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
#include "cavitherm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <utility>
#include <vector>

#include "cavitherm/errors.hpp"
#include "cavitherm/numeric.hpp"
#include "cavitherm/thermo.hpp"

namespace cavitherm::oracle {
namespace {

// Upper bound on the weighted mode count: every admissible triple has
// n_i <= w a_i / pi and weight <= 2.
double count_bound(const CavityGeometry& g, double w) {
  double p = 2.0;
  for (int i = 0; i < 3; ++i) p *= w * g.a(i) / kPi + 1.0;
  return p;
}

double count_bound_prime(const CavityGeometry& g, double w) {
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    double p = 2.0 * g.a(j) / kPi;
    for (int i = 0; i < 3; ++i)
      if (i != j) p *= w * g.a(i) / kPi + 1.0;
    total += p;
  }
  return total;
}

// Sum over modes above W of a positive, decreasing phi is at most
// N_b(W) phi(W) + int_W^inf N_b'(w) phi(w) dw (integration by parts against
// the counting function, with N <= N_b).
double tail_bound(const CavityGeometry& g, double T, double W,
                  const std::function<double(double)>& phi) {
  const auto r = integrate_unchecked(
      [&](double w) { return count_bound_prime(g, w) * phi(w); }, W,
      W + 200.0 * T);
  return count_bound(g, W) * phi(W) + r.value + r.error_estimate;
}

// Per-mode thermal functions of x = w/T.
double mode_free(double x) { return std::log1p(-std::exp(-x)); }  // times T
double mode_entropy(double x) {
  return -std::log1p(-std::exp(-x)) + x / std::expm1(x);
}
double mode_energy(double x) { return x / std::expm1(x); }  // times T
double mode_heat(double x) {
  const double s = 2.0 * std::sinh(0.5 * x);
  return x * x / (s * s);
}

template <typename F>
void for_each_mode(const CavityGeometry& g, double omega_max, F&& visit) {
  const double k = omega_max / kPi;
  const auto m1 = static_cast<std::int64_t>(std::floor(k * g.a1()));
  for (std::int64_t n1 = 0; n1 <= m1; ++n1) {
    const double r1 = k * k - std::pow(n1 / g.a1(), 2);
    if (r1 < 0.0) break;
    const auto m2 = static_cast<std::int64_t>(std::floor(g.a2() * std::sqrt(r1)));
    for (std::int64_t n2 = 0; n2 <= m2; ++n2) {
      const double r2 = r1 - std::pow(n2 / g.a2(), 2);
      if (r2 < 0.0) break;
      const auto m3 =
          static_cast<std::int64_t>(std::floor(g.a3() * std::sqrt(r2)));
      for (std::int64_t n3 = 0; n3 <= m3; ++n3) {
        if (n1 == 0 && n2 == 0 && n3 == 0) continue;
        const int w = mode_weight(n1, n2, n3);
        if (w == 0) continue;
        const double omega =
            kPi * std::sqrt(std::pow(n1 / g.a1(), 2) + std::pow(n2 / g.a2(), 2) +
                            std::pow(n3 / g.a3(), 2));
        if (omega <= omega_max) visit(w, omega);
      }
    }
  }
}

// Wynn epsilon on the tail of a sequence of partial sums.
double wynn_epsilon(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n < 3) return s.empty() ? 0.0 : s.back();
  std::vector<double> prev(n + 1, 0.0), cur(s.begin(), s.end());
  double best = s.back();
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<double> next(n - col);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double d = cur[i + 1] - cur[i];
      if (d == 0.0) return cur[i + 1];
      next[i] = prev[i + 1] + 1.0 / d;
    }
    prev = cur;
    cur = next;
    if (col % 2 == 0 && !cur.empty() && std::isfinite(cur.back()))
      best = cur.back();
  }
  return best;
}

// Sums panel integrals over [p_j, p_{j+1}] with p_0 = 0, p_1 = first and
// uniform width afterwards, until the accelerated estimate settles.
double panel_sum(const std::function<double(double)>& f, double first,
                 double width, double scale) {
  constexpr int kMaxPanels = 200000;
  constexpr int kWindow = 24;
  std::vector<double> partial;
  CompensatedSum acc;
  double a = 0.0, b = first;
  double last_est = 0.0;
  int stable = 0;
  for (int j = 0; j < kMaxPanels; ++j) {
    const auto r = integrate_unchecked(f, a, b);
    acc.add(r.value);
    partial.push_back(acc.value());
    if (partial.size() > kWindow) partial.erase(partial.begin());
    const double est = wynn_epsilon(partial);
    const double tol = 1e-15 * std::max(scale, std::abs(est));
    if (std::abs(r.value) < 1e-17 * std::max(scale, std::abs(acc.value())))
      return acc.value();
    if (j >= 6 && std::abs(est - last_est) < tol) {
      if (++stable >= 3) return est;
    } else {
      stable = 0;
    }
    last_est = est;
    a = b;
    b += width;
  }
  throw QuadratureFailure("oscillatory panel sum did not converge");
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError(std::string(what) + " must be positive and finite");
}

}  // namespace

DirectThermal direct_thermal(double T, const CavityGeometry& geometry,
                             double omega_max) {
  DirectThermal out;
  if (!(T >= 0.0)) throw DomainError("direct_thermal: T must be >= 0");
  if (T == 0.0) return out;
  if (!(omega_max >= 30.0 * T)) {
    std::ostringstream msg;
    msg << "omega_max " << omega_max << " is below 30 T = " << 30.0 * T;
    throw TailBoundTooLarge(msg.str());
  }
  CompensatedSum f, s, e, c;
  std::int64_t modes = 0;
  for_each_mode(geometry, omega_max, [&](int w, double omega) {
    const double x = omega / T;
    f.add(w * T * mode_free(x));
    s.add(w * mode_entropy(x));
    e.add(w * T * mode_energy(x));
    c.add(w * mode_heat(x));
    ++modes;
  });
  out.modes = modes;
  out.free_energy.value = f.value();
  out.entropy.value = s.value();
  out.energy.value = e.value();
  out.specific_heat.value = c.value();
  out.free_energy.tail_bound = tail_bound(
      geometry, T, omega_max, [T](double w) { return -T * mode_free(w / T); });
  out.entropy.tail_bound = tail_bound(
      geometry, T, omega_max, [T](double w) { return mode_entropy(w / T); });
  out.energy.tail_bound = tail_bound(
      geometry, T, omega_max, [T](double w) { return T * mode_energy(w / T); });
  out.specific_heat.tail_bound = tail_bound(
      geometry, T, omega_max, [T](double w) { return mode_heat(w / T); });
  return out;
}

DirectValue direct_thermal_free_energy(double T, const CavityGeometry& geometry,
                                       double omega_max) {
  return direct_thermal(T, geometry, omega_max).free_energy;
}

double direct_entropy(double T, const CavityGeometry& geometry,
                      double omega_max) {
  return direct_thermal(T, geometry, omega_max).entropy.value;
}

double direct_energy(double T, const CavityGeometry& geometry,
                     double omega_max) {
  return direct_thermal(T, geometry, omega_max).energy.value;
}

SmoothThermal weyl_thermal(double T, const CavityGeometry& g) {
  const double V = g.volume(), L = g.edge_sum();
  const double T2 = T * T, T4 = T2 * T2;
  SmoothThermal s;
  s.free_energy = -kPi * kPi / 45.0 * V * T4 + kPi / 12.0 * L * T2;
  s.entropy = 4.0 * kPi * kPi / 45.0 * V * T2 * T - kPi / 6.0 * L * T;
  s.energy = kPi * kPi / 15.0 * V * T4 - kPi / 12.0 * L * T2;
  return s;
}

ComparisonReport compare_regularized(double T, const CavityGeometry& geometry,
                                     const CutoffConstants& cutoffs,
                                     const SumPolicy& policy,
                                     double omega_max) {
  ComparisonReport r;
  r.T = T;
  r.xi = kPi * T * geometry.a1();
  if (!(omega_max > 0.0)) omega_max = 40.0 * T;
  const thermo::CavityThermo th(geometry, cutoffs, policy);
  r.casimir_energy = th.casimir_energy();
  const thermo::DeltaParts d = th.delta_parts(T);
  r.delta_free_energy = d.free_energy;
  r.delta_entropy = d.entropy;
  r.delta_energy = d.energy;
  if (T == 0.0) return r;
  r.direct = direct_thermal(T, geometry, omega_max);

  auto compare = [](double direct, std::initializer_list<double> pieces) {
    RouteComparison c;
    double scale = 0.0;
    for (double p : pieces) {
      c.route += p;
      scale += std::abs(p);
    }
    c.direct = direct;
    c.abs_diff = std::abs(c.route - direct);
    c.rel_to_direct = direct != 0.0 ? c.abs_diff / std::abs(direct) : 0.0;
    c.rel_to_terms = scale > 0.0 ? c.abs_diff / scale : 0.0;
    return c;
  };
  const double dF = d.free_energy - r.casimir_energy;
  const double dE = d.energy - r.casimir_energy;
  r.free_energy_blackbody =
      compare(r.direct.free_energy.value,
              {thermo::blackbody_free_energy(T, geometry), dF});
  r.entropy_blackbody = compare(
      r.direct.entropy.value, {thermo::blackbody_entropy(T, geometry), d.entropy});
  r.energy_blackbody = compare(r.direct.energy.value,
                               {thermo::blackbody_energy(T, geometry), dE});
  const SmoothThermal w = weyl_thermal(T, geometry);
  r.free_energy_weyl = compare(r.direct.free_energy.value, {w.free_energy, dF});
  r.entropy_weyl = compare(r.direct.entropy.value, {w.entropy, d.entropy});
  r.energy_weyl = compare(r.direct.energy.value, {w.energy, dE, 0.5 * T});
  return r;
}

double appendix_integral_sin(double u, double beta) {
  require_positive(u, "u");
  require_positive(beta, "beta");
  auto f = [u, beta](double w) {
    if (w == 0.0) return u / beta;
    return std::sin(u * w) / std::expm1(beta * w);
  };
  const double width = kPi / u;
  return panel_sum(f, width, width, u / beta * width);
}

double appendix_integral_omega_cos(double u, double beta) {
  require_positive(u, "u");
  require_positive(beta, "beta");
  auto f = [u, beta](double w) {
    if (w == 0.0) return 1.0 / beta;
    return w * std::cos(u * w) / std::expm1(beta * w);
  };
  const double width = kPi / u;
  return panel_sum(f, 0.5 * width, width, width / beta);
}

double appendix_sin_closed_form(double u, double beta, int K) {
  require_positive(u, "u");
  require_positive(beta, "beta");
  if (K < -1 || K > 1) throw DomainError("K must be -1, 0 or 1");
  const double x = kPi * u / beta;
  return kPi / (2.0 * beta) * (1.0 / std::tanh(x) - K) - 0.5 / u;
}

double appendix_omega_cos_closed_form(double u, double beta) {
  require_positive(u, "u");
  require_positive(beta, "beta");
  const double x = kPi * u / beta;
  const double csch = x > 700.0 ? 0.0 : 1.0 / std::sinh(x);
  return -0.5 * std::pow(kPi / beta, 2) * csch * csch + 0.5 / (u * u);
}

double brute_force_mode_count(const CavityGeometry& g, double omega) {
  if (!(omega > 0.0)) return 0.0;
  const double k = omega / kPi;
  const auto m1 = static_cast<std::int64_t>(std::floor(k * g.a1()));
  const auto m2 = static_cast<std::int64_t>(std::floor(k * g.a2()));
  const auto m3 = static_cast<std::int64_t>(std::floor(k * g.a3()));
  double n = 0.0;
  for (std::int64_t i = 0; i <= m1; ++i)
    for (std::int64_t j = 0; j <= m2; ++j)
      for (std::int64_t l = 0; l <= m3; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        const double w = kPi * std::sqrt(std::pow(i / g.a1(), 2) +
                                         std::pow(j / g.a2(), 2) +
                                         std::pow(l / g.a3(), 2));
        if (w <= omega) n += mode_weight(i, j, l);
      }
  return n;
}

WeylReport weyl_check(const CavityGeometry& geometry, double omega_lo,
                      double omega_hi, int samples) {
  if (!(omega_lo > 0.0) || !(omega_hi > omega_lo) || samples < 2)
    throw DomainError("weyl_check: need 0 < omega_lo < omega_hi, samples >= 2");
  std::vector<std::pair<double, int>> modes;
  for_each_mode(geometry, omega_hi,
                [&](int w, double omega) { modes.emplace_back(omega, w); });
  std::sort(modes.begin(), modes.end());
  WeylReport r;
  r.samples = samples;
  CompensatedSum diff, count;
  std::size_t idx = 0;
  double running = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double w =
        omega_lo + (omega_hi - omega_lo) * i / static_cast<double>(samples - 1);
    while (idx < modes.size() && modes[idx].first <= w)
      running += modes[idx++].second;
    const double smooth = geometry.volume() * w * w * w / (3.0 * kPi * kPi) -
                          geometry.edge_sum() * w / (2.0 * kPi);
    diff.add(running - smooth);
    count.add(running);
    r.max_abs_difference = std::max(r.max_abs_difference, std::abs(running - smooth));
  }
  r.mean_difference = diff.value() / samples;
  r.mean_count = count.value() / samples;
  r.relative_drift =
      r.mean_count > 0.0 ? std::abs(r.mean_difference) / r.mean_count : 0.0;
  return r;
}

}  // namespace cavitherm::oracle
