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
#include "cavitherm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cavitherm/regularize.hpp"
#include "cavitherm/specfun.hpp"

namespace cavitherm::thermo {
namespace {

constexpr double kPi2 = kPi * kPi;
// Above v = 18 the exponential parts of every kernel are below 1e-15 of
// the power-law parts, so the summand is smooth on the lattice scale.
constexpr double kSmoothV = 18.0;
// Relative step for the specific-heat stencil.
constexpr double kHeatStep = 2e-3;

void require_temperature(double T) {
  if (!std::isfinite(T) || T < 0.0)
    throw DomainError("temperature must be finite and non-negative");
}

double relative_error(const lattice::SumResult& r) {
  return r.magnitude > 0.0 ? r.truncation_error_estimate / r.magnitude : 0.0;
}

}  // namespace

double blackbody_free_energy(double T, const CavityGeometry& g) {
  require_temperature(T);
  const double T2 = T * T;
  return -kPi2 / 45.0 * g.volume() * T2 * T2 - kPi2 / 12.0 * g.edge_sum() * T2;
}

double blackbody_entropy(double T, const CavityGeometry& g) {
  require_temperature(T);
  return 4.0 * kPi2 / 45.0 * g.volume() * T * T * T +
         kPi2 / 6.0 * g.edge_sum() * T;
}

double blackbody_energy(double T, const CavityGeometry& g) {
  require_temperature(T);
  const double T2 = T * T;
  return kPi2 / 15.0 * g.volume() * T2 * T2 + kPi2 / 12.0 * g.edge_sum() * T2;
}

double blackbody_specific_heat(double T, const CavityGeometry& g) {
  require_temperature(T);
  return 4.0 * kPi2 / 15.0 * g.volume() * T * T * T +
         kPi2 / 6.0 * g.edge_sum() * T;
}

std::array<double, 3> blackbody_pressures(double T, const CavityGeometry& g) {
  require_temperature(T);
  const double T2 = T * T;
  std::array<double, 3> p{};
  for (int j = 0; j < 3; ++j)
    p[j] = kPi2 / 45.0 * T2 * T2 + kPi2 / 12.0 * T2 * g.a(j) / g.volume();
  return p;
}

std::int64_t BranchSignature::branch_id() const noexcept {
  return volume_inactive + edge_inactive[0] + edge_inactive[1] +
         edge_inactive[2];
}

bool BranchSignature::dominates(const BranchSignature& o) const noexcept {
  if (volume_active < o.volume_active) return false;
  for (int k = 0; k < 3; ++k)
    if (edge_active[k] < o.edge_active[k]) return false;
  return true;
}

CavityThermo::CavityThermo(const CavityGeometry& geometry,
                           const CutoffConstants& cutoffs,
                           const SumPolicy& policy)
    : geometry_(geometry), cutoffs_(cutoffs), policy_(policy) {
  policy_.validate();
  if (!(cutoffs_.v_V > 0.0) || !(cutoffs_.v_E > 0.0))
    throw DomainError("cutoff constants must be positive");
  volume_shells_ = std::make_shared<lattice::ShellEnumerator>(
      geometry_, policy_, lattice::SumKind::volume_3d);
  for (int k = 0; k < 3; ++k)
    edge_shells_[k] = std::make_shared<lattice::ShellEnumerator>(
        geometry_, policy_, lattice::edge_kind(k));
}

const lattice::CasimirSums& CavityThermo::casimir_sums() const {
  std::lock_guard<std::mutex> lock(casimir_mutex_);
  if (!casimir_) casimir_ = lattice::casimir_sums(*volume_shells_);
  return *casimir_;
}

double CavityThermo::casimir_energy() const {
  return lattice::casimir_energy(geometry_, casimir_sums());
}

std::array<double, 3> CavityThermo::casimir_energy_gradient() const {
  const lattice::CasimirSums& s = casimir_sums();
  return {lattice::casimir_energy_derivative(geometry_, s, 0),
          lattice::casimir_energy_derivative(geometry_, s, 1),
          lattice::casimir_energy_derivative(geometry_, s, 2)};
}

DeltaParts CavityThermo::compute(double T, Plan* plan) const {
  require_temperature(T);
  DeltaParts out;
  const double e0 = casimir_energy();
  const std::array<double, 3> grad0 = casimir_energy_gradient();
  out.free_energy = e0;
  out.energy = e0;
  out.free_energy_gradient = grad0;
  out.max_sum_error = relative_error(casimir_sums().inv_u4);
  if (T == 0.0) return out;

  const double piT = kPi * T;
  const double vV = cutoffs_.v_V, vE = cutoffs_.v_E;
  const double V = geometry_.volume();

  lattice::SumHints vh;
  vh.channels = 6;
  vh.joint_tolerance = true;
  vh.smooth_beyond = kSmoothV / piT;
  vh.step = vV / piT;
  const auto vol = lattice::sum_multi(
      *volume_shells_,
      [piT, vV](const lattice::ImageSample& s, double* o) {
        const double v = piT * s.u;
        const specfun::VolumeKernels k =
            specfun::volume_kernels(v, v >= vV ? 1 : 0);
        o[0] = k.free;
        o[1] = k.entropy;
        o[2] = k.energy;
        // v dh/dv * (du/da_j) a_j / u, with (du/da_j) a_j / u = 4 x_j^2/u^2.
        const double r = v * k.free_prime * 4.0 / (s.u * s.u);
        o[3] = r * s.xsq[0];
        o[4] = r * s.xsq[1];
        o[5] = r * s.xsq[2];
      },
      vh);
  for (const auto& r : vol)
    out.max_sum_error = std::max(out.max_sum_error, relative_error(r));
  if (plan) plan->volume_u = vol[0].cutoff_u;

  const double T2 = T * T, T3 = T2 * T, T4 = T2 * T2;
  out.free_energy += 0.5 * kPi2 * V * T4 * vol[0].value;
  out.entropy -= 0.5 * kPi2 * V * T3 * vol[1].value;
  out.energy -= 0.5 * kPi2 * V * T4 * vol[2].value;
  for (int j = 0; j < 3; ++j)
    out.free_energy_gradient[j] += 0.5 * kPi2 * T4 * V / geometry_.a(j) *
                                   (vol[0].value + vol[3 + j].value);

  for (int k = 0; k < 3; ++k) {
    lattice::SumHints eh;
    eh.channels = 3;
    eh.joint_tolerance = true;
    eh.smooth_beyond = kSmoothV / piT;
    eh.step = vE / piT;
    const auto edge = lattice::sum_multi(
        *edge_shells_[k],
        [piT, vE](const lattice::ImageSample& s, double* o) {
          const double v = piT * s.u;
          const specfun::EdgeKernels e =
              specfun::edge_kernels(v, v >= vE ? 1 : 0);
          o[0] = e.free;
          o[1] = e.entropy;
          o[2] = e.energy;
        },
        eh);
    for (const auto& r : edge)
      out.max_sum_error = std::max(out.max_sum_error, relative_error(r));
    if (plan) plan->edge_u[k] = edge[0].cutoff_u;
    const double a = geometry_.a(k);
    out.free_energy += 0.25 * kPi * T2 * a * edge[0].value;
    out.entropy -= 0.25 * kPi * T * a * edge[1].value;
    out.energy -= 0.25 * kPi * T2 * a * edge[2].value;
    // d/da_k [a_k f_E(v)] = f_E + v f_E' = g'(v).
    out.free_energy_gradient[k] += 0.25 * kPi * T2 * edge[2].value;
  }
  return out;
}

DeltaParts CavityThermo::delta_parts(double T) const {
  return compute(T, nullptr);
}

double CavityThermo::delta_free_energy(double T) const {
  return compute(T, nullptr).free_energy;
}

double CavityThermo::delta_entropy(double T) const {
  return compute(T, nullptr).entropy;
}

double CavityThermo::delta_energy(double T) const {
  return compute(T, nullptr).energy;
}

double CavityThermo::delta_energy_planned(double T, const Plan& plan) const {
  require_temperature(T);
  double e = casimir_energy();
  if (T == 0.0) return e;
  const double piT = kPi * T;
  const double T2 = T * T;
  lattice::SumHints vh;
  vh.smooth_beyond = kSmoothV / piT;
  vh.cutoff = plan.volume_u;
  const auto vol = lattice::volume_sum(
      *volume_shells_,
      [piT](double u) { return specfun::energy_volume_kernel(piT * u); }, vh);
  e -= 0.5 * kPi2 * geometry_.volume() * T2 * T2 * vol.value;
  for (int k = 0; k < 3; ++k) {
    lattice::SumHints eh;
    eh.smooth_beyond = kSmoothV / piT;
    eh.cutoff = plan.edge_u[k];
    eh.channels = 1;
    const auto edge = lattice::sum_multi(
        *edge_shells_[k],
        [piT](const lattice::ImageSample& s, double* o) {
          o[0] = specfun::energy_edge_kernel(piT * s.u);
        },
        eh)[0];
    e -= 0.25 * kPi * T2 * geometry_.a(k) * edge.value;
  }
  return e;
}

double CavityThermo::delta_specific_heat(double T) const {
  require_temperature(T);
  if (!(T > 0.0)) throw DomainError("specific heat needs T > 0");
  Plan plan;
  compute(T, &plan);
  const double h = kHeatStep * T;
  if (!(h > 0.0) || T + h == T || T - h == T)
    throw NumericalFailure("specific-heat step underflows");
  auto D = [&](double step) {
    return (delta_energy_planned(T + step, plan) -
            delta_energy_planned(T - step, plan)) /
           (2.0 * step);
  };
  const double d1 = D(h);
  const double d2 = D(0.5 * h);
  const double rich = (4.0 * d2 - d1) / 3.0;
  if (!std::isfinite(rich)) throw NumericalFailure("specific heat is not finite");
  return rich;
}

double CavityThermo::specific_heat(double T) const {
  return blackbody_specific_heat(T, geometry_) + delta_specific_heat(T);
}

double CavityThermo::delta_specific_heat_analytic(double T) const {
  require_temperature(T);
  if (T == 0.0) return 0.0;
  const double piT = kPi * T;
  lattice::SumHints vh;
  vh.smooth_beyond = kSmoothV / piT;
  const auto vol = lattice::volume_sum(
      *volume_shells_,
      [piT](double u) { return specfun::volume_kernels(piT * u, 0).heat; },
      vh);
  double c = -0.5 * kPi2 * geometry_.volume() * T * T * T * vol.value;
  for (int k = 0; k < 3; ++k) {
    lattice::SumHints eh;
    eh.smooth_beyond = kSmoothV / piT;
    eh.channels = 1;
    const auto edge = lattice::sum_multi(
        *edge_shells_[k],
        [piT](const lattice::ImageSample& s, double* o) {
          o[0] = specfun::edge_kernels(piT * s.u, 0).heat;
        },
        eh)[0];
    c -= 0.25 * kPi * T * geometry_.a(k) * edge.value;
  }
  return c;
}

std::array<double, 3> CavityThermo::delta_pressures(double T) const {
  const ThermoPoint pt = ThermoPoint::from_T(geometry_, T);
  if (const auto xc = crossing_near(pt.xi, kBoundaryExclusion)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "xi = " << pt.xi << " lies on the branch boundary at xi = " << *xc;
    throw BranchBoundary(msg.str(), *xc);
  }
  const DeltaParts d = compute(T, nullptr);
  std::array<double, 3> p{};
  for (int j = 0; j < 3; ++j)
    p[j] = -geometry_.a(j) / geometry_.volume() * d.free_energy_gradient[j];
  return p;
}

std::array<double, 3> CavityThermo::pressures(double T) const {
  std::array<double, 3> p = delta_pressures(T);
  const std::array<double, 3> bb = blackbody_pressures(T, geometry_);
  for (int j = 0; j < 3; ++j) p[j] += bb[j];
  return p;
}

ThermoReport CavityThermo::evaluate(double T, bool with_specific_heat) const {
  ThermoReport r;
  r.point = ThermoPoint::from_T(geometry_, T);
  if (const auto xc = crossing_near(r.point.xi, kBoundaryExclusion)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "xi = " << r.point.xi << " lies on the branch boundary at xi = "
        << *xc;
    throw BranchBoundary(msg.str(), *xc);
  }
  const DeltaParts d = compute(T, nullptr);
  const CavityGeometry& g = geometry_;
  const double V = g.volume();
  r.casimir_energy = casimir_energy();
  r.max_sum_error = d.max_sum_error;

  auto fill = [](Decomposed& q, double bb, double delta) {
    q.blackbody = bb;
    q.delta = delta;
    q.total = bb + delta;
  };
  fill(r.F, blackbody_free_energy(T, g), d.free_energy);
  fill(r.S, blackbody_entropy(T, g), d.entropy);
  fill(r.E, blackbody_energy(T, g), d.energy);
  if (with_specific_heat && T > 0.0)
    fill(r.C_V, blackbody_specific_heat(T, g), delta_specific_heat(T));
  const std::array<double, 3> pbb = blackbody_pressures(T, g);
  for (int j = 0; j < 3; ++j)
    fill(r.P[j], pbb[j], -g.a(j) / V * d.free_energy_gradient[j]);

  const double a1 = g.a1();
  auto scale = [](const Decomposed& q, double s) {
    return Decomposed{q.total * s, q.blackbody * s, q.delta * s};
  };
  r.f = scale(r.F, kPi * a1);
  r.s = r.S;
  r.e = scale(r.E, kPi * a1);
  r.c_v = r.C_V;
  for (int j = 0; j < 3; ++j) r.p[j] = scale(r.P[j], kPi * a1 * a1 * a1 * a1);

  const double pv = (r.P[0].total + r.P[1].total + r.P[2].total) * V;
  r.eos_residual = r.E.total != 0.0
                       ? std::fabs(r.E.total - pv) / std::fabs(r.E.total)
                       : std::fabs(pv);
  r.branch = branch_signature(T);
  return r;
}

BranchSignature CavityThermo::branch_signature(double T) const {
  require_temperature(T);
  BranchSignature b;
  const double piT = kPi * T;
  auto split = [](const lattice::ShellEnumerator& sh, double u_cut,
                  std::int64_t& active, std::int64_t& inactive) {
    const double B = sh.budget_u();
    const std::int64_t all = sh.count_below(B);
    if (!(u_cut < B)) {
      inactive = all;
      active = 0;
      return;
    }
    inactive = sh.count_below(u_cut);
    active = all - inactive;
  };
  const double inf = std::numeric_limits<double>::infinity();
  split(*volume_shells_, T > 0.0 ? cutoffs_.v_V / piT : inf, b.volume_active,
        b.volume_inactive);
  for (int k = 0; k < 3; ++k)
    split(*edge_shells_[k], T > 0.0 ? cutoffs_.v_E / piT : inf,
          b.edge_active[k], b.edge_inactive[k]);
  return b;
}

std::vector<double> CavityThermo::branch_boundaries(double xi_max,
                                                    double xi_min) const {
  if (!(xi_max > 0.0)) throw DomainError("xi_max must be positive");
  const double a1 = geometry_.a1();
  const double vV = cutoffs_.v_V, vE = cutoffs_.v_E;
  const double B = volume_shells_->budget_u();
  if (!(xi_min > 0.0)) xi_min = vV * a1 / B;
  std::vector<double> xs;
  if (xi_min >= xi_max) return xs;

  // Volume: xi = v_V a1 / u over enumerated images.
  const double ulo = vV * a1 / xi_max;
  const double uhi = std::min(B, vV * a1 / xi_min);
  if (ulo < uhi) {
    const auto entries = volume_shells_->entries_below(uhi);
    double last = -1.0;
    for (const lattice::ImageEntry& e : *entries) {
      if (e.u < ulo) continue;
      if (e.u > uhi) break;
      if (e.u == last) continue;
      last = e.u;
      xs.push_back(vV * a1 / e.u);
    }
  }
  // Edges: xi = v_E a1 / (2 a_k n).
  for (int k = 0; k < 3; ++k) {
    const double a = geometry_.a(k);
    const auto nlo = static_cast<std::int64_t>(std::ceil(vE * a1 / (xi_max * 2.0 * a)));
    const auto nhi = static_cast<std::int64_t>(std::floor(vE * a1 / (xi_min * 2.0 * a)));
    for (std::int64_t n = std::max<std::int64_t>(1, nlo); n <= nhi; ++n)
      xs.push_back(vE * a1 / (2.0 * a * static_cast<double>(n)));
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> merged;
  for (double x : xs) {
    if (x < xi_min || x > xi_max) continue;
    if (!merged.empty() && std::fabs(x - merged.back()) <= 1e-14 * x) continue;
    merged.push_back(x);
  }
  return merged;
}

std::optional<double> CavityThermo::crossing_near(double xi,
                                                  double tolerance) const {
  if (!(xi > 0.0)) return std::nullopt;
  const double a1 = geometry_.a1();
  const double xlo = xi - tolerance, xhi = xi + tolerance;
  // Images whose crossing xi falls in (xlo, xhi) have u in (c/xhi, c/xlo).
  auto find = [&](const lattice::ShellEnumerator& sh,
                  double vcut) -> std::optional<double> {
    const double c = vcut * a1;
    const double lo = c / xhi;
    const double hi = xlo > 0.0 ? std::min(c / xlo, sh.budget_u())
                                : sh.budget_u();
    if (!(lo < hi)) return std::nullopt;
    const std::int64_t nlo = sh.count_below(lo);
    if (sh.count_below(hi) == nlo) return std::nullopt;
    // Bisect on the counting function for the first image above lo.
    double a = lo, b = hi;
    for (int i = 0; i < 200 && b - a > 1e-15 * b; ++i) {
      const double m = 0.5 * (a + b);
      if (sh.count_below(m) > nlo)
        b = m;
      else
        a = m;
    }
    return c / a;
  };
  if (auto x = find(*volume_shells_, cutoffs_.v_V)) return x;
  for (int k = 0; k < 3; ++k)
    if (auto x = find(*edge_shells_[k], cutoffs_.v_E)) return x;
  return std::nullopt;
}

double delta_free_energy(double T, const CavityGeometry& g,
                         const CutoffConstants& c, const SumPolicy& p) {
  return CavityThermo(g, c, p).delta_free_energy(T);
}

double delta_entropy(double T, const CavityGeometry& g,
                     const CutoffConstants& c, const SumPolicy& p) {
  return CavityThermo(g, c, p).delta_entropy(T);
}

double delta_energy(double T, const CavityGeometry& g, const SumPolicy& p) {
  // The energy kernels carry no cutoff; any positive constants will do.
  return CavityThermo(g, CutoffConstants{1.0, 1.0}, p).delta_energy(T);
}

double specific_heat(double T, const CavityGeometry& g, const SumPolicy& p) {
  return CavityThermo(g, CutoffConstants{1.0, 1.0}, p).specific_heat(T);
}

std::array<double, 3> pressures(double T, const CavityGeometry& g,
                                const CutoffConstants& c, const SumPolicy& p) {
  return CavityThermo(g, c, p).pressures(T);
}

std::vector<double> branch_boundaries(const CavityGeometry& g,
                                      const CutoffConstants& c,
                                      const SumPolicy& p, double xi_max,
                                      double xi_min) {
  return CavityThermo(g, c, p).branch_boundaries(xi_max, xi_min);
}

}  // namespace cavitherm::thermo
