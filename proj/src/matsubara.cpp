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
#include "cavitherm/matsubara.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cavitherm/errors.hpp"
#include "cavitherm/lattice.hpp"
#include "cavitherm/numeric.hpp"
#include "cavitherm/specfun.hpp"
#include "cavitherm/thermo.hpp"

namespace cavitherm::matsubara {
namespace {

void require_positive_T(double T, const char* who) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw DomainError(std::string(who) + ": T must be positive and finite");
}

std::array<int, 3> truncations(int k_max) {
  if (k_max < 8) throw DomainError("k_max must be at least 8");
  return {k_max / 4, k_max / 2, k_max};
}

}  // namespace

DivergenceDiagnostic log_fit(std::vector<std::pair<double, double>> points) {
  DivergenceDiagnostic d;
  d.partial_values = std::move(points);
  const auto& p = d.partial_values;
  const double n = static_cast<double>(p.size());
  if (p.empty()) return d;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double lo = p.front().second, hi = p.front().second;
  for (const auto& [t, y] : p) {
    if (!(t > 0.0)) throw DomainError("log_fit: truncations must be positive");
    const double x = std::log(t);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  const double det = n * sxx - sx * sx;
  if (p.size() >= 2 && det > 0.0) {
    d.c1 = (n * sxy - sx * sy) / det;
    d.c0 = (sy - d.c1 * sx) / n;
  } else {
    d.c0 = sy / n;
  }
  for (const auto& [t, y] : p)
    d.fit_residual =
        std::max(d.fit_residual, std::abs(y - d.c0 - d.c1 * std::log(t)));
  d.spread = hi - lo;
  return d;
}

MatsubaraDiagnostic delta_f_matsubara(double T, const CavityGeometry& geometry,
                                      int k_max, const SumPolicy& policy) {
  require_positive_T(T, "delta_f_matsubara");
  const auto ks = truncations(k_max);

  // One lattice pass per class; channel i carries the frequency sum
  // truncated at ks[i]. At fixed k both lattice sums converge.
  auto frequency_sums = [&](double u, int power, double* out) {
    const double u2 = u * u;
    CompensatedSum acc;
    int next = 0;
    for (int k = 1; k <= ks[2]; ++k) {
      const double c = k / T;
      const double d = c * c + u2;
      acc.add(power == 2 ? 1.0 / (d * d) : 1.0 / d);
      if (k == ks[next]) out[next++] = acc.value();
    }
  };

  lattice::SumHints hints;
  hints.channels = 3;
  hints.joint_tolerance = true;

  const lattice::ShellEnumerator vol(geometry, policy,
                                     lattice::SumKind::volume_3d);
  const auto vs = lattice::sum_multi(
      vol,
      [&](const lattice::ImageSample& s, double* out) {
        frequency_sums(s.u, 2, out);
      },
      hints);
  std::array<double, 3> edge{};
  for (int axis = 0; axis < 3; ++axis) {
    const lattice::ShellEnumerator es(geometry, policy,
                                      lattice::edge_kind(axis));
    const auto r = lattice::sum_multi(
        es,
        [&](const lattice::ImageSample& s, double* out) {
          frequency_sums(s.u, 1, out);
        },
        hints);
    for (int i = 0; i < 3; ++i)
      edge[static_cast<std::size_t>(i)] +=
          geometry.a(axis) / (2.0 * kPi) * r[static_cast<std::size_t>(i)].value;
  }

  std::vector<std::pair<double, double>> pv, pe, pt;
  for (int i = 0; i < 3; ++i) {
    const double k = ks[static_cast<std::size_t>(i)];
    const double v = -2.0 * geometry.volume() / (kPi * kPi) *
                     vs[static_cast<std::size_t>(i)].value;
    const double e = edge[static_cast<std::size_t>(i)];
    pv.emplace_back(k, v);
    pe.emplace_back(k, e);
    pt.emplace_back(k, v + e);
  }
  return {log_fit(pe), log_fit(pv), log_fit(pt)};
}

CorrectionSums correction_sums(double T, const CavityGeometry& geometry,
                               const CutoffConstants& cutoffs, double U) {
  CorrectionSums out;
  if (!(T > 0.0) || !(U > 0.0)) return out;
  const double uV = cutoffs.v_V / (kPi * T);
  const double uE = cutoffs.v_E / (kPi * T);
  if (uV < U) {
    const SumPolicy policy;
    const lattice::ShellEnumerator shells(geometry, policy,
                                          lattice::SumKind::volume_3d);
    if (U > shells.budget_u() * (1.0 + 1e-12))
      throw DomainError("correction_sums: U exceeds the enumeration budget");
    const auto entries = shells.entries_below(U);
    CompensatedSum acc;
    for (const auto& e : *entries) {
      if (e.u >= U) break;
      if (e.u >= uV) acc.add(e.multiplicity / (e.u * e.u * e.u));
    }
    out.volume = geometry.volume() * T / (2.0 * kPi) * acc.value();
  }
  CompensatedSum edge;
  for (int axis = 0; axis < 3; ++axis) {
    const double step = 2.0 * geometry.a(axis);
    const auto first = static_cast<std::int64_t>(std::max(1.0, std::ceil(uE / step)));
    for (std::int64_t n = first; static_cast<double>(n) * step < U; ++n)
      edge.add(1.0 / static_cast<double>(n));
  }
  out.edge = -T / 4.0 * edge.value();
  return out;
}

RelationReport relation_check(double T, const CavityGeometry& geometry,
                              const CutoffConstants& cutoffs,
                              const SumPolicy& policy, int k_max,
                              double U_top) {
  const auto ks = truncations(k_max);
  RelationReport report;
  const double dE0 = lattice::casimir_energy(geometry, policy);
  if (T == 0.0) {
    // Every thermal piece carries a power of T.
    for (int k : ks) {
      RelationLevel l;
      l.k = k;
      l.lhs = thermo::delta_free_energy(0.0, geometry, cutoffs, policy);
      l.casimir = dE0;
      l.rhs = dE0;
      l.residual = l.lhs - l.rhs;
      report.levels.push_back(l);
    }
    return report;
  }
  require_positive_T(T, "relation_check");
  const double lhs = thermo::delta_free_energy(T, geometry, cutoffs, policy);

  const lattice::ShellEnumerator shells(geometry, policy,
                                        lattice::SumKind::volume_3d);
  if (!(U_top > 0.0)) {
    const double uV = cutoffs.v_V / (kPi * T);
    // Large enough that the frequency truncation (positive, ~ U T^2/k)
    // dominates the sharp lattice cut (negative, ~ 1/U), so the residual
    // shrinks monotonically along the sequence.
    U_top = std::max(8.0 * uV, 5.0 * geometry.max_edge() * std::sqrt(ks[2]));
  }
  U_top = std::min(U_top, shells.budget_u());
  const auto entries = shells.entries_below(U_top);

  std::vector<std::pair<double, double>> corr_points;
  for (int k : ks) {
    RelationLevel l;
    l.k = k;
    l.U = U_top * std::sqrt(static_cast<double>(k) / ks[2]);
    l.lhs = lhs;
    l.casimir = dE0;
    CompensatedSum vol;
    for (const auto& e : *entries) {
      if (e.u >= l.U) break;
      const double u2 = e.u * e.u;
      CompensatedSum inner;
      for (int j = 1; j <= k; ++j) {
        const double c = j / T;
        const double d = c * c + u2;
        inner.add(1.0 / (d * d));
      }
      vol.add(e.multiplicity * inner.value());
    }
    l.matsubara_volume = -2.0 * geometry.volume() / (kPi * kPi) * vol.value();
    CompensatedSum edge;
    for (int axis = 0; axis < 3; ++axis) {
      const double a = geometry.a(axis);
      for (std::int64_t n = 1; 2.0 * a * static_cast<double>(n) < l.U; ++n) {
        const double u = 2.0 * a * static_cast<double>(n);
        CompensatedSum inner;
        for (int j = 1; j <= k; ++j) {
          const double c = j / T;
          inner.add(1.0 / (c * c + u * u));
        }
        // n and -n.
        edge.add(2.0 * a / (2.0 * kPi) * inner.value());
      }
    }
    l.matsubara_edge = edge.value();
    const CorrectionSums cs = correction_sums(T, geometry, cutoffs, l.U);
    l.correction_volume = cs.volume;
    l.correction_edge = cs.edge;
    l.rhs = dE0 + l.matsubara_volume + l.matsubara_edge + cs.volume + cs.edge;
    l.residual = l.lhs - l.rhs;
    corr_points.emplace_back(l.U, cs.volume + cs.edge);
    report.levels.push_back(l);
  }
  const double r0 = std::abs(report.levels.front().residual);
  const double r2 = std::abs(report.levels.back().residual);
  report.residual_ratio = r0 > 0.0 ? r2 / r0 : 0.0;
  report.corrections = log_fit(std::move(corr_points));
  return report;
}

ScaleFactorDiagnostic scale_factor_mu(double T, const CavityGeometry& geometry,
                                      const CutoffConstants& cutoffs,
                                      double truncation) {
  require_positive_T(T, "scale_factor_mu");
  if (!(truncation > 0.0))
    throw DomainError("scale_factor_mu: truncation must be positive");
  std::vector<std::pair<double, double>> pt, pv, pe;
  for (double f : {0.25, 0.5, 1.0}) {
    const double U = f * truncation;
    const CorrectionSums cs = correction_sums(T, geometry, cutoffs, U);
    pv.emplace_back(U, cs.volume / T);
    pe.emplace_back(U, cs.edge / T);
    pt.emplace_back(U, (cs.volume + cs.edge) / T);
  }
  return {log_fit(pt), log_fit(pv), log_fit(pe)};
}

double delta_f_massive(double T, const CavityGeometry& geometry, double m_gamma,
                       int k_max, const SumPolicy& policy) {
  require_positive_T(T, "delta_f_massive");
  if (!(m_gamma > 0.0) || !std::isfinite(m_gamma))
    throw DomainError("delta_f_massive: m_gamma must be positive");
  if (k_max < 1) throw DomainError("delta_f_massive: k_max must be positive");
  const lattice::ShellEnumerator shells(geometry, policy,
                                        lattice::SumKind::volume_3d);
  const double half_m = 0.5 * m_gamma;
  lattice::SumHints hints;
  // K2 has decayed by e^{-40} past this image length.
  hints.smooth_beyond = 40.0 / half_m;
  CompensatedSum total;
  for (int k = 1; k <= k_max; ++k) {
    const double c2 = (k / T) * (k / T);
    // Largest possible term at this k: the smallest image.
    const double s_min2 = c2 + 4.0 * std::pow(geometry.a1(), 2);
    if (half_m * std::sqrt(c2) > 745.0) break;
    const auto r = lattice::volume_sum(
        shells,
        [&](double u) {
          const double s2 = c2 + u * u;
          return specfun::bessel_k2(half_m * std::sqrt(s2)) / s2;
        },
        hints);
    total.add(r.value);
    const double bound = specfun::bessel_k2(half_m * std::sqrt(s_min2));
    if (r.value == 0.0 && bound == 0.0) break;
    if (std::abs(r.value) <= policy.rel_tol * 1e-3 * std::abs(total.value()))
      break;
  }
  return -geometry.volume() * m_gamma * m_gamma / (4.0 * kPi * kPi) *
         total.value();
}

double delta_s_massive(double T, const CavityGeometry& geometry, double m_gamma,
                       int k_max, const SumPolicy& policy) {
  require_positive_T(T, "delta_s_massive");
  auto F = [&](double t) {
    return delta_f_massive(t, geometry, m_gamma, k_max, policy);
  };
  const double h = 1e-2 * T;
  const double d1 = (F(T + h) - F(T - h)) / (2.0 * h);
  const double d2 = (F(T + h / 2) - F(T - h / 2)) / h;
  return -(4.0 * d2 - d1) / 3.0;
}

double delta_f_massive_low_t(double T, double m_gamma) {
  require_positive_T(T, "delta_f_massive_low_t");
  const double x = 0.5 * m_gamma / T;
  return -T * std::log1p(-std::exp(-x));
}

double delta_s_massive_closed_form(double T, double m_gamma) {
  require_positive_T(T, "delta_s_massive_closed_form");
  if (!(m_gamma > 0.0))
    throw DomainError("delta_s_massive_closed_form: m_gamma must be positive");
  const double x = 0.5 * m_gamma / T;
  if (x > 700.0) return 0.0;
  return std::log1p(-std::exp(-x)) + x / std::expm1(x);
}

}  // namespace cavitherm::matsubara
