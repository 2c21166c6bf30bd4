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
#include "cavitherm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "cavitherm/numeric.hpp"

namespace cavitherm::lattice {
namespace {

// Lower edge of the "jump is far enough inside" zone, as a fraction of the
// outer window radius. The inner window is 0.8 U, so its flat part ends at
// 0.4 U.
constexpr double kInnerStepFraction = 0.38;
constexpr double kOuterStepFraction = 1.05;
constexpr double kSecondWindow = 0.8;
// Image lengths below this many longest edges are always summed directly.
constexpr double kMinCutoffEdges = 100.0;
constexpr std::size_t kChunk = 8192;

bool is_volume(SumKind k) { return k == SumKind::volume_3d; }

// Accumulators for one contiguous chunk of the canonical enumeration.
struct ChunkAccum {
  std::vector<CompensatedSum> primary;    // window U or sharp U
  std::vector<CompensatedSum> secondary;  // window 0.8U or sharp U/2
  std::vector<CompensatedSum> tertiary;   // sharp U/4 (extrapolation only)
  std::vector<CompensatedSum> magnitude;
  std::int64_t terms = 0;

  explicit ChunkAccum(int channels)
      : primary(channels), secondary(channels), tertiary(channels),
        magnitude(channels) {}
};

// Uniform random access to the canonical enumeration of either kind.
struct EntrySource {
  std::shared_ptr<const std::vector<ImageEntry>> volume;
  int axis = -1;
  double a = 0.0;
  std::size_t size = 0;

  void fill(std::size_t i, ImageSample& s, double& mult) const {
    if (volume) {
      const ImageEntry& e = (*volume)[i];
      s.u = e.u;
      mult = e.multiplicity;
      return;
    }
    const double x = static_cast<double>(i + 1) * a;
    s.u = 2.0 * x;
    s.xsq = {0.0, 0.0, 0.0};
    s.xsq[static_cast<std::size_t>(axis)] = x * x;
    mult = 2.0;
  }
};

void fill_volume_xsq(const CavityGeometry& g, const ImageEntry& e,
                     ImageSample& s) {
  const double x = e.n1 * g.a1();
  const double y = e.n2 * g.a2();
  const double z = e.n3 * g.a3();
  s.xsq = {x * x, y * y, z * z};
}

ImageSample continuum_sample(SumKind kind, double u) {
  ImageSample s;
  s.u = u;
  if (is_volume(kind)) {
    const double q = u * u / 12.0;
    s.xsq = {q, q, q};
  } else {
    s.xsq = {0.0, 0.0, 0.0};
    s.xsq[static_cast<std::size_t>(edge_axis(kind))] = u * u / 4.0;
  }
  return s;
}

double plan_cutoff(const ShellEnumerator& shells, const SumHints& hints,
                   double at_least) {
  const double budget = shells.budget_u();
  if (hints.cutoff) {
    if (!(*hints.cutoff > 0.0)) throw DomainError("cutoff must be positive");
    return std::min(*hints.cutoff, budget);
  }
  double U = std::max({shells.min_cutoff_u(), 2.0 * hints.smooth_beyond,
                       at_least});
  U = std::min(U, budget);
  if (hints.step && *hints.step > 0.0) {
    const double s = *hints.step;
    if (shells.policy().tail_method == TailMethod::continuum_integral) {
      if (s >= kInnerStepFraction * U && s <= kOuterStepFraction * U) {
        if (s / kInnerStepFraction <= budget)
          U = s / kInnerStepFraction;
        else
          U = s / kOuterStepFraction;
      }
    } else {
      // Sharp truncations: keep the jump inside the smallest sharp ball when
      // the budget allows.
      U = std::max(U, std::min(budget, 4.4 * s));
    }
  }
  return U;
}

void reduce_chunks(const EntrySource& src, const ShellEnumerator& shells,
                   const MultiTerm& term, int channels, double U,
                   TailMethod method, std::vector<ChunkAccum>& chunks) {
  const std::size_t n = src.size;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  chunks.assign(nchunks, ChunkAccum(channels));
  const CavityGeometry& geo = shells.geometry();
  const bool volume = static_cast<bool>(src.volume);

  auto work = [&](std::size_t c) {
    ChunkAccum& acc = chunks[c];
    std::vector<double> out(static_cast<std::size_t>(channels));
    ImageSample s;
    double mult = 0.0;
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      src.fill(i, s, mult);
      if (volume) fill_volume_xsq(geo, (*src.volume)[i], s);
      std::fill(out.begin(), out.end(), 0.0);
      term(s, out.data());
      double w1 = 1.0, w2 = 1.0, w3 = 0.0;
      switch (method) {
        case TailMethod::continuum_integral:
          w1 = window(s.u / U);
          w2 = window(s.u / (kSecondWindow * U));
          break;
        case TailMethod::none:
          w2 = 0.0;
          break;
        case TailMethod::extrapolation:
          w2 = s.u < 0.5 * U ? 1.0 : 0.0;
          w3 = s.u < 0.25 * U ? 1.0 : 0.0;
          break;
      }
      for (int k = 0; k < channels; ++k) {
        const double t = mult * out[static_cast<std::size_t>(k)];
        acc.primary[k].add(w1 * t);
        if (w2 != 0.0) acc.secondary[k].add(w2 * t);
        if (w3 != 0.0) acc.tertiary[k].add(w3 * t);
        acc.magnitude[k].add(w1 * std::fabs(t));
      }
      ++acc.terms;
    }
  };

  const int threads = std::max(1, shells.policy().threads);
  if (threads == 1 || nchunks < 2) {
    for (std::size_t c = 0; c < nchunks; ++c) work(c);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t nt = std::min<std::size_t>(threads, nchunks);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t c = t; c < nchunks; c += nt) work(c);
    });
  }
  for (auto& th : pool) th.join();
}

// Integral of term * (1 - w(u/Uw)) * density over [Uw/2, inf) for one
// channel, or of term * density over [lo, inf) when Uw <= 0.
QuadratureResult continuum_tail(const ShellEnumerator& shells,
                                const MultiTerm& term, int channels,
                                int channel, double lo, double Uw,
                                const SumHints& hints) {
  std::vector<double> out(static_cast<std::size_t>(channels));
  const SumKind kind = shells.kind();
  auto f = [&](double u) {
    if (!(u > 0.0) || !std::isfinite(u)) return 0.0;
    const ImageSample s = continuum_sample(kind, u);
    std::fill(out.begin(), out.end(), 0.0);
    term(s, out.data());
    const double w = Uw > 0.0 ? 1.0 - window(u / Uw) : 1.0;
    const double val = out[static_cast<std::size_t>(channel)] * w *
                       shells.density(u);
    return std::isfinite(val) ? val : 0.0;
  };
  std::vector<double> pts{lo};
  if (Uw > 0.0) pts.push_back(Uw);
  if (hints.step && *hints.step > lo) pts.push_back(*hints.step);
  if (hints.smooth_beyond > 0.0) {
    for (double m : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double b = m * hints.smooth_beyond;
      if (b > lo) pts.push_back(b);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const QuadratureResult r = integrate_unchecked(f, pts[i], pts[i + 1]);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.evaluations += r.evaluations;
  }
  // Remaining tail through u = lo/t: a u^-2 integrand becomes constant.
  const double last = pts.back();
  const QuadratureResult r = integrate_unchecked(
      [&](double t) {
        if (!(t > 0.0)) return 0.0;
        const double u = last / t;
        return std::isfinite(u) ? f(u) * last / (t * t) : 0.0;
      },
      0.0, 1.0);
  total.value += r.value;
  total.error_estimate += r.error_estimate;
  total.evaluations += r.evaluations;
  return total;
}

struct StepCorrection {
  std::vector<double> value;
  std::vector<double> error;
};

// Continuum integrals treat the lattice as a smooth density. For a summand
// that jumps by j at u_s beyond the direct region, the lattice sum over
// u_n >= u_s differs from the integral by about -j * P0(u_s), where P0 is
// the exact count of lattice points (origin included) below u_s minus its
// continuum value.
StepCorrection step_correction(const ShellEnumerator& shells,
                               const MultiTerm& term, int channels, double U,
                               double step) {
  StepCorrection c;
  c.value.assign(static_cast<std::size_t>(channels), 0.0);
  c.error.assign(static_cast<std::size_t>(channels), 0.0);
  const double outside = 1.0 - window(step / U);
  if (outside == 0.0) return c;
  const double p0 = static_cast<double>(shells.count_below(step)) + 1.0 -
                    shells.continuum_count(step);
  std::vector<double> up(static_cast<std::size_t>(channels));
  std::vector<double> down(static_cast<std::size_t>(channels));
  const double eps = 1e-9;
  term(continuum_sample(shells.kind(), step * (1.0 + eps)), up.data());
  term(continuum_sample(shells.kind(), step * (1.0 - eps)), down.data());
  const bool clean = outside == 1.0;
  for (int k = 0; k < channels; ++k) {
    const double j = up[k] - down[k];
    c.value[k] = -j * outside * p0;
    // The remainder comes from the oscillating part of the count beyond the
    // jump. Inside the window taper the estimate is the whole correction.
    c.error[k] = clean ? std::fabs(j) * std::sqrt(std::fabs(p0) + 1.0)
                       : std::fabs(j * p0);
  }
  return c;
}

bool within_tolerance(const SumResult& r, double rel_tol, double scale) {
  return std::isfinite(r.value) &&
         r.truncation_error_estimate <= rel_tol * scale;
}

void fail_tolerance(const SumResult& r, double rel_tol, int channel) {
  {
    std::ostringstream msg;
    msg << "lattice sum (channel " << channel << ") did not reach rel_tol "
        << rel_tol << ": value " << r.value << ", error estimate "
        << r.truncation_error_estimate << ", cutoff u " << r.cutoff_u;
    throw ConvergenceFailure(msg.str(), r);
  }
}

}  // namespace

int edge_axis(SumKind kind) {
  switch (kind) {
    case SumKind::edge_axis_1: return 0;
    case SumKind::edge_axis_2: return 1;
    case SumKind::edge_axis_3: return 2;
    case SumKind::volume_3d: break;
  }
  throw DomainError("volume enumeration has no edge axis");
}

SumKind edge_kind(int axis) {
  switch (axis) {
    case 0: return SumKind::edge_axis_1;
    case 1: return SumKind::edge_axis_2;
    case 2: return SumKind::edge_axis_3;
    default: throw DomainError("edge axis must be 0, 1 or 2");
  }
}

double window(double t) noexcept {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double x = 2.0 * t - 1.0;
  const double a = std::exp(-1.0 / (1.0 - x));
  const double b = std::exp(-1.0 / x);
  return a / (a + b);
}

ShellEnumerator::ShellEnumerator(const CavityGeometry& geometry,
                                 const SumPolicy& policy, SumKind kind)
    : geometry_(geometry), policy_(policy), kind_(kind) {
  policy_.validate();
  const double R = policy_.max_shell_radius;
  if (is_volume(kind_)) {
    // Elongated boxes need the coarse axis to hold enough lattice spacings
    // too, so the radius is measured against half the longest edge when
    // that exceeds the geometric mean.
    budget_u_ = 2.0 * R *
                std::max(std::cbrt(geometry_.volume()), 0.5 * geometry_.max_edge());
  } else {
    // The same number of terms as the volume octant would hold.
    const double terms = std::max(1.0e5, 4.0 * R * R * R);
    budget_u_ = 2.0 * geometry_.a(edge_axis(kind_)) * terms;
  }
}

double ShellEnumerator::min_cutoff_u() const noexcept {
  const double a = is_volume(kind_) ? geometry_.max_edge()
                                    : geometry_.a(edge_axis(kind_));
  return std::min(budget_u_, kMinCutoffEdges * a);
}

std::shared_ptr<const std::vector<ImageEntry>> ShellEnumerator::entries_below(
    double U) const {
  if (!is_volume(kind_))
    throw DomainError("entries_below is only defined for volume sums");
  std::lock_guard<std::mutex> lock(mutex_);
  if (cache_ && U <= cache_u_) return cache_;
  // Grow geometrically so a sweep of slowly rising cutoffs rebuilds rarely.
  const double target = std::min(budget_u_, std::max(U, 1.3 * cache_u_));
  const double r = 0.5 * target;
  const double a1 = geometry_.a1(), a2 = geometry_.a2(), a3 = geometry_.a3();
  auto list = std::make_shared<std::vector<ImageEntry>>();
  const auto n1max = static_cast<std::int32_t>(std::floor(r / a1));
  for (std::int32_t n1 = 0; n1 <= n1max; ++n1) {
    const double x = n1 * a1;
    const double rem1 = r * r - x * x;
    if (rem1 < 0.0) break;
    const auto n2max = static_cast<std::int32_t>(std::floor(std::sqrt(rem1) / a2));
    for (std::int32_t n2 = 0; n2 <= n2max; ++n2) {
      const double y = n2 * a2;
      const double rem2 = rem1 - y * y;
      if (rem2 < 0.0) break;
      const auto n3max =
          static_cast<std::int32_t>(std::floor(std::sqrt(rem2) / a3));
      for (std::int32_t n3 = 0; n3 <= n3max; ++n3) {
        if (n1 == 0 && n2 == 0 && n3 == 0) continue;
        const double z = n3 * a3;
        const double u = 2.0 * std::sqrt(x * x + y * y + z * z);
        if (u >= target) continue;
        const int nonzero = (n1 != 0) + (n2 != 0) + (n3 != 0);
        list->push_back(ImageEntry{u, n1, n2, n3, 1 << nonzero});
      }
    }
  }
  std::sort(list->begin(), list->end(),
            [](const ImageEntry& l, const ImageEntry& r) {
              if (l.u != r.u) return l.u < r.u;
              if (l.n1 != r.n1) return l.n1 < r.n1;
              if (l.n2 != r.n2) return l.n2 < r.n2;
              return l.n3 < r.n3;
            });
  cache_ = std::move(list);
  cache_u_ = target;
  return cache_;
}

std::int64_t ShellEnumerator::count_below(double u) const {
  if (!(u > 0.0)) return 0;
  const double r = 0.5 * u;
  if (!is_volume(kind_)) {
    const double a = geometry_.a(edge_axis(kind_));
    const auto nmax = static_cast<std::int64_t>(std::ceil(r / a)) - 1;
    return 2 * std::max<std::int64_t>(nmax, 0);
  }
  // Solve along the shortest edge (most points), loop over the other two.
  std::array<int, 3> ax{0, 1, 2};
  std::sort(ax.begin(), ax.end(), [&](int i, int j) {
    return geometry_.a(i) > geometry_.a(j);
  });
  const double ap = geometry_.a(ax[0]), aq = geometry_.a(ax[1]),
               ai = geometry_.a(ax[2]);
  // Number of integers n with |n| a < sqrt(rem), i.e. strictly inside.
  auto line = [ai](double rem) -> std::int64_t {
    if (rem <= 0.0) return 0;
    const double s = std::sqrt(rem) / ai;
    std::int64_t m = static_cast<std::int64_t>(std::ceil(s)) - 1;
    if (m < 0) m = 0;
    return 2 * m + 1;
  };
  std::int64_t total = 0;
  const auto npmax = static_cast<std::int64_t>(std::ceil(r / ap));
  for (std::int64_t np = 0; np <= npmax; ++np) {
    const double xp = np * ap;
    const double rem1 = r * r - xp * xp;
    if (rem1 <= 0.0) break;
    const auto nqmax = static_cast<std::int64_t>(std::ceil(std::sqrt(rem1) / aq));
    std::int64_t col = 0;
    for (std::int64_t nq = 0; nq <= nqmax; ++nq) {
      const double xq = nq * aq;
      const std::int64_t c = line(rem1 - xq * xq);
      if (c == 0) break;
      col += (nq == 0 ? 1 : 2) * c;
    }
    total += (np == 0 ? 1 : 2) * col;
  }
  return total - 1;  // origin
}

double ShellEnumerator::continuum_count(double u) const {
  if (is_volume(kind_)) return kPi * u * u * u / (6.0 * geometry_.volume());
  return u / geometry_.a(edge_axis(kind_));
}

double ShellEnumerator::density(double u) const {
  if (is_volume(kind_)) return kPi * u * u / (2.0 * geometry_.volume());
  return 1.0 / geometry_.a(edge_axis(kind_));
}

namespace {
std::vector<SumResult> sum_once(const ShellEnumerator& shells,
                                const MultiTerm& term, const SumHints& hints,
                                double U);
}  // namespace

std::vector<SumResult> sum_multi(const ShellEnumerator& shells,
                                 const MultiTerm& term, const SumHints& hints) {
  const int channels = hints.channels;
  if (channels < 1) throw DomainError("at least one channel is required");
  const SumPolicy& policy = shells.policy();
  double at_least = 0.0;
  for (;;) {
    const double U = plan_cutoff(shells, hints, at_least);
    std::vector<SumResult> results = sum_once(shells, term, hints, U);
    double scale = 0.0;
    for (const SumResult& r : results) scale = std::max(scale, r.magnitude);
    int failed = -1;
    for (int k = 0; k < channels && failed < 0; ++k) {
      const SumResult& r = results[static_cast<std::size_t>(k)];
      if (!within_tolerance(r, policy.rel_tol,
                            hints.joint_tolerance ? scale : r.magnitude))
        failed = k;
    }
    if (failed < 0) return results;
    // Grow the directly summed ball while the budget allows.
    const double next = plan_cutoff(shells, hints, 1.6 * U);
    if (hints.cutoff || !(next > U * (1.0 + 1e-12)))
      fail_tolerance(results[static_cast<std::size_t>(failed)], policy.rel_tol,
                     failed);
    at_least = 1.6 * U;
  }
}

namespace {

std::vector<SumResult> sum_once(const ShellEnumerator& shells,
                                const MultiTerm& term, const SumHints& hints,
                                double U) {
  const int channels = hints.channels;
  const TailMethod method = shells.policy().tail_method;

  EntrySource src;
  if (is_volume(shells.kind())) {
    src.volume = shells.entries_below(U);
    src.size = static_cast<std::size_t>(
        std::lower_bound(src.volume->begin(), src.volume->end(), U,
                         [](const ImageEntry& e, double x) { return e.u < x; }) -
        src.volume->begin());
  } else {
    src.axis = edge_axis(shells.kind());
    src.a = shells.geometry().a(src.axis);
    // n with 2 n a < U.
    const double nmax = std::ceil(U / (2.0 * src.a)) - 1.0;
    src.size = static_cast<std::size_t>(std::max(0.0, nmax));
  }

  std::vector<ChunkAccum> chunks;
  reduce_chunks(src, shells, term, channels, U, method, chunks);

  std::vector<CompensatedSum> s1(channels), s2(channels), s3(channels),
      mag(channels);
  std::int64_t terms = 0;
  for (const ChunkAccum& c : chunks) {
    for (int k = 0; k < channels; ++k) {
      s1[k].add(c.primary[k]);
      s2[k].add(c.secondary[k]);
      s3[k].add(c.tertiary[k]);
      mag[k].add(c.magnitude[k]);
    }
    terms += c.terms;
  }

  std::vector<SumResult> results(static_cast<std::size_t>(channels));
  StepCorrection corr;
  if (method == TailMethod::continuum_integral && hints.step &&
      *hints.step >= 0.5 * kSecondWindow * U) {
    corr = step_correction(shells, term, channels, kSecondWindow * U,
                           *hints.step);
    // The correction for the outer window uses its own taper weight.
    StepCorrection outer =
        step_correction(shells, term, channels, U, *hints.step);
    for (int k = 0; k < channels; ++k) {
      corr.error[k] = std::max(corr.error[k], outer.error[k]) +
                      std::fabs(outer.value[k] - corr.value[k]);
      corr.value[k] = outer.value[k];
    }
  }

  for (int k = 0; k < channels; ++k) {
    SumResult& r = results[static_cast<std::size_t>(k)];
    r.terms_used = terms;
    r.cutoff_u = U;
    const double direct = s1[k].value();
    switch (method) {
      case TailMethod::continuum_integral: {
        const QuadratureResult t1 =
            continuum_tail(shells, term, channels, k, 0.5 * U, U, hints);
        const QuadratureResult t2 = continuum_tail(
            shells, term, channels, k, 0.5 * kSecondWindow * U,
            kSecondWindow * U, hints);
        const double c = corr.value.empty() ? 0.0 : corr.value[k];
        const double ce = corr.error.empty() ? 0.0 : corr.error[k];
        const double v1 = direct + t1.value;
        const double v2 = s2[k].value() + t2.value;
        r.value = v1 + c;
        r.tail_correction = t1.value + c;
        r.truncation_error_estimate = std::fabs(v1 - v2) + t1.error_estimate +
                                      t2.error_estimate + ce;
        r.magnitude = mag[k].value() + std::fabs(t1.value);
        break;
      }
      case TailMethod::none: {
        const QuadratureResult t =
            continuum_tail(shells, term, channels, k, U, 0.0, hints);
        r.value = direct;
        r.tail_correction = 0.0;
        r.truncation_error_estimate = std::fabs(t.value) + t.error_estimate;
        r.magnitude = mag[k].value();
        break;
      }
      case TailMethod::extrapolation: {
        // Sharp truncation errors behave like c1/U + c2/U^2 (+ oscillation);
        // two Richardson levels over U/4, U/2, U.
        const double sU = direct, sH = s2[k].value(), sQ = s3[k].value();
        const double a1 = 2.0 * sU - sH;
        const double a0 = 2.0 * sH - sQ;
        const double rich = (4.0 * a1 - a0) / 3.0;
        r.value = rich;
        r.tail_correction = rich - sU;
        r.truncation_error_estimate = std::fabs(rich - a1);
        r.magnitude = mag[k].value() + std::fabs(r.tail_correction);
        break;
      }
    }
  }
  return results;
}

}  // namespace

SumResult volume_sum(const ShellEnumerator& shells, const ScalarTerm& term,
                     const SumHints& hints) {
  SumHints h = hints;
  h.channels = 1;
  return sum_multi(
      shells, [&](const ImageSample& s, double* out) { out[0] = term(s.u); },
      h)[0];
}

SumResult volume_sum(const CavityGeometry& geometry, const SumPolicy& policy,
                     const ScalarTerm& term, const SumHints& hints) {
  const ShellEnumerator shells(geometry, policy, SumKind::volume_3d);
  return volume_sum(shells, term, hints);
}

SumResult edge_sum(const CavityGeometry& geometry, const SumPolicy& policy,
                   int axis, const ScalarTerm& term, const SumHints& hints) {
  const ShellEnumerator shells(geometry, policy, edge_kind(axis));
  SumHints h = hints;
  h.channels = 1;
  return sum_multi(
      shells, [&](const ImageSample& s, double* out) { out[0] = term(s.u); },
      h)[0];
}

CasimirSums casimir_sums(const ShellEnumerator& volume_shells) {
  if (volume_shells.kind() != SumKind::volume_3d)
    throw DomainError("casimir_sums needs a volume enumerator");
  SumHints hints;
  hints.channels = 4;
  hints.joint_tolerance = true;
  const auto r = sum_multi(
      volume_shells,
      [](const ImageSample& s, double* out) {
        const double u2 = s.u * s.u;
        const double inv4 = 1.0 / (u2 * u2);
        out[0] = inv4;
        const double inv6 = inv4 / u2;
        out[1] = s.xsq[0] * inv6;
        out[2] = s.xsq[1] * inv6;
        out[3] = s.xsq[2] * inv6;
      },
      hints);
  return CasimirSums{r[0], {r[1], r[2], r[3]}};
}

double casimir_energy(const CavityGeometry& geometry, const CasimirSums& sums) {
  double edges = 0.0;
  for (int k = 0; k < 3; ++k) edges += kPi / (48.0 * geometry.a(k));
  return -geometry.volume() / (kPi * kPi) * sums.inv_u4.value + edges;
}

double casimir_energy(const CavityGeometry& geometry, const SumPolicy& policy) {
  const ShellEnumerator shells(geometry, policy, SumKind::volume_3d);
  const SumResult s4 = volume_sum(shells, [](double u) {
    const double u2 = u * u;
    return 1.0 / (u2 * u2);
  });
  double edges = 0.0;
  for (int k = 0; k < 3; ++k) edges += kPi / (48.0 * geometry.a(k));
  return -geometry.volume() / (kPi * kPi) * s4.value + edges;
}

double casimir_energy_derivative(const CavityGeometry& geometry,
                                 const CasimirSums& sums, int axis) {
  const double a = geometry.a(axis);
  const double V = geometry.volume();
  const double w = sums.axis_weighted[static_cast<std::size_t>(axis)].value;
  return -V / (kPi * kPi * a) * (sums.inv_u4.value - 16.0 * w) -
         kPi / (48.0 * a * a);
}

std::vector<ModeFrequency> mode_frequencies(const CavityGeometry& geometry,
                                            double omega_max) {
  if (!(omega_max > 0.0)) throw DomainError("omega_max must be positive");
  std::vector<ModeFrequency> modes;
  const double k = omega_max / kPi;
  const auto m1 = static_cast<std::int64_t>(std::floor(k * geometry.a1()));
  const auto m2 = static_cast<std::int64_t>(std::floor(k * geometry.a2()));
  const auto m3 = static_cast<std::int64_t>(std::floor(k * geometry.a3()));
  for (std::int64_t n1 = 0; n1 <= m1; ++n1) {
    for (std::int64_t n2 = 0; n2 <= m2; ++n2) {
      for (std::int64_t n3 = 0; n3 <= m3; ++n3) {
        const int zeros = (n1 == 0) + (n2 == 0) + (n3 == 0);
        if (zeros >= 2) continue;
        const ModeTriple m = ModeTriple::make(n1, n2, n3);
        // Sum the squares in ascending order so that permuted triples of a
        // symmetric box produce bitwise-equal frequencies.
        std::array<long double, 3> sq{
            static_cast<long double>(n1) / geometry.a1(),
            static_cast<long double>(n2) / geometry.a2(),
            static_cast<long double>(n3) / geometry.a3()};
        for (auto& s : sq) s *= s;
        std::sort(sq.begin(), sq.end());
        const double omega =
            static_cast<double>(kPi * std::sqrt(sq[0] + sq[1] + sq[2]));
        if (omega <= omega_max) modes.push_back(ModeFrequency{m, omega});
      }
    }
  }
  std::sort(modes.begin(), modes.end(),
            [](const ModeFrequency& l, const ModeFrequency& r) {
              if (l.omega != r.omega) return l.omega < r.omega;
              if (l.mode.n1 != r.mode.n1) return l.mode.n1 < r.mode.n1;
              if (l.mode.n2 != r.mode.n2) return l.mode.n2 < r.mode.n2;
              return l.mode.n3 < r.mode.n3;
            });
  return modes;
}

double weighted_mode_count(const CavityGeometry& geometry, double omega) {
  if (!(omega > 0.0)) return 0.0;
  double n = 0.0;
  for (const ModeFrequency& m : mode_frequencies(geometry, omega))
    n += m.mode.weight;
  return n;
}

double weyl_mode_count(const CavityGeometry& geometry, double omega) {
  return geometry.volume() * omega * omega * omega / (3.0 * kPi * kPi) -
         geometry.edge_sum() * omega / (2.0 * kPi);
}

}  // namespace cavitherm::lattice
