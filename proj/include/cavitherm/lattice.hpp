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

// Image-lattice sums.
//
// The default tail treatment is a smooth partition of unity. With a window
// w(t) that is 1 for t <= 1/2, 0 for t >= 1 and C-infinity in between,
//
//   sum' f(u_n) = sum' f(u_n) w(u_n/U) + sum' f(u_n) (1 - w(u_n/U))
//
// and the second sum, whose summand is smooth and supported away from the
// origin, equals its continuum integral up to errors that fall faster than
// any power of the lattice spacing over U. Running the same pass with two
// window radii gives a cheap error estimate.
//
// A summand with a jump (the cutoff step of the regularised kernels) breaks
// that smoothness. The planner keeps the jump either well inside the directly
// summed ball or beyond U. In the latter case the continuum integral is
// corrected with the exact lattice-point count at the jump.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cavitherm/core.hpp"
#include "cavitherm/errors.hpp"

namespace cavitherm::lattice {

enum class SumKind { volume_3d, edge_axis_1, edge_axis_2, edge_axis_3 };

int edge_axis(SumKind kind);  // 0, 1, 2; throws for volume_3d
SumKind edge_kind(int axis);

struct SumResult {
  double value = 0.0;
  double truncation_error_estimate = 0.0;
  std::int64_t terms_used = 0;
  double tail_correction = 0.0;
  // Sum of |terms| plus |tail|; the scale the tolerance is measured against.
  double magnitude = 0.0;
  // Image length at which direct summation stopped.
  double cutoff_u = 0.0;
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, SumResult partial)
      : Error(what), partial_(partial) {}
  const SumResult& partial() const noexcept { return partial_; }

 private:
  SumResult partial_;
};

// One lattice point as seen by a summand. xsq[i] = (n_i a_i)^2, so that
// u^2 = 4 (xsq[0] + xsq[1] + xsq[2]). In the continuum tail the direction
// is averaged: xsq[i] = u^2/12 for volume sums.
struct ImageSample {
  double u = 0.0;
  std::array<double, 3> xsq{};
};

// Writes `channels` values for one image.
using MultiTerm = std::function<void(const ImageSample&, double* out)>;
using ScalarTerm = std::function<double(double u)>;

struct SumHints {
  int channels = 1;
  // Beyond this image length the summand varies slowly on the lattice scale
  // (typically: exponential pieces have died out).
  double smooth_beyond = 0.0;
  // Location of a jump in the summand, if any. Values at or above the
  // location belong to the upper branch.
  std::optional<double> step;
  // Force the window radius instead of planning it.
  std::optional<double> cutoff;
  // Measure every channel's error against the largest channel magnitude.
  // Appropriate when the channels are combined into one quantity.
  bool joint_tolerance = false;
};

struct ImageEntry {
  double u;
  std::int32_t n1, n2, n3;
  std::int32_t multiplicity;
};

// Canonical enumeration of image vectors: the non-negative octant (with
// multiplicities 8/4/2) for volume sums, n = 1, 2, ... (multiplicity 2) for
// an edge axis. Octant entries are cached, sorted by (u, n1, n2, n3), and
// grown on demand; the cache is safe to share between threads.
class ShellEnumerator {
 public:
  ShellEnumerator(const CavityGeometry& geometry, const SumPolicy& policy,
                  SumKind kind);

  const CavityGeometry& geometry() const noexcept { return geometry_; }
  const SumPolicy& policy() const noexcept { return policy_; }
  SumKind kind() const noexcept { return kind_; }

  // Largest image length the policy lets us enumerate.
  double budget_u() const noexcept { return budget_u_; }
  // Smallest window radius used by the planner.
  double min_cutoff_u() const noexcept;

  // Octant entries with u < U, sorted. Volume kind only.
  std::shared_ptr<const std::vector<ImageEntry>> entries_below(double U) const;

  // Number of full-lattice points (origin excluded) with u_n < u. Exact and
  // not limited by the budget.
  std::int64_t count_below(double u) const;
  // Smooth approximation of count_below including the origin.
  double continuum_count(double u) const;
  // Continuum density dN/du.
  double density(double u) const;

 private:
  CavityGeometry geometry_;
  SumPolicy policy_;
  SumKind kind_;
  double budget_u_;
  mutable std::mutex mutex_;
  mutable std::shared_ptr<const std::vector<ImageEntry>> cache_;
  mutable double cache_u_ = 0.0;
};

// Smooth window used by the continuum tail.
double window(double t) noexcept;

std::vector<SumResult> sum_multi(const ShellEnumerator& shells,
                                 const MultiTerm& term, const SumHints& hints);

SumResult volume_sum(const CavityGeometry& geometry, const SumPolicy& policy,
                     const ScalarTerm& term, const SumHints& hints = {});
SumResult volume_sum(const ShellEnumerator& shells, const ScalarTerm& term,
                     const SumHints& hints = {});
// axis is zero-based.
SumResult edge_sum(const CavityGeometry& geometry, const SumPolicy& policy,
                   int axis, const ScalarTerm& term, const SumHints& hints = {});

// Sum' 1/u^4 and Sum' (n_j a_j)^2/u^6 for j = 1..3: everything the
// zero-temperature energy and its edge-length derivatives need.
struct CasimirSums {
  SumResult inv_u4;
  std::array<SumResult, 3> axis_weighted;
};
CasimirSums casimir_sums(const ShellEnumerator& volume_shells);

// Zero-point energy of the cavity relative to free space.
double casimir_energy(const CavityGeometry& geometry, const SumPolicy& policy);
double casimir_energy(const CavityGeometry& geometry, const CasimirSums& sums);
// d(casimir_energy)/d a_j, j zero-based.
double casimir_energy_derivative(const CavityGeometry& geometry,
                                 const CasimirSums& sums, int axis);

struct ModeFrequency {
  ModeTriple mode;
  double omega = 0.0;
};

// All modes with omega <= omega_max and non-zero weight, sorted by omega,
// ties broken lexicographically.
std::vector<ModeFrequency> mode_frequencies(const CavityGeometry& geometry,
                                            double omega_max);

// Weighted cumulative mode count and its smooth (Weyl) counterpart.
double weighted_mode_count(const CavityGeometry& geometry, double omega);
double weyl_mode_count(const CavityGeometry& geometry, double omega);

}  // namespace cavitherm::lattice
