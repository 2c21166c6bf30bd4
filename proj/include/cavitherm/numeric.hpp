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

#include <cmath>
#include <cstdint>
#include <functional>

namespace cavitherm {

// Neumaier's variant of Kahan summation. Order-dependent by design: callers
// that need reproducibility feed terms in a canonical order.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  void add(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

// Adaptive Gauss-Kronrod (15/31 point) on [a, b]; b may be +infinity.
// Throws QuadratureFailure when the error estimate exceeds abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol = 1e-13,
                           unsigned max_depth = 12);

// Same, but never throws on tolerance: the caller inspects the estimate.
QuadratureResult integrate_unchecked(const std::function<double(double)>& f,
                                     double a, double b, double rel_tol = 1e-13,
                                     unsigned max_depth = 12);

}  // namespace cavitherm
