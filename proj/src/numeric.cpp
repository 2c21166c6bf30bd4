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
#include "cavitherm/numeric.hpp"

#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cavitherm/errors.hpp"

namespace cavitherm {

QuadratureResult integrate_unchecked(const std::function<double(double)>& f,
                                     double a, double b, double rel_tol,
                                     unsigned max_depth) {
  QuadratureResult r;
  if (a == b) return r;
  std::int64_t count = 0;
  auto counted = [&](double x) {
    ++count;
    return f(x);
  };
  double err = 0.0;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      counted, a, b, max_depth, rel_tol, &err);
  r.error_estimate = err;
  r.evaluations = count;
  return r;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           unsigned max_depth) {
  QuadratureResult r = integrate_unchecked(f, a, b, rel_tol, max_depth);
  if (!std::isfinite(r.value) || r.error_estimate > abs_tol) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] reached error "
        << r.error_estimate << " above tolerance " << abs_tol;
    throw QuadratureFailure(msg.str());
  }
  return r;
}

}  // namespace cavitherm
