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

#include <stdexcept>
#include <string>

namespace cavitherm {

// Base of every error raised by the library. Callers that only care about
// "something went wrong numerically" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

class ExcludedMode : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class RootFailure : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class TailBoundTooLarge : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised when a quantity is requested within the exclusion zone around a
// temperature where some image vector crosses a cutoff.
class BranchBoundary : public Error {
 public:
  BranchBoundary(const std::string& what, double xi_crossing)
      : Error(what), xi_crossing_(xi_crossing) {}
  double xi_crossing() const noexcept { return xi_crossing_; }

 private:
  double xi_crossing_;
};

}  // namespace cavitherm
