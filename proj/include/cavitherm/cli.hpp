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

// Command-line front end. Kept in the library so tests can drive it.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cavitherm/core.hpp"

namespace cavitherm::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitFlaggedRows = 4;
inline constexpr int kExitHardFailure = 5;

enum class Spacing { linear, log };

struct RunConfig {
  double a1 = 1.0, a2 = 1.0, a3 = 1.0;
  double xi_min = 0.05, xi_max = 5.0;
  int xi_points = 50;
  Spacing xi_spacing = Spacing::log;
  SumPolicy policy;
  double cutoff_tolerance = 1e-10;
  std::string csv = "sweep.csv";
  // Empty or "-" writes to stdout.
  std::string json;
  int threads = 1;
  // Extra row pairs around branch boundaries are capped at this many pairs.
  int max_boundary_rows = 100;
  // Attach the direct-mode comparison block to the sweep summary.
  bool oracle = false;
  // Oracle and diagnostic parameters.
  double xi = 1.0;
  int k_max = 256;
  double m_gamma_over_T = 20.0;

  void validate() const;  // throws ConfigError
};

// Every key accepted in a config file (and as --key on the command line).
const std::vector<std::string>& config_keys();

// Applies key=value pairs on top of cfg. Unknown keys and unparsable
// values raise ConfigError.
void apply(RunConfig& cfg, const std::map<std::string, std::string>& values);

// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> read_config_file(const std::string& path);

// Current values as key -> string, for the JSON echo.
std::map<std::string, std::string> echo(const RunConfig& cfg);

// Grid of xi values per the config (sorted, inclusive of both ends).
std::vector<double> xi_grid(const RunConfig& cfg);

// Formats a double with 17 significant digits, '.' decimal point.
std::string format_number(double x);

int cmd_cutoffs(double tolerance, const std::string& figure_path,
                std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, const std::string& which,
               std::ostream& out, std::ostream& err);

// Full entry point: argv parsing and dispatch.
int run(int argc, char** argv);

}  // namespace cavitherm::cli
