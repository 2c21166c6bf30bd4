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
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cavitherm/cli.hpp"

using namespace cavitherm;
using namespace cavitherm::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_args(std::initializer_list<const char*> args) {
  std::vector<char*> argv;
  for (const char* a : args) argv.push_back(const_cast<char*>(a));
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config text parsing") {
  const auto kv = parse_config_text(
      "# geometry\n"
      "a1 = 1\n"
      "  a2=100   # pizza\n"
      "\n"
      "xi_spacing = linear\n");
  CHECK(kv.size() == 3);
  CHECK(kv.at("a2") == "100");
  CHECK(kv.at("xi_spacing") == "linear");
  CHECK_THROWS_AS(parse_config_text("a1 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("= 3\n"), ConfigError);
}

TEST_CASE("applying and validating a configuration") {
  RunConfig cfg;
  apply(cfg, {{"a2", "100"}, {"threads", "3"}, {"tail_method", "none"}, {"oracle", "yes"}});
  CHECK(cfg.a2 == 100.0);
  CHECK(cfg.threads == 3);
  CHECK(cfg.policy.tail_method == TailMethod::none);
  CHECK(cfg.oracle);
  CHECK_NOTHROW(cfg.validate());

  CHECK_THROWS_AS(apply(cfg, {{"colour", "blue"}}), ConfigError);
  CHECK_THROWS_AS(apply(cfg, {{"a1", "1.0x"}}), ConfigError);
  CHECK_THROWS_AS(apply(cfg, {{"xi_points", "2.5"}}), ConfigError);

  RunConfig bad;
  bad.a3 = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = RunConfig{};
  bad.xi_min = 2.0;
  bad.xi_max = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // Every key round-trips through the echo.
  const auto e = echo(RunConfig{});
  for (const std::string& k : config_keys()) CHECK(e.count(k) == 1);
  RunConfig again;
  apply(again, e);
  CHECK(echo(again) == e);
}

TEST_CASE("xi grid") {
  RunConfig cfg;
  cfg.xi_min = 0.1;
  cfg.xi_max = 10.0;
  cfg.xi_points = 3;
  auto xs = xi_grid(cfg);
  CHECK(xs.size() == 3);
  CHECK(xs[0] == 0.1);
  CHECK(xs[1] == doctest::Approx(1.0));
  CHECK(xs[2] == 10.0);
  cfg.xi_spacing = Spacing::linear;
  xs = xi_grid(cfg);
  CHECK(xs[1] == doctest::Approx(5.05));
}

TEST_CASE("numbers are written with round-trip precision") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) {
    CHECK(std::stod(format_number(x)) == x);
  }
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("cutoffs command") {
  std::ostringstream out, err;
  CHECK(cmd_cutoffs(1e-10, "", out, err) == kExitOk);
  CHECK(out.str() == "v_V=1.763876989, v_E=0.648894081\n");

  const auto fig = std::filesystem::temp_directory_path() / "cavitherm_test_G.csv";
  std::ostringstream out2;
  CHECK(cmd_cutoffs(1e-10, fig.string(), out2, err) == kExitOk);
  const std::string csv = slurp(fig);
  CHECK(csv.rfind("v0,G\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 201);
  std::filesystem::remove(fig);
}

TEST_CASE("sweep command writes CSV and JSON") {
  const auto dir = std::filesystem::temp_directory_path();
  RunConfig cfg;
  cfg.xi_min = 1.0;
  cfg.xi_max = 2.0;
  cfg.xi_points = 3;
  cfg.max_boundary_rows = 0;
  cfg.csv = (dir / "cavitherm_test_sweep.csv").string();
  cfg.json = (dir / "cavitherm_test_sweep.json").string();
  std::ostringstream out, err;
  CHECK(cmd_sweep(cfg, out, err) == kExitOk);
  const std::string csv = slurp(cfg.csv);
  CHECK(csv.rfind("xi,f_total,f_bb,delta_f,s_total,s_bb,delta_s,e_total,e_bb,delta_e,"
                  "c_v,p1,p2,p3,p1_bb,p2_bb,p3_bb,branch_id\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  const std::string json = slurp(cfg.json);
  CHECK(json.find("\"eos_max_residual\"") != std::string::npos);
  CHECK(json.find("\"flagged_rows\": []") != std::string::npos);
  std::filesystem::remove(cfg.csv);
  std::filesystem::remove(cfg.json);
}

TEST_CASE("boundary rows straddle crossings") {
  RunConfig cfg;
  cfg.xi_min = 0.8;
  cfg.xi_max = 0.9;
  cfg.xi_points = 2;
  cfg.max_boundary_rows = 10;
  cfg.csv = "-";
  cfg.json = (std::filesystem::temp_directory_path() / "cavitherm_test_b.json").string();
  std::ostringstream out, err;
  CHECK(cmd_sweep(cfg, out, err) == kExitOk);
  // The grid ends plus the pair around the first volume crossing.
  const std::string csv = out.str();
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 5);
  CHECK(csv.find("0.88193749") != std::string::npos);
  std::filesystem::remove(cfg.json);
}

TEST_CASE("exit codes") {
  CHECK(run_args({"cavitherm"}) == kExitUsage);
  CHECK(run_args({"cavitherm", "frobnicate"}) == kExitUsage);
  CHECK(run_args({"cavitherm", "sweep", "--a1", "-1"}) == kExitUsage);
  CHECK(run_args({"cavitherm", "sweep", "--config", "/nonexistent/cfg"}) == kExitUsage);
  CHECK(run_args({"cavitherm", "oracle", "--which", "nonsense"}) == kExitUsage);
  CHECK(run_args({"cavitherm", "cutoffs", "--tolerance", "0"}) == kExitUsage);
}
