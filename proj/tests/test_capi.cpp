// Copyright 2026 The kalaik Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "kalaik.h"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

using Json = nlohmann::json;

TEST_CASE("version and status names") {
  CHECK(std::strlen(kk_version()) > 0);
  CHECK(std::string(kk_status_name(KK_OK)) == "ok");
  CHECK(std::string(kk_status_name(KK_ERR_CAPACITY)) == "capacity");
  CHECK(std::string(kk_status_name(static_cast<kk_status>(99))) == "unknown");
}

TEST_CASE("null arguments") {
  double x = 0;
  CHECK(kk_negativity(nullptr, 1, &x) == KK_ERR_NULL_ARG);
  CHECK(kk_w_negativity(3, 2, 1, nullptr) == KK_ERR_NULL_ARG);
  CHECK(kk_state_werner(0.5, nullptr) == KK_ERR_NULL_ARG);
  CHECK(std::strlen(kk_last_error()) > 0);
  kk_state_free(nullptr);
  kk_report_free(nullptr);
}

TEST_CASE("errors map to statuses") {
  kk_state* s = nullptr;
  CHECK(kk_state_werner(1.5, &s) == KK_ERR_VALIDATION);
  CHECK(s == nullptr);
  CHECK(std::string(kk_last_error()).size() > 0);
  CHECK(kk_state_w(11, &s) == KK_ERR_CAPACITY);
  double w = 0;
  CHECK(kk_w_negativity(3, 2, 1, &w) == KK_OK);
  CHECK(std::string(kk_last_error()).empty());
  CHECK(w == doctest::Approx(0.206011329583).epsilon(1e-11));
  kk_report* r = nullptr;
  CHECK(kk_report_kmeasure(nullptr, "x", nullptr, nullptr, 1, 1, &r) == KK_ERR_NULL_ARG);
}

TEST_CASE("state handles") {
  kk_state* bell = nullptr;
  REQUIRE(kk_state_bell_pairs(1, &bell) == KK_OK);
  CHECK(kk_state_sites(bell) == 2);
  CHECK(kk_state_dim(bell) == 4);
  std::vector<double> re(16), im(16);
  REQUIRE(kk_state_matrix(bell, re.data(), im.data()) == KK_OK);
  CHECK(re[0] == doctest::Approx(0.5));
  CHECK(re[3] == doctest::Approx(0.5));

  double neg = 0;
  REQUIRE(kk_negativity(bell, 1, &neg) == KK_OK);
  CHECK(neg == doctest::Approx(0.5));
  CHECK(kk_negativity(bell, 0, &neg) == KK_ERR_VALIDATION);
  CHECK(kk_negativity(bell, 3, &neg) == KK_ERR_VALIDATION);

  double lo = 0, hi = 0;
  int conv = 0;
  REQUIRE(kk_ppt_distance(bell, 1, nullptr, &lo, &hi, &conv) == KK_OK);
  CHECK(lo >= 0.499);
  CHECK(hi <= 0.501);
  CHECK(conv == 1);

  kk_state* half = nullptr;
  const int keep[] = {0};
  REQUIRE(kk_state_partial_trace(bell, keep, 1, &half) == KK_OK);
  CHECK(kk_state_dim(half) == 2);

  kk_state* both = nullptr;
  REQUIRE(kk_state_tensor(bell, bell, &both) == KK_OK);
  CHECK(kk_state_sites(both) == 4);

  double d = 0;
  CHECK(kk_trace_distance(bell, both, &d) == KK_ERR_VALIDATION);
  REQUIRE(kk_trace_distance(bell, bell, &d) == KK_OK);
  CHECK(d == doctest::Approx(0.0).epsilon(1e-12));

  kk_state_free(both);
  kk_state_free(half);
  kk_state_free(bell);
}

TEST_CASE("state from matrix") {
  const int dims[] = {2, 2};
  std::vector<double> re(16, 0.0);
  re[0] = 1.0;
  kk_state* s = nullptr;
  REQUIRE(kk_state_from_matrix(dims, 2, re.data(), nullptr, &s) == KK_OK);
  double neg = 1;
  REQUIRE(kk_negativity(s, 1, &neg) == KK_OK);
  CHECK(neg == doctest::Approx(0.0));
  kk_state_free(s);

  re[0] = 2.0;
  CHECK(kk_state_from_matrix(dims, 2, re.data(), nullptr, &s) == KK_ERR_VALIDATION);
}

TEST_CASE("solver config") {
  kk_solver_config cfg;
  kk_solver_config_init(&cfg);
  CHECK(cfg.max_iterations > 0);
  CHECK(cfg.refine_cuts >= 1);
  kk_state* w = nullptr;
  REQUIRE(kk_state_werner(1.0 / 3, &w) == KK_OK);
  double lo = 0, hi = 0;
  int conv = 0;
  REQUIRE(kk_ppt_distance(w, 1, &cfg, &lo, &hi, &conv) == KK_OK);
  CHECK(hi <= 1e-3);
  cfg.target_gap = -1;
  CHECK(kk_ppt_distance(w, 1, &cfg, &lo, &hi, &conv) == KK_ERR_VALIDATION);
  kk_state_free(w);
}

TEST_CASE("scalar entry points") {
  std::uint64_t n = 0;
  REQUIRE(kk_count_connected(2, 2, &n) == KK_OK);
  CHECK(n == 9);
  CHECK(kk_count_connected(6, 6, &n) == KK_ERR_CAPACITY);
  double k = 0;
  REQUIRE(kk_k_w_lower(2, &k) == KK_OK);
  CHECK(k == doctest::Approx(0.25));
}

TEST_CASE("reports") {
  kk_report* r = nullptr;
  REQUIRE(kk_report_wk(2, &r) == KK_OK);
  const Json j = Json::parse(kk_report_json(r));
  CHECK(j["k_w_lower"].get<double>() == 0.25);
  CHECK(j["paper_formula"].get<double>() == 0.125);
  CHECK(std::string(kk_report_csv(r)).find("contribution") != std::string::npos);
  CHECK(kk_report_converged(r) == 1);
  kk_report_free(r);

  kk_state* pairs = nullptr;
  REQUIRE(kk_state_bell_pairs(2, &pairs) == KK_OK);
  REQUIRE(kk_report_kmeasure(pairs, "bell-pairs", "{\"pairs\": 2}", nullptr, 1, 1, &r) == KK_OK);
  const Json k = Json::parse(kk_report_json(r));
  CHECK(k["params"]["pairs"].get<int>() == 2);
  CHECK(k["k_lower"].get<double>() >= 0.99);
  kk_report_free(r);
  CHECK(kk_report_kmeasure(pairs, "bell-pairs", "{not json", nullptr, 1, 1, &r) == KK_ERR_VALIDATION);
  kk_state_free(pairs);

  const double phis[] = {0.0, 3.141592653589793};
  REQUIRE(kk_report_catphase(5, phis, 2, &r) == KK_OK);
  CHECK(Json::parse(kk_report_json(r))["rows"].size() == 2);
  kk_report_free(r);

  REQUIRE(kk_report_count(2, 2, &r) == KK_OK);
  CHECK(Json::parse(kk_report_json(r))["exact"].get<int>() == 9);
  kk_report_free(r);

  REQUIRE(kk_report_wneg(3, 2, 1, &r) == KK_OK);
  kk_report_free(r);
  REQUIRE(kk_report_gridk(2, 2, 1.0, 0, nullptr, &r) == KK_OK);
  CHECK(Json::parse(kk_report_json(r))["k_lower"].get<double>() == 4.5);
  kk_report_free(r);
}
