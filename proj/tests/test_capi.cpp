// Copyright 2026 The gvc Authors.
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


// Exercises the shared library through its C header only.
#include "gvc/gvc.h"

#include <doctest.h>

#include <cstring>
#include <string>

namespace {

std::string scenario(const char* name) { return std::string(GVC_SCENARIO_DIR) + "/" + name; }

}  // namespace

TEST_CASE("version string is available") {
  CHECK(std::strlen(gvc_version()) > 0);
  CHECK(std::string(gvc_version()).find('.') != std::string::npos);
}

TEST_CASE("null arguments are reported without crashing") {
  gvc_scenario* sc = nullptr;
  CHECK(gvc_scenario_load_string(nullptr, &sc) == GVC_ERR_NULL);
  CHECK(gvc_scenario_load_file("x.json", nullptr) == GVC_ERR_NULL);
  CHECK(gvc_run(nullptr, "verify regularity", 0, nullptr) == GVC_ERR_NULL);
  CHECK(gvc_scenario_set_seed(nullptr, 1) == GVC_ERR_NULL);
  CHECK(gvc_report_passed(nullptr) == 0);
  CHECK(gvc_report_json(nullptr) == nullptr);
  CHECK(gvc_algebra_dim(nullptr) == 0);
  gvc_scenario_free(nullptr);
  gvc_report_free(nullptr);
  gvc_algebra_free(nullptr);
}

TEST_CASE("an empty scenario is an input error naming the missing field") {
  gvc_scenario* sc = nullptr;
  CHECK(gvc_scenario_load_string("", &sc) == GVC_ERR_INPUT);
  CHECK(sc == nullptr);
  CHECK(std::string(gvc_last_error()) == "missing field: algebra");
  CHECK(gvc_scenario_load_file("/nonexistent.json", &sc) == GVC_ERR_INPUT);
}

TEST_CASE("a passing suite returns a JSON report") {
  gvc_scenario* sc = nullptr;
  REQUIRE(gvc_scenario_load_file(scenario("regularity_su2.json").c_str(), &sc) == GVC_OK);
  gvc_report* rep = nullptr;
  REQUIRE(gvc_run(sc, "verify regularity", 0, &rep) == GVC_OK);
  CHECK(gvc_report_passed(rep) == 1);
  const std::string text = gvc_report_json(rep);
  CHECK(text.find("\"singular_rows_ok\"") != std::string::npos);
  CHECK(text.find("\"seed\": 7") != std::string::npos);
  gvc_report_free(rep);

  CHECK(gvc_scenario_set_seed(sc, 99) == GVC_OK);
  REQUIRE(gvc_run(sc, "verify regularity", 0, &rep) == GVC_OK);
  CHECK(std::string(gvc_report_json(rep)).find("\"seed\": 99") != std::string::npos);
  gvc_report_free(rep);

  CHECK(gvc_run(sc, "verify nothing", 0, &rep) == GVC_ERR_INPUT);
  CHECK(rep == nullptr);
  gvc_scenario_free(sc);
}

TEST_CASE("a failing suite returns an assertion status together with its report") {
  gvc_scenario* sc = nullptr;
  REQUIRE(gvc_scenario_load_file(scenario("fibration_antisymmetric_control.json").c_str(), &sc) == GVC_OK);
  gvc_report* rep = nullptr;
  CHECK(gvc_run(sc, "verify fibration", 0, &rep) == GVC_ERR_ASSERTION);
  REQUIRE(rep != nullptr);
  CHECK(gvc_report_passed(rep) == 0);
  CHECK(std::string(gvc_report_json(rep)).find("\"passed\": false") != std::string::npos);
  gvc_report_free(rep);
  gvc_scenario_free(sc);
}

TEST_CASE("algebra helpers") {
  gvc_algebra* su2 = nullptr;
  REQUIRE(gvc_algebra_preset("su2", &su2) == GVC_OK);
  CHECK(gvc_algebra_dim(su2) == 3);
  double K[9];
  REQUIRE(gvc_algebra_killing(su2, K) == GVC_OK);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(K[r * 3 + c] == (r == c ? -2.0 : 0.0));
  const double e0[3] = {1, 0, 0}, e1[3] = {0, 1, 0};
  double out[3];
  REQUIRE(gvc_algebra_bracket(su2, e0, e1, out) == GVC_OK);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 1.0);
  double v[5];
  REQUIRE(gvc_algebra_validate(su2, nullptr, v) == GVC_OK);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
  CHECK(v[3] == 0.0);
  CHECK(v[4] == doctest::Approx(1.0));
  gvc_algebra_free(su2);

  gvc_algebra* bad = nullptr;
  CHECK(gvc_algebra_preset("g2", &bad) == GVC_ERR_INPUT);
  CHECK(bad == nullptr);

  const double c[8] = {0, 1, 1, 0, 0, 0, 0, 0};
  REQUIRE(gvc_algebra_create(2, c, &bad) == GVC_OK);
  REQUIRE(gvc_algebra_validate(bad, nullptr, v) == GVC_OK);
  CHECK(v[0] == 2.0);
  gvc_algebra_free(bad);
  CHECK(gvc_algebra_create(0, c, &bad) == GVC_ERR_INPUT);
}
