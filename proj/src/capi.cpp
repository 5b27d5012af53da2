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

#include "gvc/gvc.h"

#include "gvc/error.hpp"
#include "gvc/lie.hpp"
#include "gvc/scenario.hpp"

#include <exception>
#include <new>
#include <string>

struct gvc_scenario {
  gvc::Scenario impl;
};

struct gvc_report {
  std::string text;
  bool passed = false;
};

struct gvc_algebra {
  gvc::LieAlgebra impl;
};

namespace {

thread_local std::string last_error;

gvc_status fail(gvc_status code, const std::string& msg) {
  last_error = msg;
  return code;
}

// Maps exceptions to status codes at the API boundary.
template <class F>
gvc_status guard(F&& body) {
  try {
    return body();
  } catch (const gvc::InputError& e) {
    return fail(GVC_ERR_INPUT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(GVC_ERR_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GVC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GVC_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* gvc_version(void) {
  static const std::string v = gvc::version_string();
  return v.c_str();
}

const char* gvc_last_error(void) { return last_error.c_str(); }

gvc_status gvc_scenario_load_file(const char* path, gvc_scenario** out) {
  if (!path || !out) return fail(GVC_ERR_NULL, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new gvc_scenario{gvc::Scenario::load(path)};
    return GVC_OK;
  });
}

gvc_status gvc_scenario_load_string(const char* json, gvc_scenario** out) {
  if (!json || !out) return fail(GVC_ERR_NULL, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new gvc_scenario{gvc::Scenario::parse(json)};
    return GVC_OK;
  });
}

gvc_status gvc_scenario_set_seed(gvc_scenario* scenario, uint64_t seed) {
  if (!scenario) return fail(GVC_ERR_NULL, "null scenario");
  scenario->impl.set_seed(seed);
  return GVC_OK;
}

void gvc_scenario_free(gvc_scenario* scenario) { delete scenario; }

gvc_status gvc_run(const gvc_scenario* scenario, const char* command, unsigned refine, gvc_report** out) {
  if (!scenario || !command || !out) return fail(GVC_ERR_NULL, "null argument");
  *out = nullptr;
  return guard([&] {
    gvc::SuiteOutcome r = gvc::run_command(scenario->impl, command, refine);
    *out = new gvc_report{r.report.dump(2), r.passed};
    if (!r.passed) return fail(GVC_ERR_ASSERTION, "one or more checks failed");
    return GVC_OK;
  });
}

int gvc_report_passed(const gvc_report* report) { return report && report->passed ? 1 : 0; }

const char* gvc_report_json(const gvc_report* report) { return report ? report->text.c_str() : nullptr; }

void gvc_report_free(gvc_report* report) { delete report; }

gvc_status gvc_algebra_preset(const char* name, gvc_algebra** out) {
  if (!name || !out) return fail(GVC_ERR_NULL, "null argument");
  *out = nullptr;
  return guard([&] {
    *out = new gvc_algebra{gvc::LieAlgebra::preset(name)};
    return GVC_OK;
  });
}

gvc_status gvc_algebra_create(size_t dim, const double* c, gvc_algebra** out) {
  if (!c || !out) return fail(GVC_ERR_NULL, "null argument");
  *out = nullptr;
  if (dim == 0) return fail(GVC_ERR_INPUT, "dim must be positive");
  return guard([&] {
    *out = new gvc_algebra{gvc::LieAlgebra(dim, std::vector<double>(c, c + dim * dim * dim))};
    return GVC_OK;
  });
}

size_t gvc_algebra_dim(const gvc_algebra* alg) { return alg ? alg->impl.dim() : 0; }

gvc_status gvc_algebra_bracket(const gvc_algebra* alg, const double* a, const double* b, double* out) {
  if (!alg || !a || !b || !out) return fail(GVC_ERR_NULL, "null argument");
  const std::size_t m = alg->impl.dim();
  return guard([&] {
    alg->impl.bracket({a, m}, {b, m}, {out, m});
    return GVC_OK;
  });
}

gvc_status gvc_algebra_killing(const gvc_algebra* alg, double* out) {
  if (!alg || !out) return fail(GVC_ERR_NULL, "null argument");
  return guard([&] {
    const Eigen::MatrixXd K = gvc::killing_form(alg->impl);
    for (Eigen::Index r = 0; r < K.rows(); ++r)
      for (Eigen::Index c = 0; c < K.cols(); ++c) out[r * K.cols() + c] = K(r, c);
    return GVC_OK;
  });
}

gvc_status gvc_algebra_validate(const gvc_algebra* alg, const double* pairing, double* out) {
  if (!alg || !out) return fail(GVC_ERR_NULL, "null argument");
  return guard([&] {
    const auto m = static_cast<Eigen::Index>(alg->impl.dim());
    Eigen::MatrixXd k = Eigen::MatrixXd::Identity(m, m);
    if (pairing)
      for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < m; ++c) k(r, c) = pairing[r * m + c];
    const gvc::AlgebraReport rep = gvc::validate(alg->impl, gvc::Pairing(k, false));
    out[0] = rep.antisymmetry;
    out[1] = rep.jacobi;
    out[2] = rep.pairing_symmetry;
    out[3] = rep.ad_invariance;
    out[4] = rep.det_pairing;
    return GVC_OK;
  });
}

void gvc_algebra_free(gvc_algebra* alg) { delete alg; }

}  // extern "C"
