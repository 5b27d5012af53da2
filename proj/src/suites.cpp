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

#include "gvc/error.hpp"
#include "gvc/gauge.hpp"
#include "gvc/hodge.hpp"
#include "gvc/jacobi.hpp"
#include "gvc/scenario.hpp"
#include "gvc/variational.hpp"

#include <algorithm>
#include <limits>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <map>

namespace gvc {

using nlohmann::json;

namespace {

class Checks {
 public:
  void le(const std::string& name, double value, double bound) { add(name, value, bound, "<=", value <= bound); }
  void ge(const std::string& name, double value, double bound) { add(name, value, bound, ">=", value >= bound); }
  void truth(const std::string& name, bool ok) { add(name, ok ? 1.0 : 0.0, 1.0, "==", ok); }
  void within(const std::string& name, double value, double target, double rel) {
    add(name, value, target, "within " + std::to_string(rel), std::abs(value - target) <= rel * std::abs(target));
  }
  bool passed() const { return passed_; }
  const json& list() const { return list_; }

 private:
  void add(const std::string& name, double value, double bound, const std::string& op, bool ok) {
    list_.push_back({{"name", name}, {"value", value}, {"bound", bound}, {"op", op}, {"passed", ok}});
    passed_ = passed_ && ok;
  }
  json list_ = json::array();
  bool passed_ = true;
};

std::string tag(unsigned level, unsigned refine) {
  return refine == 0 ? std::string() : "[h/" + std::to_string(1u << level) + "]";
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// prev / cur for each named metric whose previous value is above the floor.
void refinement_ratios(const json& levels, const std::vector<std::string>& keys, const Tolerances& tol,
                       json& out, Checks& checks) {
  out = json::object();
  for (const auto& key : keys) {
    json series = json::array();
    for (std::size_t l = 1; l < levels.size(); ++l) {
      const double prev = levels[l - 1][key].get<double>();
      const double cur = levels[l][key].get<double>();
      if (prev <= tol.roundoff) {
        series.push_back(nullptr);
        continue;
      }
      const double ratio = cur > 0.0 ? prev / cur : std::numeric_limits<double>::infinity();
      series.push_back(std::isfinite(ratio) ? json(ratio) : json("inf"));
      checks.within("ratio_" + key + "[" + std::to_string(l) + "]", ratio, 4.0, tol.ratio_tol);
    }
    out[key] = series;
  }
}

double h_of(const GridChart& g) { return g.max_spacing(); }

TwoTensorField zero_tensor(const GridPtr& grid, std::size_t m) {
  TwoTensorField t(grid, m);
  t.set_symmetry(Symmetry::symmetric);
  return t;
}

// fibration ------------------------------------------------------------------

json fibration(const Scenario& sc, unsigned refine, Checks& checks) {
  const Tolerances& tol = sc.tolerances();
  const std::size_t samples = sc.has_field("t") ? sc.samples("t") : 1;
  json levels = json::array();
  json summary;
  for (unsigned level = 0; level <= refine; ++level) {
    const GridPtr grid = sc.grid(level);
    const auto L = sc.lagrangian(grid);
    const std::size_t n = grid->dim(), m = sc.algebra()->dim();
    const ConnectionField s = sc.connection("s", grid);
    const double h = h_of(*grid);
    double el = 0.0, el_l2 = 0.0, first = 0.0, second = 0.0, curv = 0.0, altd = 0.0, umax = 0.0, da_max = 0.0;
    bool antisym = false;
    JetField sbar0;
    const FibrationBase base = fibration_base(*L, s);
    for (std::size_t k = 0; k < samples; ++k) {
      const TwoTensorField t = sc.has_field("t") ? sc.two_tensor("t", grid, k) : zero_tensor(grid, m);
      antisym = antisym || t.symmetry() == Symmetry::antisymmetric;
      const FibrationReport r = verify_fibration(*L, base, t);
      el = r.el.max;
      el_l2 = r.el.l2;
      first = std::max(first, r.hc_first.max);
      second = std::max(second, r.hc_second.max);
      curv = std::max(curv, r.curv_defect);
      altd = std::max(altd, r.alt_delta_norm);
      umax = std::max(umax, interior_norms(t).max);
      if (k == 0) {
        sbar0 = add_to_jet(base.hol, t);
        da_max = max_abs(sbar0.da.data());
      }
    }
    const std::string sfx = tag(level, refine);
    const double bound = tol.eps0 + tol.C * h * h;
    checks.le("extremal" + sfx, el, bound);
    checks.le("hc_first_norm" + sfx, first, el + tol.C * h * h);
    checks.le("hc_second_norm" + sfx, second, el + tol.C * h * h);
    checks.le("curv_defect" + sfx, curv, 1e-12);
    checks.le("alt_delta_norm" + sfx, altd, 1e-15 * std::max(1.0, da_max));

    json lv = {{"h", h},
               {"points", grid->points()},
               {"samples", samples},
               {"el_norm", el},
               {"el_l2", el_l2},
               {"hc_first_norm", first},
               {"hc_second_norm", second},
               {"curv_defect", curv},
               {"alt_delta_norm", altd}};
    if (level == 0) {
      // Rank of the first-group system at an interior point of the first sample.
      std::size_t x0 = 0;
      while (x0 < grid->points() && !grid->interior(x0)) ++x0;
      require(x0 < grid->points(), "grid has no interior point");
      const KernelReport kr = first_group_kernel(*L, sbar0, x0);
      lv["kernel_dim"] = kr.dim;
      lv["expected_kernel_dim"] = m * n * (n + 1) / 2;
      if (antisym) {
        const double smin = min_reduced_sigma(*L, sbar0);
        const double pm = static_cast<double>(L->spec().reduced_dim());
        lv["predicted_first_lower_bound"] = 2.0 * smin * umax / std::sqrt(pm);
        lv["reduced_sigma_min"] = smin;
      }
      summary["kernel_dim"] = kr.dim;
      summary["expected_kernel_dim"] = m * n * (n + 1) / 2;
      if (antisym) summary["predicted_first_lower_bound"] = lv["predicted_first_lower_bound"];
    }
    levels.push_back(lv);
  }
  json ratios;
  if (refine > 0) refinement_ratios(levels, {"el_norm", "hc_first_norm", "hc_second_norm"}, tol, ratios, checks);
  const json& fin = levels.back();
  for (const char* key : {"el_norm", "hc_first_norm", "hc_second_norm", "curv_defect", "alt_delta_norm"})
    summary[key] = fin[key];
  summary["levels"] = levels;
  if (refine > 0) summary["ratios"] = ratios;
  return summary;
}

// regularity -----------------------------------------------------------------

json regularity(const Scenario& sc, unsigned refine, Checks& checks) {
  (void)refine;
  const GridPtr grid = sc.grid(0);
  const auto L = sc.lagrangian(grid);
  const std::size_t n = grid->dim(), m = sc.algebra()->dim();
  const JetField sbar = add_to_jet(prolong(sc.connection("s", grid)),
                                   sc.has_field("t") ? sc.two_tensor("t", grid, 0) : zero_tensor(grid, m));
  const json& opt = sc.json().contains("options") ? sc.json()["options"] : json::object();
  const std::size_t kernel_points = opt.value("kernel_points", std::size_t{100});

  std::vector<std::size_t> interior;
  for (std::size_t x = 0; x < grid->points(); ++x)
    if (grid->interior(x)) interior.push_back(x);
  require(!interior.empty(), "grid has no interior point");
  std::size_t x0 = interior[interior.size() / 2];
  if (opt.contains("point")) {
    x0 = opt["point"].get<std::size_t>();
    require(x0 < grid->points() && grid->interior(x0), "field options.point must be an interior grid index");
  }

  const HessianReport hr = hessian(*L, sbar, x0);
  json out = {{"point", x0},
              {"singular_rows_ok", hr.singular_rows_ok},
              {"diagonal_row_max", hr.diagonal_row_max},
              {"reduced_det", hr.reduced_det},
              {"reduced_cond", hr.reduced_cond},
              {"reduced_sigma_min", hr.reduced_sigma_min},
              {"symmetry_defect", hr.symmetry_defect},
              {"lagrangian", L->spec().name}};
  checks.truth("singular_rows_ok", hr.singular_rows_ok);
  checks.ge("reduced_sigma_min", hr.reduced_sigma_min, 1e-12 * std::max(1.0, hr.reduced.norm()));
  checks.le("symmetry_defect", hr.symmetry_defect, 1e-12 * std::max(1.0, hr.full.cwiseAbs().maxCoeff()));

  if (L->spec().name == "yang_mills") {
    const MetricData md(*grid);
    const Eigen::MatrixXd& G2 = md.g2(x0);
    const Eigen::MatrixXd& k = sc.pairing().matrix();
    const auto P = static_cast<Eigen::Index>(G2.rows());
    const auto M = static_cast<Eigen::Index>(m);
    double gap = 0.0;
    for (Eigen::Index p = 0; p < P; ++p)
      for (Eigen::Index q = 0; q < P; ++q)
        for (Eigen::Index a = 0; a < M; ++a)
          for (Eigen::Index b = 0; b < M; ++b)
            gap = std::max(gap, std::abs(hr.reduced(p * M + a, q * M + b) - 2.0 * md.vol(x0) * G2(p, q) * k(a, b)));
    out["analytic_block_gap"] = gap;
    checks.le("analytic_block_gap", gap, 1e-12);
  }

  // Kernel dimension at seeded random interior points.
  Rng rng(sc.seed() ^ fnv1a("kernel_points"));
  std::size_t worst_dim_gap = 0, min_dim = std::numeric_limits<std::size_t>::max(), max_dim = 0;
  double alt_max = 0.0;
  for (std::size_t k = 0; k < kernel_points; ++k) {
    const std::size_t x = interior[static_cast<std::size_t>(rng.integer(0, static_cast<long>(interior.size()) - 1))];
    const KernelReport kr = first_group_kernel(*L, sbar, x);
    min_dim = std::min(min_dim, kr.dim);
    max_dim = std::max(max_dim, kr.dim);
    worst_dim_gap = std::max(worst_dim_gap, kr.dim > kr.expected ? kr.dim - kr.expected : kr.expected - kr.dim);
    alt_max = std::max(alt_max, kr.kernel_alt_max);
  }
  const std::size_t expected = m * n * (n + 1) / 2;
  out["kernel_points"] = kernel_points;
  out["kernel_dim"] = kernel_points ? max_dim : 0;
  out["kernel_dim_min"] = kernel_points ? min_dim : 0;
  out["expected_kernel_dim"] = expected;
  out["kernel_alt_max"] = alt_max;
  if (kernel_points) {
    checks.le("kernel_dim_gap", static_cast<double>(worst_dim_gap), 0.0);
    checks.le("kernel_alt_max", alt_max, 1e-10);
  }
  return out;
}

// jacobi ---------------------------------------------------------------------

json jacobi(const Scenario& sc, unsigned refine, Checks& checks) {
  const Tolerances& tol = sc.tolerances();
  json levels = json::array();
  for (unsigned level = 0; level <= refine; ++level) {
    const GridPtr grid = sc.grid(level);
    const auto L = sc.lagrangian(grid);
    const std::size_t m = sc.algebra()->dim();
    const ConnectionField s = sc.connection("s", grid);
    const VariationField X = sc.variation("variation", grid);
    const double h = h_of(*grid);
    const std::string sfx = tag(level, refine);

    const double eps = tol.fd_eps * std::max(1.0, max_abs(s.data()));
    const ResidualArray jh = jacobi_residual_holonomic(*L, s, X);
    const ResidualArray fd = linearize_el_fd(*L, s, X, eps);
    std::vector<double> diff(jh.values.size());
    for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = jh.values[k] - fd.values[k];
    const double gap = interior_norms(*grid, jh.comps, diff).max;
    const double scale = std::max(1.0, fd.norms.max);
    checks.le("oracle_gap" + sfx, gap, 5.0 * (eps * eps + h * h) * scale);

    const JetField sbar = prolong(s);
    const JetVariationField x1 = prolong(X);
    const TwoTensorField t = sc.has_field("t") ? sc.two_tensor("t", grid, 0) : zero_tensor(grid, m);
    const JetVariationField xbar = add_to_jet(x1, t);
    const JacobiResidual r0 = jacobi_residual(*L, sbar, x1);
    const JacobiResidual r1 = jacobi_residual(*L, sbar, xbar);
    const double kernel_defect = std::max(max_abs_difference(r0.first.values, r1.first.values),
                                          max_abs_difference(r0.second.values, r1.second.values));
    const T2Decomposition dec = t2_decompose(xbar);
    const bool sym_t = t.symmetry() != Symmetry::antisymmetric;
    if (sym_t) {
      checks.le("kernel_defect" + sfx, kernel_defect, 1e-12);
      checks.le("sym_defect" + sfx, dec.sym_defect, 1e-12 * std::max(1.0, max_abs(t.data())));
    }
    const double el = el_residual(*L, s).norms.max;
    levels.push_back({{"h", h},
                      {"eps", eps},
                      {"el_norm", el},
                      {"oracle_gap", gap},
                      {"oracle_max", fd.norms.max},
                      {"jac_holonomic", jh.norms.max},
                      {"jac_first", r1.first.norms.max},
                      {"jac_second", r1.second.norms.max},
                      {"kernel_defect", kernel_defect},
                      {"sym_defect", dec.sym_defect}});
  }
  json out = levels.back();
  out["levels"] = levels;
  if (refine > 0) {
    json ratios;
    refinement_ratios(levels, {"oracle_gap"}, tol, ratios, checks);
    out["ratios"] = ratios;
  }
  return out;
}

// gauge ----------------------------------------------------------------------

json gauge(const Scenario& sc, unsigned refine, Checks& checks) {
  const Tolerances& tol = sc.tolerances();
  json levels = json::array();
  for (unsigned level = 0; level <= refine; ++level) {
    const GridPtr grid = sc.grid(level);
    const auto L = sc.lagrangian(grid);
    const LieAlgebra& alg = *sc.algebra();
    const std::size_t n = grid->dim(), m = alg.dim();
    const ConnectionField s = sc.connection("s", grid);
    const GaugeParameterField eps = sc.gauge_parameter("eps", grid);
    const double h = h_of(*grid), step = tol.step;
    const std::string sfx = tag(level, refine);
    json lv = {{"h", h}, {"step", step}};

    const double inv = check_gauge_invariance(*L, s, eps, step);
    const double inv_bound = tol.C * (h * h + step * step);
    lv["invariance_defect"] = inv;
    checks.le("invariance_defect" + sfx, inv, inv_bound);
    if (sc.mass_term()) {
      // d/dtau of the mass term along the gauge vector, exact for a quadratic.
      const double mu2 = sc.json()["lagrangian"]["mass"].get<double>();
      const VariationField dA = infinitesimal_gauge(s, eps, alg);
      const MetricData md(*grid);
      const Eigen::MatrixXd& k = sc.pairing().matrix();
      double pred = 0.0;
      for (std::size_t x = 0; x < grid->points(); ++x) {
        if (!grid->interior(x)) continue;
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < m; ++a)
              for (std::size_t b = 0; b < m; ++b) v += md.ginv(x)(i, j) * k(a, b) * s(x, i, a) * dA(x, j, b);
        pred = std::max(pred, std::abs(mu2 * md.vol(x) * v));
      }
      lv["predicted_mass_derivative"] = pred;
      lv["predicted_invariance_lower_bound"] = std::max(0.0, pred - inv_bound);
    }

    const PreservationReport pr = check_solution_preservation(*L, s, eps, step);
    lv["el_before"] = pr.el_before;
    lv["el_after"] = pr.el_after;
    lv["preservation_defect"] = pr.defect;
    checks.le("extremal" + sfx, pr.el_before, tol.eps0 + tol.C * h * h);
    if (pr.abelian) {
      checks.le("preservation_defect" + sfx, pr.defect, 1e-12);
      checks.le("el_norm_change" + sfx, std::abs(pr.el_after - pr.el_before), 1e-12);
    } else {
      const PreservationReport half = check_solution_preservation(*L, s, eps, 0.5 * step);
      lv["preservation_defect_half"] = half.defect;
      checks.le("el_after" + sfx, pr.el_after, tol.eps0 + tol.C * (h * h + step * step));
      if (pr.defect > tol.roundoff) {
        const double ratio = half.defect / pr.defect;
        lv["preservation_ratio"] = ratio;
        checks.within("preservation_ratio" + sfx, ratio, 0.25, tol.ratio_tol);
      }
    }

    const JetField sbar = add_to_jet(prolong(s), sc.has_field("t") ? sc.two_tensor("t", grid, 0) : zero_tensor(grid, m));
    const double eq = check_rho_equivariance(sbar, eps, alg, step);
    lv["equivariance_defect"] = eq;
    checks.le("equivariance_defect" + sfx, eq, 1e-12);
    levels.push_back(lv);
  }
  json out = levels.back();
  out["levels"] = levels;
  return out;
}

// selfdual -------------------------------------------------------------------

json selfdual(const Scenario& sc, unsigned refine, Checks& checks) {
  const Tolerances& tol = sc.tolerances();
  json levels = json::array();
  for (unsigned level = 0; level <= refine; ++level) {
    const GridPtr grid = sc.grid(level);
    const MetricContext ctx(grid);
    const std::size_t m = sc.algebra()->dim();
    const double h = h_of(*grid);
    const std::string sfx = tag(level, refine);
    JetField sbar = prolong(sc.connection("s", grid));
    if (sc.has_field("t")) sbar = add_to_jet(sbar, sc.two_tensor("t", grid, 0));
    const double da_max = max_abs(sbar.da.data());
    const SelfDualReport r = selfdual_check(sbar, *sc.algebra(), ctx, sc.pairing());
    (void)m;
    const double dual = std::min(r.sd_defect, r.asd_defect);
    const double bound = tol.eps0 + tol.C * h * h;
    const bool premise = r.alt_defect <= 1e-12 * std::max(1.0, da_max) && dual <= bound;
    // The verified statement is the implication, so a false premise passes.
    checks.truth("selfdual_implies_extremal" + sfx, !premise || r.el_norm <= bound);
    levels.push_back({{"h", h},
                      {"alt_defect", r.alt_defect},
                      {"sd_defect", r.sd_defect},
                      {"asd_defect", r.asd_defect},
                      {"dual_defect", dual},
                      {"curvature_max", r.curvature_max},
                      {"el_norm", r.el_norm},
                      {"el_l2", r.el_l2},
                      {"premise", premise}});
  }
  json out = levels.back();
  out["levels"] = levels;
  if (refine > 0) {
    json ratios;
    refinement_ratios(levels, {"dual_defect", "el_norm"}, tol, ratios, checks);
    out["ratios"] = ratios;
  }
  return out;
}

using SuiteFn = std::function<json(const Scenario&, unsigned, Checks&)>;

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {{"fibration", fibration},
                                                       {"regularity", regularity},
                                                       {"jacobi", jacobi},
                                                       {"gauge", gauge},
                                                       {"selfdual", selfdual}};
  return table;
}

json header(const Scenario& sc, const std::string& command, unsigned refine) {
  return {{"command", command},
          {"version", version_string()},
          {"scenario_hash", sc.hash()},
          {"seed", sc.seed()},
          {"refine", refine},
          {"timestamp", timestamp()}};
}

bool applicable(const Scenario& sc, const std::string& name, std::string& why) {
  const GridPtr g = sc.grid(0);
  if (name == "selfdual" && (g->dim() != 4 || !g->signature().riemannian())) {
    why = "needs a 4-dimensional Riemannian base";
    return false;
  }
  if (name == "jacobi" && !sc.has_field("variation")) {
    why = "no variation field";
    return false;
  }
  if (name == "gauge" && !sc.has_field("eps")) {
    why = "no eps field";
    return false;
  }
  return true;
}

}  // namespace

SuiteOutcome run_command(const Scenario& scenario, const std::string& command, unsigned refine) {
  std::string name = command;
  for (const char* prefix : {"verify ", "report "})
    if (name.rfind(prefix, 0) == 0) name = name.substr(std::string(prefix).size());
  require(refine <= 4, "refine must be at most 4");

  SuiteOutcome out;
  out.report = header(scenario, command, refine);
  if (name == "all") {
    json per = json::object();
    bool ok = true;
    for (const auto& [suite, fn] : suites()) {
      std::string why;
      if (!applicable(scenario, suite, why)) {
        per[suite] = {{"skipped", why}};
        continue;
      }
      Checks checks;
      json r = fn(scenario, refine, checks);
      r["checks"] = checks.list();
      r["passed"] = checks.passed();
      ok = ok && checks.passed();
      per[suite] = std::move(r);
    }
    out.report["suites"] = per;
    out.report["passed"] = ok;
    out.passed = ok;
    return out;
  }
  const auto it = suites().find(name);
  if (it == suites().end()) throw InputError("unknown command: " + command);
  Checks checks;
  json r = it->second(scenario, refine, checks);
  for (auto kv = r.begin(); kv != r.end(); ++kv) out.report[kv.key()] = kv.value();
  out.report["checks"] = checks.list();
  out.report["passed"] = checks.passed();
  out.passed = checks.passed();
  return out;
}

}  // namespace gvc
