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

#include "gvc/gauge.hpp"

#include "gvc/error.hpp"
#include "gvc/variational.hpp"

#include <algorithm>
#include <cmath>

namespace gvc {

namespace {

void check(const ConnectionField& A, const GaugeParameterField& eps, const LieAlgebra& alg) {
  require(A.m() == alg.dim() && eps.m() == alg.dim(), "gauge: dim_g mismatch");
  require(A.grid().points() == eps.grid().points() && A.n() == eps.n(), "gauge: eps grid does not match field grid");
}

}  // namespace

VariationField infinitesimal_gauge(const ConnectionField& A, const GaugeParameterField& eps, const LieAlgebra& alg) {
  check(A, eps, alg);
  const std::size_t n = A.n(), m = A.m();
  VariationField out(A.grid_ptr(), m);
  for (std::size_t i = 0; i < n; ++i) {
    const GaugeParameterField de = partial(eps, i);
    for (std::size_t x = 0; x < A.points(); ++x)
      for (std::size_t a = 0; a < m; ++a) out(x, i, a) = de(x, a);
  }
  if (!alg.is_abelian())
    for (std::size_t x = 0; x < A.points(); ++x)
      for (std::size_t i = 0; i < n; ++i) {
        std::span<const double> Ai(A.at(x).data() + i * m, m);
        const auto br = alg.bracket(Ai, eps.at(x));
        for (std::size_t a = 0; a < m; ++a) out(x, i, a) += br[a];
      }
  return out;
}

JetField gauge_step(const JetField& sbar, const GaugeParameterField& eps, const LieAlgebra& alg, double step) {
  check(sbar.base, eps, alg);
  const std::size_t n = sbar.base.n(), m = alg.dim(), N = sbar.base.points();
  std::vector<GaugeParameterField> d1;
  for (std::size_t i = 0; i < n; ++i) d1.push_back(partial(eps, i));
  JetField out = sbar;
  out.holonomic = false;
  std::vector<double> tmp(m);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t i = 0; i < n; ++i) {
      std::span<const double> Ai(sbar.base.at(x).data() + i * m, m);
      alg.bracket(Ai, eps.at(x), tmp);
      for (std::size_t a = 0; a < m; ++a) out.base(x, i, a) += step * (d1[i](x, a) + tmp[a]);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GaugeParameterField d2 = second_partial(eps, i, j);
      for (std::size_t x = 0; x < N; ++x) {
        std::span<const double> Ai(sbar.base.at(x).data() + i * m, m);
        std::span<const double> Aij(sbar.da.at(x).data() + (i * n + j) * m, m);
        const auto b1 = alg.bracket(Ai, d1[j].at(x));
        const auto b2 = alg.bracket(Aij, eps.at(x));
        for (std::size_t a = 0; a < m; ++a) out.da(x, i, j, a) += step * (d2(x, a) + b1[a] + b2[a]);
      }
    }
  return out;
}

ConnectionField abelian_transform(const ConnectionField& A, const GaugeParameterField& chi) {
  require(A.m() == chi.m(), "gauge: dim_g mismatch");
  ConnectionField out = A;
  for (std::size_t i = 0; i < A.n(); ++i) {
    const GaugeParameterField d = partial(chi, i);
    for (std::size_t x = 0; x < A.points(); ++x)
      for (std::size_t a = 0; a < A.m(); ++a) out(x, i, a) += d(x, a);
  }
  return out;
}

double check_gauge_invariance(const ConnectionLagrangian& L, const ConnectionField& A, const GaugeParameterField& eps,
                              double step) {
  require(step > 0.0, "gauge invariance: step must be positive");
  const VariationField X = infinitesimal_gauge(A, eps, L.algebra());
  const JetField j0 = prolong(A);
  const JetVariationField jx = prolong(X);
  JetField jp = j0, jm = j0;
  for (std::size_t k = 0; k < j0.base.data().size(); ++k) {
    jp.base.data()[k] += step * jx.v.data()[k];
    jm.base.data()[k] -= step * jx.v.data()[k];
  }
  for (std::size_t k = 0; k < j0.da.data().size(); ++k) {
    jp.da.data()[k] += step * jx.dv.data()[k];
    jm.da.data()[k] -= step * jx.dv.data()[k];
  }
  const auto lp = l_eval(L, jp);
  const auto lm = l_eval(L, jm);
  double worst = 0.0;
  for (std::size_t x = 0; x < lp.size(); ++x)
    if (A.grid().interior(x)) worst = std::max(worst, std::abs((lp[x] - lm[x]) / (2.0 * step)));
  return worst;
}

PreservationReport check_solution_preservation(const ConnectionLagrangian& L, const ConnectionField& s,
                                               const GaugeParameterField& eps, double step) {
  PreservationReport rep;
  rep.abelian = L.algebra().is_abelian();
  const ResidualArray e0 = el_residual(L, s);
  ConnectionField moved = s;
  if (rep.abelian) {
    moved = abelian_transform(s, eps);
  } else {
    const VariationField X = infinitesimal_gauge(s, eps, L.algebra());
    for (std::size_t k = 0; k < moved.data().size(); ++k) moved.data()[k] += step * X.data()[k];
  }
  const ResidualArray e1 = el_residual(L, moved);
  rep.el_before = e0.norms.max;
  rep.el_after = e1.norms.max;
  for (std::size_t x = 0; x < s.points(); ++x) {
    if (!s.grid().interior(x)) continue;
    for (std::size_t c = 0; c < e0.comps; ++c)
      rep.defect = std::max(rep.defect, std::abs(e1.values[x * e0.comps + c] - e0.values[x * e0.comps + c]));
  }
  return rep;
}

double check_rho_equivariance(const JetField& sbar, const GaugeParameterField& eps, const LieAlgebra& alg, double step) {
  const JetField moved = gauge_step(sbar, eps, alg, step);
  const VariationField X = infinitesimal_gauge(sbar.base, eps, alg);
  double worst = 0.0;
  for (std::size_t k = 0; k < X.data().size(); ++k)
    worst = std::max(worst, std::abs(moved.base.data()[k] - (sbar.base.data()[k] + step * X.data()[k])));
  return worst;
}

}  // namespace gvc
