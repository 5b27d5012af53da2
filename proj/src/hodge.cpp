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

#include "gvc/hodge.hpp"

#include "gvc/error.hpp"
#include "gvc/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace gvc {

MetricContext::MetricContext(GridPtr grid) : grid_(std::move(grid)) {
  require(grid_ != nullptr, "metric context needs a grid");
  data_ = std::make_shared<MetricData>(*grid_);
}

Eigen::MatrixXd MetricContext::gram(std::size_t x, std::size_t r) const {
  if (r == 2) return data_->g2(x);
  return induced_metric(data_->ginv(x), r);
}

int MetricContext::star_star_sign(std::size_t r) const {
  const std::size_t n = dim();
  const int s = (r * (n - r)) % 2 == 0 ? 1 : -1;
  return s * data_->det_sign();
}

std::size_t AdFormField::terms() const { return subsets(grid->dim(), r).size(); }

AdFormField to_form(const CurvatureField& F) {
  AdFormField w{F.grid_ptr(), 2, F.m(), {}};
  w.values.reserve(F.points() * w.per_point());
  for (std::size_t x = 0; x < F.points(); ++x) {
    const auto r = reduce(F, x);
    w.values.insert(w.values.end(), r.begin(), r.end());
  }
  return w;
}

CurvatureField to_curvature(const AdFormField& w) {
  require(w.r == 2, "only 2-forms convert to curvature fields");
  CurvatureField F(w.grid, w.m);
  const std::size_t P = w.per_point();
  for (std::size_t x = 0; x < F.points(); ++x)
    expand_into(std::span<const double>(w.values.data() + x * P, P), F.n(), w.m, F.at(x));
  F.set_symmetry(Symmetry::antisymmetric);
  return F;
}

AdFormField hodge_star(const AdFormField& w, const MetricContext& ctx) {
  const std::size_t n = ctx.dim(), r = w.r, m = w.m;
  require(w.grid->points() == ctx.grid().points() && w.grid->dim() == n, "hodge_star: grid mismatch");
  require(r <= n, "hodge_star: form degree exceeds dimension");
  const auto In = subsets(n, r);
  const auto Out = subsets(n, n - r);
  // (star w)_K only sees I = complement(K).
  std::vector<std::size_t> src(Out.size());
  std::vector<int> sign(Out.size());
  for (std::size_t k = 0; k < Out.size(); ++k) {
    const Subset I = complement(Out[k], n);
    src[k] = static_cast<std::size_t>(std::find(In.begin(), In.end(), I) - In.begin());
    sign[k] = concat_sign(I, Out[k]);
  }
  AdFormField out{w.grid, n - r, m, std::vector<double>(w.grid->points() * Out.size() * m)};
  const std::size_t Pin = In.size() * m, Pout = Out.size() * m;
  const bool constant = ctx.data().constant();
  const Eigen::MatrixXd G0 = ctx.gram(0, r);
  parallel_for(w.grid->points(), [&](std::size_t b, std::size_t e) {
    Eigen::MatrixXd G;
    for (std::size_t x = b; x < e; ++x) {
      const Eigen::MatrixXd& Gx = constant ? G0 : (G = ctx.gram(x, r));
      const double vol = ctx.data().vol(x);
      const double* in = w.values.data() + x * Pin;
      double* o = out.values.data() + x * Pout;
      for (std::size_t k = 0; k < Out.size(); ++k) {
        const std::size_t I = src[k];
        for (std::size_t a = 0; a < m; ++a) {
          double raised = 0.0;
          for (std::size_t J = 0; J < In.size(); ++J) raised += Gx(I, J) * in[J * m + a];
          o[k * m + a] = vol * sign[k] * raised;
        }
      }
    }
  });
  return out;
}

CurvatureField hodge_star(const CurvatureField& F, const MetricContext& ctx) {
  require(ctx.dim() == 4, "hodge_star of a 2-form is a 2-form only when n = 4");
  return to_curvature(hodge_star(to_form(F), ctx));
}

std::vector<double> wedge_dot(const AdFormField& w1, const AdFormField& w2, const MetricContext& ctx,
                              const Pairing& pairing) {
  const std::size_t n = ctx.dim(), m = w1.m;
  require(w1.r + w2.r == n, "wedge_dot: form degrees must add up to n");
  require(w2.m == m && pairing.dim() == m, "wedge_dot: dim_g mismatch");
  const auto S1 = subsets(n, w1.r);
  const auto S2 = subsets(n, w2.r);
  std::vector<std::size_t> partner(S1.size());
  std::vector<int> sign(S1.size());
  for (std::size_t a = 0; a < S1.size(); ++a) {
    const Subset K = complement(S1[a], n);
    partner[a] = static_cast<std::size_t>(std::find(S2.begin(), S2.end(), K) - S2.begin());
    sign[a] = concat_sign(S1[a], K);
  }
  const std::size_t P1 = S1.size() * m, P2 = S2.size() * m;
  std::vector<double> out(w1.grid->points());
  const Eigen::MatrixXd& k = pairing.matrix();
  for (std::size_t x = 0; x < out.size(); ++x) {
    double s = 0.0;
    for (std::size_t I = 0; I < S1.size(); ++I)
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          s += sign[I] * k(a, b) * w1.values[x * P1 + I * m + a] * w2.values[x * P2 + partner[I] * m + b];
    out[x] = s / ctx.data().vol(x);
  }
  return out;
}

std::vector<double> wedge_dot(const CurvatureField& F, const CurvatureField& G, const MetricContext& ctx,
                              const Pairing& pairing) {
  require(ctx.dim() == 4, "wedge_dot of two 2-forms needs n = 4");
  return wedge_dot(to_form(F), to_form(G), ctx, pairing);
}

ResidualArray ym_covariant_divergence(const ConnectionField& s, const LieAlgebra& alg, const MetricContext& ctx) {
  const std::size_t n = s.n(), m = s.m(), N = s.points();
  require(alg.dim() == m, "ym_covariant_divergence: dim_g mismatch");
  const CurvatureField R = curvature(prolong(s), alg);
  // Rup(x, i, j, a) = vol g^{ik} g^{jl} R_kl.
  TwoTensorField Rup(s.grid_ptr(), m);
  for (std::size_t x = 0; x < N; ++x) {
    const Eigen::MatrixXd& gi = ctx.data().ginv(x);
    const double vol = ctx.data().vol(x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < m; ++a) {
          double v = 0.0;
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) v += gi(i, k) * gi(j, l) * R(x, k, l, a);
          Rup(x, i, j, a) = vol * v;
        }
  }
  ResidualArray out{s.grid_ptr(), n * m, std::vector<double>(N * n * m, 0.0), {}};
  std::vector<double> flux(N * n * m), dflux(N * n * m), br(m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) flux[(x * n + i) * m + a] = Rup(x, i, j, a);
    partial_raw(s.grid(), n * m, flux, j, dflux);
    for (std::size_t k = 0; k < flux.size(); ++k) out.values[k] += dflux[k];
    if (alg.is_abelian()) continue;
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t i = 0; i < n; ++i) {
        std::span<const double> Aj(s.at(x).data() + j * m, m);
        std::span<const double> Rij(flux.data() + (x * n + i) * m, m);
        alg.bracket(Aj, Rij, br);
        for (std::size_t a = 0; a < m; ++a) out.values[(x * n + i) * m + a] += br[a];
      }
  }
  out.update_norms();
  return out;
}

SelfDualReport selfdual_check(const JetField& sbar, const LieAlgebra& alg, const MetricContext& ctx,
                              const Pairing& pairing) {
  require(ctx.dim() == 4, "selfdual_check requires a 4-dimensional base (n = " + std::to_string(ctx.dim()) + ")");
  require(ctx.signature().riemannian(), "selfdual_check requires a Riemannian metric");
  const GridChart& grid = sbar.base.grid();
  SelfDualReport rep;
  rep.alt_defect = max_abs(alt(delta_C(sbar)).data());
  {
    const CurvatureField F = curvature(sbar, alg);
    const CurvatureField S = hodge_star(F, ctx);
    const std::size_t P = F.per_point();
    std::vector<double> sd(F.data().size()), asd(F.data().size());
    for (std::size_t k = 0; k < sd.size(); ++k) {
      sd[k] = S.data()[k] - F.data()[k];
      asd[k] = S.data()[k] + F.data()[k];
    }
    const Norms nsd = interior_norms(grid, P, sd);
    const Norms nasd = interior_norms(grid, P, asd);
    rep.sd_defect = nsd.max;
    rep.sd_l2 = nsd.l2;
    rep.asd_defect = nasd.max;
    rep.asd_l2 = nasd.l2;
    rep.curvature_max = interior_norms(F).max;
  }
  const ConnectionLagrangian L(builtin_ym(ctx.data_ptr(), pairing), std::make_shared<LieAlgebra>(alg), sbar.base.grid_ptr());
  const ResidualArray e = sbar.holonomic ? euler_lagrange_operator(L, sbar.base.grid_ptr(), sbar.base.data(), sbar.da.data())
                                         : el_residual(L, sbar.base);
  rep.el_norm = e.norms.max;
  rep.el_l2 = e.norms.l2;
  return rep;
}

}  // namespace gvc
