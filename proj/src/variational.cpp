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

#include "gvc/variational.hpp"

#include "gvc/error.hpp"
#include "gvc/parallel.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

namespace gvc {

void ResidualArray::update_norms(std::size_t radius) { norms = interior_norms(*grid, comps, values, radius); }

std::vector<double> prolong_velocity(const GridChart& grid, const JetLayout& layout, std::span<const double> fibre) {
  const std::size_t F = layout.fibre(), n = layout.n;
  require(fibre.size() == grid.points() * F, "prolong: fibre data has the wrong size");
  const auto grad = gradient_raw(grid, F, fibre);
  std::vector<double> vel(grid.points() * layout.velocity());
  for (std::size_t x = 0; x < grid.points(); ++x)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < F; ++a) vel[x * layout.velocity() + layout.vel_index(a, j)] = grad[(x * n + j) * F + a];
  return vel;
}

namespace {

void check_shapes(const FirstOrderLagrangian& L, const GridChart& grid, std::span<const double> fibre,
                  std::span<const double> vel) {
  const JetLayout lay = L.layout();
  require(lay.n == grid.dim(), "lagrangian base dimension does not match grid");
  require(fibre.size() == grid.points() * lay.fibre(), "fibre data has the wrong size");
  require(vel.size() == grid.points() * lay.velocity(), "velocity data has the wrong size");
}

}  // namespace

ResidualArray euler_lagrange_operator(const FirstOrderLagrangian& L, const GridPtr& grid, std::span<const double> fibre,
                                      std::span<const double> vel) {
  check_shapes(L, *grid, fibre, vel);
  const JetLayout lay = L.layout();
  const std::size_t F = lay.fibre(), V = lay.velocity(), D = lay.dim(), N = grid->points();

  std::vector<double> G(N * D);
  parallel_for(N, [&](std::size_t b, std::size_t e) {
    std::vector<double> z(D);
    for (std::size_t x = b; x < e; ++x) {
      std::copy_n(fibre.data() + x * F, F, z.data());
      std::copy_n(vel.data() + x * V, V, z.data() + F);
      L.gradient(x, z, std::span<double>(G.data() + x * D, D));
    }
  });

  ResidualArray res{grid, F, std::vector<double>(N * F), {}};
  for (std::size_t x = 0; x < N; ++x) std::copy_n(G.data() + x * D, F, res.values.data() + x * F);
  std::vector<double> flux(N * F), dflux(N * F);
  for (std::size_t j = 0; j < lay.n; ++j) {
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t a = 0; a < F; ++a) flux[x * F + a] = G[x * D + F + lay.vel_index(a, j)];
    partial_raw(*grid, F, flux, j, dflux);
    for (std::size_t k = 0; k < N * F; ++k) res.values[k] -= dflux[k];
  }
  res.update_norms();
  return res;
}

HCResidualPair hamilton_cartan(const FirstOrderLagrangian& L, const GridPtr& grid, std::span<const double> fibre,
                               std::span<const double> vel) {
  check_shapes(L, *grid, fibre, vel);
  const JetLayout lay = L.layout();
  const std::size_t F = lay.fibre(), V = lay.velocity(), D = lay.dim(), N = grid->points();

  HCResidualPair out;
  out.second = euler_lagrange_operator(L, grid, fibre, vel);
  out.first = ResidualArray{grid, V, std::vector<double>(N * V, 0.0), {}};

  const auto hol = prolong_velocity(*grid, lay, fibre);
  parallel_for(N, [&](std::size_t b, std::size_t e) {
    std::vector<double> z(D), w(D, 0.0), hw(D);
    for (std::size_t x = b; x < e; ++x) {
      bool nonzero = false;
      for (std::size_t k = 0; k < V; ++k) {
        w[F + k] = hol[x * V + k] - vel[x * V + k];
        nonzero = nonzero || w[F + k] != 0.0;
      }
      if (!nonzero) continue;
      std::copy_n(fibre.data() + x * F, F, z.data());
      std::copy_n(vel.data() + x * V, V, z.data() + F);
      L.hessian_times(x, z, w, hw);
      for (std::size_t a = 0; a < F; ++a) out.second.values[x * F + a] += hw[a];
      std::copy_n(hw.data() + F, V, out.first.values.data() + x * V);
    }
  });
  out.first.update_norms();
  out.second.update_norms();
  return out;
}

ResidualArray el_residual(const ConnectionLagrangian& L, const ConnectionField& s) {
  require(s.m() == L.layout().m, "connection dim_g does not match lagrangian");
  const auto vel = prolong_velocity(s.grid(), L.layout(), s.data());
  return euler_lagrange_operator(L, s.grid_ptr(), s.data(), vel);
}

HCResidualPair hc_residual(const ConnectionLagrangian& L, const JetField& sbar) {
  require(sbar.base.m() == L.layout().m, "jet field dim_g does not match lagrangian");
  return hamilton_cartan(L, sbar.base.grid_ptr(), sbar.base.data(), sbar.da.data());
}

ResidualArray el_residual_generic(const FirstOrderLagrangian& L, const SectionField& y) {
  const auto vel = prolong_velocity(y.grid(), L.layout(), y.data());
  return euler_lagrange_operator(L, y.grid_ptr(), y.data(), vel);
}

HCResidualPair hc_residual_generic(const FirstOrderLagrangian& L, const SectionJet& sbar) {
  return hamilton_cartan(L, sbar.y.grid_ptr(), sbar.y.data(), sbar.vel.data());
}

FibrationBase fibration_base(const ConnectionLagrangian& L, const ConnectionField& s) {
  FibrationBase b{el_residual(L, s).norms, prolong(s), {}};
  b.curvature = curvature(b.hol, L.algebra());
  return b;
}

FibrationReport verify_fibration(const ConnectionLagrangian& L, const FibrationBase& base, const TwoTensorField& t) {
  FibrationReport rep;
  rep.el = base.el;
  const JetField sbar = add_to_jet(base.hol, t);
  const HCResidualPair hc = hc_residual(L, sbar);
  rep.hc_first = hc.first.norms;
  rep.hc_second = hc.second.norms;
  const CurvatureField R1 = curvature(sbar, L.algebra());
  rep.curv_defect = max_abs_difference(base.curvature.data(), R1.data());
  // alt(delta_C(sbar)) with delta_C = sbar.da - hol.da.
  const std::size_t n = t.n(), m = t.m(), P = t.per_point();
  const auto& d = sbar.da.data();
  const auto& h = base.hol.da.data();
  for (std::size_t x = 0; x < t.points(); ++x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t a = 0; a < m; ++a) {
          const std::size_t ij = x * P + (i * n + j) * m + a, ji = x * P + (j * n + i) * m + a;
          rep.alt_delta_norm = std::max(rep.alt_delta_norm, std::abs(0.5 * ((d[ij] - h[ij]) - (d[ji] - h[ji]))));
        }
  return rep;
}

FibrationReport verify_fibration(const ConnectionLagrangian& L, const ConnectionField& s, const TwoTensorField& t) {
  return verify_fibration(L, fibration_base(L, s), t);
}

KernelReport first_group_kernel(const ConnectionLagrangian& L, const JetField& sbar, std::size_t x, double rel_tol) {
  const JetLayout lay = L.layout();
  const auto D = static_cast<Eigen::Index>(lay.dim());
  const auto F = static_cast<Eigen::Index>(lay.fibre());
  const auto V = static_cast<Eigen::Index>(lay.velocity());
  Eigen::MatrixXd h(D, D);
  L.hessian(x, jet_point(sbar, x), h);
  const Eigen::MatrixXd hv = h.block(F, F, V, V);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(hv, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();

  KernelReport rep;
  const std::size_t n = lay.n, m = lay.m;
  rep.expected = m * n * (n + 1) / 2;
  rep.sigma_max = sv(0);
  const double cut = rel_tol * std::max(rep.sigma_max, 1e-300);
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cut) {
      rep.sigma_min_nonzero = sv(k);
      continue;
    }
    ++rep.dim;
    rep.sigma_kernel_max = std::max(rep.sigma_kernel_max, sv(k));
    const Eigen::VectorXd v = svd.matrixV().col(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < m; ++a) {
          const double d = 0.5 * (v((i * n + j) * m + a) - v((j * n + i) * m + a));
          rep.kernel_alt_max = std::max(rep.kernel_alt_max, std::abs(d));
        }
  }
  return rep;
}

double min_reduced_sigma(const ConnectionLagrangian& L, const JetField& sbar) {
  const auto Pm = static_cast<Eigen::Index>(L.spec().reduced_dim());
  double best = std::numeric_limits<double>::infinity();
  const bool once = L.spec().quadratic && L.grid_ptr()->constant_metric();
  std::vector<double> r(Pm);
  Eigen::MatrixXd ht(Pm, Pm);
  for (std::size_t x = 0; x < sbar.base.points(); ++x) {
    L.reduced_curvature(jet_point(sbar, x), r);
    reduced_hessian(L.spec(), x, r, ht);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ht);
    best = std::min(best, svd.singularValues()(Pm - 1));
    if (once) break;
  }
  return best;
}

}  // namespace gvc
