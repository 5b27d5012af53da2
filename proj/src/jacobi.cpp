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

#include "gvc/jacobi.hpp"

#include "gvc/error.hpp"
#include "gvc/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace gvc {

JacobiResidual jacobi_operator(const FirstOrderLagrangian& L, const GridPtr& grid, std::span<const double> fibre,
                               std::span<const double> vel, std::span<const double> v, std::span<const double> dv,
                               std::span<const double> dv_grad) {
  const JetLayout lay = L.layout();
  const std::size_t n = lay.n, F = lay.fibre(), V = lay.velocity(), D = lay.dim(), N = grid->points();
  require(fibre.size() == N * F && v.size() == N * F, "jacobi: fibre data has the wrong size");
  require(vel.size() == N * V && dv.size() == N * V, "jacobi: velocity data has the wrong size");
  require(dv_grad.size() == N * n * V, "jacobi: velocity gradient has the wrong size");

  auto point = [&](std::size_t x, std::vector<double>& z) {
    std::copy_n(fibre.data() + x * F, F, z.data());
    std::copy_n(vel.data() + x * V, V, z.data() + F);
  };

  // Sampled Hessian along sbar, D x D per point.
  std::vector<double> H(N * D * D);
  parallel_for(N, [&](std::size_t b, std::size_t e) {
    std::vector<double> z(D);
    for (std::size_t x = b; x < e; ++x) {
      point(x, z);
      // Symmetric, so storage order does not matter.
      Eigen::Map<Eigen::MatrixXd> h(H.data() + x * D * D, D, D);
      L.hessian(x, z, h);
    }
  });

  // KM(x)[c, sigma] = sum_j d_j H[c, sigma^j].
  std::vector<double> KM(N * D * F, 0.0), col(N * D * F), dcol(N * D * F);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t c = 0; c < D; ++c)
        for (std::size_t s = 0; s < F; ++s) col[(x * D + c) * F + s] = H[(x * D + c) * D + F + lay.vel_index(s, j)];
    partial_raw(*grid, D * F, col, j, dcol);
    for (std::size_t k = 0; k < KM.size(); ++k) KM[k] += dcol[k];
  }
  col.clear();
  col.shrink_to_fit();
  dcol.clear();
  dcol.shrink_to_fit();

  const auto dvv = prolong_velocity(*grid, lay, v);
  const auto hol = prolong_velocity(*grid, lay, fibre);

  JacobiResidual out;
  out.first = ResidualArray{grid, F, std::vector<double>(N * F, 0.0), {}};
  out.second = ResidualArray{grid, V, std::vector<double>(N * V, 0.0), {}};

  parallel_for(N, [&](std::size_t b, std::size_t e) {
    std::vector<double> z(D), zp(D), w(D, 0.0);
    Eigen::MatrixXd hp(D, D), hm(D, D), T = Eigen::MatrixXd::Zero(D, D);
    for (std::size_t x = b; x < e; ++x) {
      const double* h = H.data() + x * D * D;
      auto Hc = [&](std::size_t r, std::size_t c) { return h[r * D + c]; };
      const double* km = KM.data() + x * D * F;
      const double* vx = v.data() + x * F;
      const double* dvx = dv.data() + x * V;
      const double* dvvx = dvv.data() + x * V;
      const double* gx = dv_grad.data() + x * n * V;

      // Directional difference of the Hessian along w = (0, j^1 s - sbar).
      double wmax = 0.0;
      for (std::size_t k = 0; k < V; ++k) {
        w[F + k] = hol[x * V + k] - vel[x * V + k];
        wmax = std::max(wmax, std::abs(w[F + k]));
      }
      const bool has_t = wmax > 0.0;
      if (has_t) {
        point(x, z);
        double zmax = 0.0;
        for (double q : z) zmax = std::max(zmax, std::abs(q));
        const double tau = fd_step(zmax) / wmax;
        for (std::size_t k = 0; k < D; ++k) zp[k] = z[k] + tau * w[k];
        L.hessian(x, zp, hp);
        for (std::size_t k = 0; k < D; ++k) zp[k] = z[k] - tau * w[k];
        L.hessian(x, zp, hm);
        T = (hp - hm) / (2.0 * tau);
      }

      double* o1 = out.first.values.data() + x * F;
      for (std::size_t s = 0; s < F; ++s) {
        double acc = 0.0;
        for (std::size_t a = 0; a < F; ++a) {
          double coef = Hc(a, s) - km[a * F + s];
          if (has_t) coef += T(a, s);
          acc += coef * vx[a];
        }
        for (std::size_t a = 0; a < F; ++a)
          for (std::size_t i = 0; i < n; ++i) {
            const std::size_t ai = F + lay.vel_index(a, i);
            const std::size_t si = F + lay.vel_index(s, i);
            acc += (Hc(s, ai) - Hc(a, si)) * dvvx[lay.vel_index(a, i)];
            double coef = -km[ai * F + s];
            if (has_t) coef += T(s, ai);
            acc += coef * dvx[lay.vel_index(a, i)];
            for (std::size_t j = 0; j < n; ++j)
              acc -= Hc(F + lay.vel_index(a, j), si) * gx[i * V + lay.vel_index(a, j)];
          }
        o1[s] = acc;
      }

      double* o2 = out.second.values.data() + x * V;
      for (std::size_t s = 0; s < F; ++s)
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t sj = F + lay.vel_index(s, j);
          double acc = 0.0;
          for (std::size_t a = 0; a < F; ++a)
            for (std::size_t i = 0; i < n; ++i) {
              const std::size_t k = lay.vel_index(a, i);
              acc += Hc(F + k, sj) * (dvvx[k] - dvx[k]);
            }
          if (has_t) {
            for (std::size_t a = 0; a < F; ++a) acc += T(a, sj) * vx[a];
            for (std::size_t k = 0; k < V; ++k) acc += T(F + k, sj) * dvx[k];
          }
          o2[lay.vel_index(s, j)] = acc;
        }
    }
  });
  out.first.update_norms();
  out.second.update_norms();
  return out;
}

JacobiResidual jacobi_residual(const ConnectionLagrangian& L, const JetField& sbar, const JetVariationField& xbar) {
  require(sbar.base.m() == L.layout().m && xbar.v.m() == L.layout().m, "jacobi: dim_g mismatch");
  const auto grad = gradient_raw(xbar.dv.grid(), xbar.dv.per_point(), xbar.dv.data());
  return jacobi_operator(L, sbar.base.grid_ptr(), sbar.base.data(), sbar.da.data(), xbar.v.data(), xbar.dv.data(), grad);
}

ResidualArray jacobi_residual_holonomic(const ConnectionLagrangian& L, const ConnectionField& s, const VariationField& X) {
  require(s.m() == L.layout().m && X.m() == L.layout().m, "jacobi: dim_g mismatch");
  const JetLayout lay = L.layout();
  const std::size_t n = lay.n, V = lay.velocity(), N = s.points(), m = lay.m;
  const auto vel = prolong_velocity(s.grid(), lay, s.data());
  const auto dv = prolong_velocity(X.grid(), lay, X.data());
  std::vector<double> grad(N * n * V);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const VariationField d2 = second_partial(X, i, j);
      for (std::size_t x = 0; x < N; ++x)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t a = 0; a < m; ++a) {
            const double val = d2(x, b, a);
            grad[(x * n + i) * V + lay.vel_index(b * m + a, j)] = val;
            grad[(x * n + j) * V + lay.vel_index(b * m + a, i)] = val;
          }
    }
  return jacobi_operator(L, s.grid_ptr(), s.data(), vel, X.data(), dv, grad).first;
}

ResidualArray linearize_el_fd(const ConnectionLagrangian& L, const ConnectionField& s, const VariationField& X, double eps) {
  require(eps > 0.0, "linearize_el_fd: eps must be positive");
  ConnectionField sp = s, sm = s;
  for (std::size_t k = 0; k < s.data().size(); ++k) {
    sp.data()[k] += eps * X.data()[k];
    sm.data()[k] -= eps * X.data()[k];
  }
  ResidualArray ep = el_residual(L, sp);
  const ResidualArray em = el_residual(L, sm);
  for (std::size_t k = 0; k < ep.values.size(); ++k) ep.values[k] = (ep.values[k] - em.values[k]) / (2.0 * eps);
  ep.update_norms();
  return ep;
}

T2Decomposition t2_decompose(const JetVariationField& xbar) {
  const JetVariationField hol = prolong(xbar.v);
  TwoTensorField t(xbar.v.grid_ptr(), xbar.v.m());
  for (std::size_t k = 0; k < t.data().size(); ++k) t.data()[k] = xbar.dv.data()[k] - hol.dv.data()[k];
  const double defect = max_abs(alt(t).data());
  return T2Decomposition{xbar.v, std::move(t), defect};
}

}  // namespace gvc
