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

#include "gvc/lagrangian.hpp"

#include "gvc/error.hpp"
#include "gvc/parallel.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

namespace gvc {

double reduced_value(const LagrangianSpec& spec, std::size_t x, std::span<const double> r) { return spec.ltilde(x, r); }

void reduced_gradient(const LagrangianSpec& spec, std::size_t x, std::span<const double> r, std::span<double> g) {
  if (spec.d_ltilde) return spec.d_ltilde(x, r, g);
  numeric_gradient([&](std::span<const double> p) { return spec.ltilde(x, p); }, r, g);
}

void reduced_hessian(const LagrangianSpec& spec, std::size_t x, std::span<const double> r, Eigen::Ref<Eigen::MatrixXd> h) {
  if (spec.d2_ltilde) return spec.d2_ltilde(x, r, h);
  if (spec.d_ltilde)
    return numeric_hessian([&](std::span<const double> p, std::span<double> g) { spec.d_ltilde(x, p, g); }, r, h);
  numeric_hessian([&](std::span<const double> p) { return spec.ltilde(x, p); }, r, h);
}

LagrangianSpec builtin_ym(std::shared_ptr<const MetricData> metric, const Pairing& pairing) {
  require(metric != nullptr, "builtin_ym: metric is required");
  const Eigen::MatrixXd k = pairing.matrix();
  require(std::abs(k.determinant()) > 1e-14 * std::max(1.0, k.cwiseAbs().maxCoeff()),
          "pairing is degenerate; the Yang-Mills Lagrangian needs det(k) != 0");
  LagrangianSpec s;
  s.name = "yang_mills";
  s.n = metric->dim();
  s.m = static_cast<std::size_t>(k.rows());
  s.analytic = true;
  s.quadratic = true;
  const std::size_t m = s.m;
  const std::size_t P = s.n * (s.n - 1) / 2;
  s.ltilde = [metric, k, m, P](std::size_t x, std::span<const double> r) {
    const Eigen::MatrixXd& G = metric->g2(x);
    double sum = 0.0;
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t q = 0; q < P; ++q) {
        const double gpq = G(p, q);
        if (gpq == 0.0) continue;
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) sum += gpq * k(a, b) * r[p * m + a] * r[q * m + b];
      }
    return metric->vol(x) * sum;
  };
  s.d_ltilde = [metric, k, m, P](std::size_t x, std::span<const double> r, std::span<double> g) {
    const Eigen::MatrixXd& G = metric->g2(x);
    const double v2 = 2.0 * metric->vol(x);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t a = 0; a < m; ++a) {
        double sum = 0.0;
        for (std::size_t q = 0; q < P; ++q) {
          const double gpq = G(p, q);
          if (gpq == 0.0) continue;
          for (std::size_t b = 0; b < m; ++b) sum += gpq * k(a, b) * r[q * m + b];
        }
        g[p * m + a] = v2 * sum;
      }
  };
  s.d2_ltilde = [metric, k, m, P](std::size_t x, std::span<const double>, Eigen::Ref<Eigen::MatrixXd> h) {
    const Eigen::MatrixXd& G = metric->g2(x);
    const double v2 = 2.0 * metric->vol(x);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t q = 0; q < P; ++q)
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) h(p * m + a, q * m + b) = v2 * G(p, q) * k(a, b);
  };
  return s;
}

LagrangianSpec custom_quadratic(std::size_t n, std::size_t m, Eigen::MatrixXd Q) {
  const auto N = static_cast<Eigen::Index>(n * (n - 1) / 2 * m);
  require(Q.rows() == N && Q.cols() == N,
          "custom_quadratic coefficients must be a square matrix of size m*n*(n-1)/2 = " + std::to_string(N));
  require((Q - Q.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, Q.cwiseAbs().maxCoeff()),
          "custom_quadratic coefficients must be symmetric");
  LagrangianSpec s;
  s.name = "custom_quadratic";
  s.n = n;
  s.m = m;
  s.analytic = true;
  s.quadratic = true;
  s.ltilde = [Q](std::size_t, std::span<const double> r) {
    Eigen::Map<const Eigen::VectorXd> v(r.data(), Q.rows());
    return v.dot(Q * v);
  };
  s.d_ltilde = [Q](std::size_t, std::span<const double> r, std::span<double> g) {
    Eigen::Map<const Eigen::VectorXd> v(r.data(), Q.rows());
    Eigen::Map<Eigen::VectorXd>(g.data(), Q.rows()) = 2.0 * (Q * v);
  };
  s.d2_ltilde = [Q](std::size_t, std::span<const double>, Eigen::Ref<Eigen::MatrixXd> h) { h = 2.0 * Q; };
  return s;
}

// Curvature ------------------------------------------------------------------

void reduced_curvature(const LieAlgebra& alg, const PairIndex& pairs, std::span<const double> z, std::span<double> r) {
  const std::size_t n = pairs.n(), m = alg.dim();
  const double* A = z.data();
  const double* dA = z.data() + n * m;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs.pair(p);
    for (std::size_t g = 0; g < m; ++g) {
      double v = dA[(a * n + b) * m + g] - dA[(b * n + a) * m + g];
      if (!alg.is_abelian())
        for (std::size_t be = 0; be < m; ++be)
          for (std::size_t de = 0; de < m; ++de) v -= alg.c(g, be, de) * A[a * m + be] * A[b * m + de];
      r[p * m + g] = v;
    }
  }
}

void expand_into(std::span<const double> r, std::size_t n, std::size_t m, std::span<double> full) {
  std::fill(full.begin(), full.end(), 0.0);
  std::size_t p = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++p)
      for (std::size_t g = 0; g < m; ++g) {
        full[(a * n + b) * m + g] = r[p * m + g];
        full[(b * n + a) * m + g] = -r[p * m + g];
      }
}

std::vector<double> jet_point(const JetField& sbar, std::size_t x) {
  std::vector<double> z(sbar.base.per_point() + sbar.da.per_point());
  const auto a = sbar.base.at(x);
  const auto d = sbar.da.at(x);
  std::copy(a.begin(), a.end(), z.begin());
  std::copy(d.begin(), d.end(), z.begin() + static_cast<std::ptrdiff_t>(a.size()));
  return z;
}

CurvatureField curvature(const JetField& sbar, const LieAlgebra& alg) {
  require(sbar.base.m() == alg.dim(), "curvature: field has m different from dim_g");
  const std::size_t n = sbar.base.n(), m = alg.dim();
  const PairIndex pairs(n);
  CurvatureField F(sbar.base.grid_ptr(), m);
  parallel_for(F.points(), [&](std::size_t b, std::size_t e) {
    std::vector<double> r(pairs.size() * m);
    for (std::size_t x = b; x < e; ++x) {
      const auto z = jet_point(sbar, x);
      reduced_curvature(alg, pairs, z, r);
      expand_into(r, n, m, F.at(x));
    }
  });
  F.set_symmetry(Symmetry::antisymmetric);
  return F;
}

std::vector<double> reduce(const CurvatureField& F, std::size_t x) {
  const std::size_t n = F.n(), m = F.m();
  std::vector<double> r(n * (n - 1) / 2 * m);
  std::size_t p = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b, ++p)
      for (std::size_t g = 0; g < m; ++g) r[p * m + g] = F(x, a, b, g);
  return r;
}

// ConnectionLagrangian -------------------------------------------------------

ConnectionLagrangian::ConnectionLagrangian(LagrangianSpec spec, AlgebraPtr alg, GridPtr grid, std::optional<MassTerm> mass)
    : spec_(std::move(spec)), alg_(std::move(alg)), grid_(std::move(grid)), mass_(std::move(mass)), pairs_(grid_->dim()) {
  require(alg_ != nullptr && grid_ != nullptr, "lagrangian needs an algebra and a grid");
  require(static_cast<bool>(spec_.ltilde), "lagrangian spec has no value callback");
  require(spec_.n == grid_->dim(), "lagrangian dimension does not match grid dimension");
  require(spec_.m == alg_->dim(), "lagrangian dim_g does not match algebra");
  layout_ = JetLayout{grid_->dim(), grid_->dim(), alg_->dim()};
  if (mass_) {
    require(static_cast<std::size_t>(mass_->k.rows()) == alg_->dim(), "mass term pairing has wrong size");
    metric_ = std::make_shared<MetricData>(*grid_);
  }
}

void ConnectionLagrangian::reduced_curvature(std::span<const double> z, std::span<double> r) const {
  gvc::reduced_curvature(*alg_, pairs_, z, r);
}

void ConnectionLagrangian::jacobian_apply(std::span<const double> z, std::span<const double> w, std::span<double> out) const {
  const std::size_t n = layout_.n, m = layout_.m;
  const LieAlgebra& c = *alg_;
  const double* A = z.data();
  const double* wA = w.data();
  const double* wd = w.data() + n * m;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const auto [a, b] = pairs_.pair(p);
    for (std::size_t g = 0; g < m; ++g) {
      double v = wd[(a * n + b) * m + g] - wd[(b * n + a) * m + g];
      if (!c.is_abelian())
        for (std::size_t be = 0; be < m; ++be)
          for (std::size_t de = 0; de < m; ++de)
            v -= c.c(g, be, de) * (wA[a * m + be] * A[b * m + de] + A[a * m + be] * wA[b * m + de]);
      out[p * m + g] = v;
    }
  }
}

void ConnectionLagrangian::transpose_jacobian_apply(std::span<const double> z, std::span<const double> u,
                                                    std::span<double> out) const {
  const std::size_t n = layout_.n, m = layout_.m;
  const LieAlgebra& c = *alg_;
  const double* A = z.data();
  double* oA = out.data();
  double* od = out.data() + n * m;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const auto [a, b] = pairs_.pair(p);
    for (std::size_t g = 0; g < m; ++g) {
      const double ug = u[p * m + g];
      od[(a * n + b) * m + g] += ug;
      od[(b * n + a) * m + g] -= ug;
      if (c.is_abelian() || ug == 0.0) continue;
      for (std::size_t be = 0; be < m; ++be)
        for (std::size_t de = 0; de < m; ++de) {
          const double cc = c.c(g, be, de) * ug;
          if (cc == 0.0) continue;
          oA[a * m + be] -= cc * A[b * m + de];
          oA[b * m + de] -= cc * A[a * m + be];
        }
    }
  }
}

Eigen::MatrixXd ConnectionLagrangian::curvature_jacobian(std::span<const double> z) const {
  const auto Pm = static_cast<Eigen::Index>(spec_.reduced_dim());
  const auto D = static_cast<Eigen::Index>(layout_.dim());
  Eigen::MatrixXd J(Pm, D);
  std::vector<double> e(D, 0.0), col(Pm);
  for (Eigen::Index k = 0; k < D; ++k) {
    e[k] = 1.0;
    jacobian_apply(z, e, col);
    for (Eigen::Index r = 0; r < Pm; ++r) J(r, k) = col[r];
    e[k] = 0.0;
  }
  return J;
}

double ConnectionLagrangian::value(std::size_t x, std::span<const double> z) const {
  std::vector<double> r(spec_.reduced_dim());
  reduced_curvature(z, r);
  double v = spec_.ltilde(x, r);
  if (mass_) {
    const std::size_t n = layout_.n, m = layout_.m;
    const Eigen::MatrixXd& gi = metric_->ginv(x);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) s += gi(i, j) * mass_->k(a, b) * z[i * m + a] * z[j * m + b];
    v += 0.5 * mass_->mu2 * metric_->vol(x) * s;
  }
  return v;
}

void ConnectionLagrangian::gradient(std::size_t x, std::span<const double> z, std::span<double> g) const {
  // Called once per grid point; reuse per-thread scratch.
  thread_local std::vector<double> r, gt;
  r.resize(spec_.reduced_dim());
  gt.resize(spec_.reduced_dim());
  reduced_curvature(z, r);
  reduced_gradient(spec_, x, r, gt);
  transpose_jacobian_apply(z, gt, g);
  if (mass_) {
    const std::size_t n = layout_.n, m = layout_.m;
    const Eigen::MatrixXd& gi = metric_->ginv(x);
    const double s = mass_->mu2 * metric_->vol(x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < m; ++a) {
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t b = 0; b < m; ++b) v += gi(i, j) * mass_->k(a, b) * z[j * m + b];
        g[i * m + a] += s * v;
      }
  }
}

void ConnectionLagrangian::hessian(std::size_t x, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h) const {
  const std::size_t n = layout_.n, m = layout_.m;
  const auto Pm = static_cast<Eigen::Index>(spec_.reduced_dim());
  std::vector<double> r(Pm), gt(Pm);
  reduced_curvature(z, r);
  reduced_gradient(spec_, x, r, gt);
  Eigen::MatrixXd ht(Pm, Pm);
  reduced_hessian(spec_, x, r, ht);
  const Eigen::MatrixXd J = curvature_jacobian(z);
  h = J.transpose() * ht * J;
  const LieAlgebra& c = *alg_;
  if (!c.is_abelian())
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto [a, b] = pairs_.pair(p);
      for (std::size_t g = 0; g < m; ++g)
        for (std::size_t be = 0; be < m; ++be)
          for (std::size_t de = 0; de < m; ++de) {
            const double v = -gt[p * m + g] * c.c(g, be, de);
            if (v == 0.0) continue;
            h(a * m + be, b * m + de) += v;
            h(b * m + de, a * m + be) += v;
          }
    }
  if (mass_) {
    const Eigen::MatrixXd& gi = metric_->ginv(x);
    const double s = mass_->mu2 * metric_->vol(x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) h(i * m + a, j * m + b) += s * gi(i, j) * mass_->k(a, b);
  }
}

void ConnectionLagrangian::hessian_times(std::size_t x, std::span<const double> z, std::span<const double> w,
                                         std::span<double> out) const {
  const std::size_t n = layout_.n, m = layout_.m;
  const auto Pm = static_cast<Eigen::Index>(spec_.reduced_dim());
  thread_local std::vector<double> r, gt, u, hu;
  thread_local Eigen::MatrixXd ht;
  r.resize(Pm);
  gt.resize(Pm);
  u.resize(Pm);
  hu.resize(Pm);
  ht.resize(Pm, Pm);
  reduced_curvature(z, r);
  reduced_hessian(spec_, x, r, ht);
  jacobian_apply(z, w, u);
  Eigen::Map<Eigen::VectorXd>(hu.data(), Pm) = ht * Eigen::Map<const Eigen::VectorXd>(u.data(), Pm);
  transpose_jacobian_apply(z, hu, out);

  const LieAlgebra& c = *alg_;
  const bool moves_base = std::any_of(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n * m), [](double v) { return v != 0.0; });
  if (!c.is_abelian() && moves_base) {
    reduced_gradient(spec_, x, r, gt);
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      const auto [a, b] = pairs_.pair(p);
      for (std::size_t g = 0; g < m; ++g)
        for (std::size_t be = 0; be < m; ++be)
          for (std::size_t de = 0; de < m; ++de) {
            const double v = -gt[p * m + g] * c.c(g, be, de);
            if (v == 0.0) continue;
            out[a * m + be] += v * w[b * m + de];
            out[b * m + de] += v * w[a * m + be];
          }
    }
  }
  if (mass_ && moves_base) {
    const Eigen::MatrixXd& gi = metric_->ginv(x);
    const double s = mass_->mu2 * metric_->vol(x);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < m; ++a) {
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t b = 0; b < m; ++b) v += gi(i, j) * mass_->k(a, b) * w[j * m + b];
        out[i * m + a] += s * v;
      }
  }
}

// Field-level evaluation -----------------------------------------------------

std::vector<double> l_eval(const ConnectionLagrangian& L, const JetField& sbar) {
  std::vector<double> out(sbar.base.points());
  parallel_for(out.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t x = b; x < e; ++x) out[x] = L.value(x, jet_point(sbar, x));
  });
  return out;
}

namespace {

std::vector<double> gradient_field(const ConnectionLagrangian& L, const JetField& sbar) {
  const std::size_t D = L.layout().dim();
  std::vector<double> g(sbar.base.points() * D);
  parallel_for(sbar.base.points(), [&](std::size_t b, std::size_t e) {
    for (std::size_t x = b; x < e; ++x) L.gradient(x, jet_point(sbar, x), std::span<double>(g.data() + x * D, D));
  });
  return g;
}

}  // namespace

VariationField dl_dA(const ConnectionLagrangian& L, const JetField& sbar) {
  const auto g = gradient_field(L, sbar);
  const JetLayout lay = L.layout();
  VariationField out(sbar.base.grid_ptr(), lay.m);
  for (std::size_t x = 0; x < out.points(); ++x)
    std::copy_n(g.data() + x * lay.dim(), lay.fibre(), out.at(x).data());
  return out;
}

TwoTensorField dl_dAij(const ConnectionLagrangian& L, const JetField& sbar) {
  const auto g = gradient_field(L, sbar);
  const JetLayout lay = L.layout();
  TwoTensorField out(sbar.base.grid_ptr(), lay.m);
  for (std::size_t x = 0; x < out.points(); ++x)
    std::copy_n(g.data() + x * lay.dim() + lay.fibre(), lay.velocity(), out.at(x).data());
  return out;
}

HessianReport hessian(const ConnectionLagrangian& L, const JetField& sbar, std::size_t x) {
  require(x < sbar.base.points(), "hessian: grid point out of range");
  const JetLayout lay = L.layout();
  const auto D = static_cast<Eigen::Index>(lay.dim());
  const auto F = static_cast<Eigen::Index>(lay.fibre());
  const auto V = static_cast<Eigen::Index>(lay.velocity());
  const auto z = jet_point(sbar, x);
  Eigen::MatrixXd h(D, D);
  L.hessian(x, z, h);

  HessianReport rep;
  rep.full = h.block(F, F, V, V);
  rep.symmetry_defect = (h - h.transpose()).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < lay.n; ++i)
    for (std::size_t a = 0; a < lay.m; ++a) {
      const Eigen::Index row = F + static_cast<Eigen::Index>(lay.vel_index(i * lay.m + a, i));
      rep.diagonal_row_max = std::max(rep.diagonal_row_max, h.row(row).cwiseAbs().maxCoeff());
    }
  rep.singular_rows_ok = rep.diagonal_row_max == 0.0;

  const auto Pm = static_cast<Eigen::Index>(L.spec().reduced_dim());
  std::vector<double> r(Pm);
  L.reduced_curvature(z, r);
  rep.reduced.resize(Pm, Pm);
  reduced_hessian(L.spec(), x, r, rep.reduced);
  if (Pm > 0) {
    rep.reduced_det = rep.reduced.determinant();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep.reduced);
    const auto& sv = svd.singularValues();
    rep.reduced_sigma_min = sv(sv.size() - 1);
    rep.reduced_cond = rep.reduced_sigma_min > 0 ? sv(0) / rep.reduced_sigma_min : std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace gvc
