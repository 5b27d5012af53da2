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

#pragma once

#include "gvc/exterior.hpp"
#include "gvc/fields.hpp"
#include "gvc/first_order.hpp"
#include "gvc/lie.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gvc {

struct CurvatureTag;
/// R_ij^alpha stored for all (i, j) with R_ji = -R_ij and zero diagonal.
using CurvatureField = AdField<2, CurvatureTag>;

// Reduced curvature coordinates r: one entry per pair p = (a<b) and alpha,
// at index p * m + alpha.

/// Function L~(x, r) of the reduced curvature with optional analytic partials.
struct LagrangianSpec {
  using Value = std::function<double(std::size_t x, std::span<const double> r)>;
  using Gradient = std::function<void(std::size_t x, std::span<const double> r, std::span<double> g)>;
  using Hessian = std::function<void(std::size_t x, std::span<const double> r, Eigen::Ref<Eigen::MatrixXd> h)>;

  std::string name;
  std::size_t n = 0;
  std::size_t m = 0;
  Value ltilde;
  Gradient d_ltilde;
  Hessian d2_ltilde;
  /// True when both partials are closed-form.
  bool analytic = false;
  /// Hessian independent of r.
  bool quadratic = false;

  std::size_t reduced_dim() const { return n * (n - 1) / 2 * m; }
};

double reduced_value(const LagrangianSpec& spec, std::size_t x, std::span<const double> r);
/// Analytic partials when present, otherwise central differences with step
/// 1e-4 * max(1, |r_c|).
void reduced_gradient(const LagrangianSpec& spec, std::size_t x, std::span<const double> r, std::span<double> g);
void reduced_hessian(const LagrangianSpec& spec, std::size_t x, std::span<const double> r, Eigen::Ref<Eigen::MatrixXd> h);

/// L~ = vol * sum_{p,q} g2(p,q) k_ab r_p^a r_q^b with vol = sqrt|det g|.
LagrangianSpec builtin_ym(std::shared_ptr<const MetricData> metric, const Pairing& pairing);
/// L~ = r^T Q r in reduced coordinates.
LagrangianSpec custom_quadratic(std::size_t n, std::size_t m, Eigen::MatrixXd Q);

// Curvature ------------------------------------------------------------------

/// Reduced curvature of one jet point z = [A | dA].
void reduced_curvature(const LieAlgebra& alg, const PairIndex& pairs, std::span<const double> z,
                       std::span<double> r);

CurvatureField curvature(const JetField& sbar, const LieAlgebra& alg);
std::vector<double> reduce(const CurvatureField& F, std::size_t x);
void expand_into(std::span<const double> r, std::size_t n, std::size_t m, std::span<double> full);

// Induced jet Lagrangian -----------------------------------------------------

/// Explicit A-dependent density 0.5 * mu2 * vol * g^{ij} k_ab A_i^a A_j^b. Not
/// gauge invariant; used as a control.
struct MassTerm {
  double mu2 = 0.0;
  Eigen::MatrixXd k;
};

/// L = L~ o Omega (+ optional mass term) on J^1C with chain-rule derivatives.
class ConnectionLagrangian : public FirstOrderLagrangian {
 public:
  ConnectionLagrangian(LagrangianSpec spec, AlgebraPtr alg, GridPtr grid, std::optional<MassTerm> mass = std::nullopt);

  JetLayout layout() const override { return layout_; }
  double value(std::size_t x, std::span<const double> z) const override;
  void gradient(std::size_t x, std::span<const double> z, std::span<double> g) const override;
  void hessian(std::size_t x, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h) const override;
  void hessian_times(std::size_t x, std::span<const double> z, std::span<const double> w,
                     std::span<double> out) const override;

  const LagrangianSpec& spec() const { return spec_; }
  const LieAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const PairIndex& pairs() const { return pairs_; }
  bool gauge_invariant() const { return !mass_.has_value(); }

  /// d r / d z at z, shape (P*m) x D.
  Eigen::MatrixXd curvature_jacobian(std::span<const double> z) const;
  void reduced_curvature(std::span<const double> z, std::span<double> r) const;

 private:
  void transpose_jacobian_apply(std::span<const double> z, std::span<const double> u, std::span<double> out) const;
  void jacobian_apply(std::span<const double> z, std::span<const double> w, std::span<double> out) const;

  LagrangianSpec spec_;
  AlgebraPtr alg_;
  GridPtr grid_;
  std::optional<MassTerm> mass_;
  std::shared_ptr<const MetricData> metric_;
  PairIndex pairs_;
  JetLayout layout_;
};

/// Point vector z = [A(x) | dA(x)].
std::vector<double> jet_point(const JetField& sbar, std::size_t x);

std::vector<double> l_eval(const ConnectionLagrangian& L, const JetField& sbar);
VariationField dl_dA(const ConnectionLagrangian& L, const JetField& sbar);
TwoTensorField dl_dAij(const ConnectionLagrangian& L, const JetField& sbar);

struct HessianReport {
  /// Velocity block indexed (i, j, alpha) x (k, l, beta).
  Eigen::MatrixXd full;
  /// Hessian of L~ in reduced coordinates.
  Eigen::MatrixXd reduced;
  double reduced_det = 0.0;
  double reduced_cond = 0.0;
  double reduced_sigma_min = 0.0;
  /// max |entry| over rows (i, i, alpha) of `full`.
  double diagonal_row_max = 0.0;
  bool singular_rows_ok = false;
  double symmetry_defect = 0.0;
};

HessianReport hessian(const ConnectionLagrangian& L, const JetField& sbar, std::size_t x);

}  // namespace gvc
