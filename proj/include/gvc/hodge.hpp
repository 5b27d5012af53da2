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
#include "gvc/lagrangian.hpp"
#include "gvc/lie.hpp"
#include "gvc/variational.hpp"

#include <memory>
#include <vector>

namespace gvc {

/// Metric data for forms on a grid. Orientation dx^1 ^ ... ^ dx^n is positive.
class MetricContext {
 public:
  explicit MetricContext(GridPtr grid);

  const GridChart& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t dim() const { return grid_->dim(); }
  const MetricData& data() const { return *data_; }
  std::shared_ptr<const MetricData> data_ptr() const { return data_; }
  Signature signature() const { return data_->signature(); }
  /// g^(r) at x over increasing r-subsets.
  Eigen::MatrixXd gram(std::size_t x, std::size_t r) const;
  /// (-1)^{r(n-r)} sign(det g).
  int star_star_sign(std::size_t r) const;

 private:
  GridPtr grid_;
  std::shared_ptr<const MetricData> data_;
};

/// ad-valued r-form: coefficients (x, I, alpha) over increasing subsets I.
struct AdFormField {
  GridPtr grid;
  std::size_t r = 0;
  std::size_t m = 0;
  std::vector<double> values;

  std::size_t terms() const;
  std::size_t per_point() const { return terms() * m; }
};

AdFormField to_form(const CurvatureField& F);
CurvatureField to_curvature(const AdFormField& w);

/// (star w)_K = vol * sum_I (g^(r) w)_I sign(I, K), ad index untouched.
AdFormField hodge_star(const AdFormField& w, const MetricContext& ctx);
/// Star of a 2-form returned as a 2-form; requires n = 4.
CurvatureField hodge_star(const CurvatureField& F, const MetricContext& ctx);

/// Top coefficient of (w1 ^ w2) paired with k, divided by vol (q + r = n).
std::vector<double> wedge_dot(const AdFormField& w1, const AdFormField& w2, const MetricContext& ctx,
                              const Pairing& pairing);
std::vector<double> wedge_dot(const CurvatureField& F, const CurvatureField& G, const MetricContext& ctx,
                              const Pairing& pairing);

/// Y_i = d_j(vol R^{ij}) + [A_j, vol R^{ij}] with R^{ij} = g^{ik} g^{jl} R_kl.
/// For the built-in Yang-Mills Lagrangian, E = -2 k Y.
ResidualArray ym_covariant_divergence(const ConnectionField& s, const LieAlgebra& alg, const MetricContext& ctx);

struct SelfDualReport {
  double alt_defect = 0.0;
  double sd_defect = 0.0;
  double asd_defect = 0.0;
  double curvature_max = 0.0;
  double el_norm = 0.0;
  double el_l2 = 0.0;
  double sd_l2 = 0.0;
  double asd_l2 = 0.0;
};

/// Requires n = 4 and a Riemannian metric. Defects are interior max norms;
/// el_norm is the Yang-Mills residual of the base with the given pairing.
SelfDualReport selfdual_check(const JetField& sbar, const LieAlgebra& alg, const MetricContext& ctx,
                              const Pairing& pairing);

}  // namespace gvc
