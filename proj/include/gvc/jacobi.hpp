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

#include "gvc/fields.hpp"
#include "gvc/lagrangian.hpp"
#include "gvc/variational.hpp"

#include <span>

namespace gvc {

/// Linearized H-C equations along a jet section.
struct JacobiResidual {
  /// One entry per fibre coordinate sigma.
  ResidualArray first;
  /// One entry per velocity coordinate (sigma, j).
  ResidualArray second;
};

/// Generic chart. `v`, `dv` are the variation components on the fibre and
/// velocity slots; `dv_grad` holds d_i dv per point as (i, velocity index).
/// Third derivatives of L enter as a directional difference of the Hessian
/// along (0, j^1 s - sbar); x-derivatives of the Hessian along sbar are grid
/// differences of the sampled Hessian field.
JacobiResidual jacobi_operator(const FirstOrderLagrangian& L, const GridPtr& grid, std::span<const double> fibre,
                               std::span<const double> vel, std::span<const double> v, std::span<const double> dv,
                               std::span<const double> dv_grad);

JacobiResidual jacobi_residual(const ConnectionLagrangian& L, const JetField& sbar, const JetVariationField& xbar);

/// Second-order linear operator on X along j^1 s (holonomic variations).
ResidualArray jacobi_residual_holonomic(const ConnectionLagrangian& L, const ConnectionField& s, const VariationField& X);

/// (E(s + eps X) - E(s - eps X)) / (2 eps).
ResidualArray linearize_el_fd(const ConnectionLagrangian& L, const ConnectionField& s, const VariationField& X, double eps);

struct T2Decomposition {
  VariationField X;
  TwoTensorField t;
  /// max |alt(t)|.
  double sym_defect = 0.0;
};

/// t = xbar.dv - prolong(xbar.v).dv.
T2Decomposition t2_decompose(const JetVariationField& xbar);

}  // namespace gvc
