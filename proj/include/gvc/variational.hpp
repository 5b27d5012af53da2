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
#include "gvc/first_order.hpp"
#include "gvc/lagrangian.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gvc {

/// Per-point residual vectors of size `comps` plus interior norms.
struct ResidualArray {
  GridPtr grid;
  std::size_t comps = 0;
  std::vector<double> values;
  Norms norms;

  std::span<const double> at(std::size_t x) const { return {values.data() + x * comps, comps}; }
  void update_norms(std::size_t radius = 1);
};

struct HCResidualPair {
  /// H_{vel,vel} (j^1 s - sbar): one entry per velocity coordinate.
  ResidualArray first;
  /// dL/dy - div(dL/dy_j o sbar) + H_{y,vel} (j^1 s - sbar).
  ResidualArray second;
};

// Generic first-order core. `fibre` holds y per point, `vel` holds y_j per
// point in layout order.

/// dL/dy(z) - sum_j D_j (dL/dy_j o z) at every point, z = (fibre, vel).
ResidualArray euler_lagrange_operator(const FirstOrderLagrangian& L, const GridPtr& grid, std::span<const double> fibre,
                                      std::span<const double> vel);

/// Both Hamilton-Cartan groups along the jet section (fibre, vel).
HCResidualPair hamilton_cartan(const FirstOrderLagrangian& L, const GridPtr& grid, std::span<const double> fibre,
                               std::span<const double> vel);

/// Holonomic velocities of per-point fibre data in layout order.
std::vector<double> prolong_velocity(const GridChart& grid, const JetLayout& layout, std::span<const double> fibre);

// Connections ----------------------------------------------------------------

ResidualArray el_residual(const ConnectionLagrangian& L, const ConnectionField& s);
HCResidualPair hc_residual(const ConnectionLagrangian& L, const JetField& sbar);

// Generic chart --------------------------------------------------------------

ResidualArray el_residual_generic(const FirstOrderLagrangian& L, const SectionField& y);
HCResidualPair hc_residual_generic(const FirstOrderLagrangian& L, const SectionJet& sbar);

// Fibration ------------------------------------------------------------------

struct FibrationReport {
  Norms el;
  Norms hc_first;
  Norms hc_second;
  /// max |Omega(j^1 s + t) - Omega(j^1 s)|.
  double curv_defect = 0.0;
  /// max |alt(delta_C(j^1 s + t))|.
  double alt_delta_norm = 0.0;
};

FibrationReport verify_fibration(const ConnectionLagrangian& L, const ConnectionField& s, const TwoTensorField& t);

/// The parts of verify_fibration that depend only on s, shared by many t.
struct FibrationBase {
  Norms el;
  JetField hol;
  CurvatureField curvature;
};

FibrationBase fibration_base(const ConnectionLagrangian& L, const ConnectionField& s);
FibrationReport verify_fibration(const ConnectionLagrangian& L, const FibrationBase& base, const TwoTensorField& t);

struct KernelReport {
  std::size_t dim = 0;
  std::size_t expected = 0;
  double sigma_max = 0.0;
  /// Smallest singular value above the rank cut.
  double sigma_min_nonzero = 0.0;
  /// Largest singular value below the rank cut (0 when the kernel is exact).
  double sigma_kernel_max = 0.0;
  /// Max |alt(k)| over an orthonormal kernel basis reshaped to (i, j, alpha).
  double kernel_alt_max = 0.0;
};

/// Kernel of Delta -> H_{vel,vel}(sbar(x)) Delta, the pointwise linear system
/// of the first H-C group, with relative rank cut `rel_tol`.
KernelReport first_group_kernel(const ConnectionLagrangian& L, const JetField& sbar, std::size_t x,
                                double rel_tol = 1e-10);

/// Smallest singular value of the reduced Hessian over all grid points.
double min_reduced_sigma(const ConnectionLagrangian& L, const JetField& sbar);

}  // namespace gvc
