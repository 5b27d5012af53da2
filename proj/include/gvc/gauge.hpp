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
#include "gvc/lie.hpp"

namespace gvc {

// Action convention: dA_i^a = d_i eps^a + c^a_{bg} A_i^b eps^g. The opposite
// global sign of eps gives the adjoint-bundle convention; every check below is
// insensitive to it.

VariationField infinitesimal_gauge(const ConnectionField& A, const GaugeParameterField& eps, const LieAlgebra& alg);

/// Induced action on J^1C: the base moves as above and
/// dA_{i,j} = d_j d_i eps + c(A_i, d_j eps) + c(A_{i,j}, eps).
JetField gauge_step(const JetField& sbar, const GaugeParameterField& eps, const LieAlgebra& alg, double step);

/// A + d chi (finite abelian transformation).
ConnectionField abelian_transform(const ConnectionField& A, const GaugeParameterField& chi);

/// max_x |d/dtau L(j^1 A + tau X^(1))| at tau = 0 by a central difference of
/// width `step`, where X = infinitesimal_gauge(A, eps).
double check_gauge_invariance(const ConnectionLagrangian& L, const ConnectionField& A, const GaugeParameterField& eps,
                              double step);

struct PreservationReport {
  bool abelian = false;
  double el_before = 0.0;
  double el_after = 0.0;
  /// max_x |E(s') - E(s)|.
  double defect = 0.0;
};

/// Abelian algebras use the finite transformation s + d eps; otherwise one
/// Euler step s + step * dA(s, eps).
PreservationReport check_solution_preservation(const ConnectionLagrangian& L, const ConnectionField& s,
                                               const GaugeParameterField& eps, double step);

/// max |p10(gauge_step(sbar)) - (base + step * dA(base))|.
double check_rho_equivariance(const JetField& sbar, const GaugeParameterField& eps, const LieAlgebra& alg, double step);

}  // namespace gvc
