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
#include "gvc/jacobi.hpp"
#include "gvc/lagrangian.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace gvc;
using gvc::test::kPi;

namespace {

ConnectionLagrangian ym(const GridPtr& g, const AlgebraPtr& alg) {
  return ConnectionLagrangian(builtin_ym(std::make_shared<MetricData>(*g), Pairing::identity(alg->dim())), alg, g);
}

double gap_max(const ResidualArray& a, const ResidualArray& b) {
  std::vector<double> d(a.values.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = a.values[k] - b.values[k];
  return interior_norms(*a.grid, a.comps, d).max;
}

// su(2)-embedded Maxwell plane wave A_2^2 = a sin(k (x^0 - x^1)) on a Minkowski slab.
ConnectionField embedded_wave(const GridPtr& g, double amp) {
  ConnectionField A(g, 3);
  const double k = 2 * kPi / (g->spacing(0) * g->extent(0));
  for (std::size_t x = 0; x < g->points(); ++x) A(x, 2, 2) = amp * std::sin(k * (g->coord(x, 0) - g->coord(x, 1)));
  return A;
}

GridPtr slab(std::size_t N) {
  return std::make_shared<GridChart>(std::vector<std::size_t>{N, N, 1}, std::vector<double>{1.0 / N, 2.0 / N, 1.0},
                                     Boundary::periodic, std::vector<double>{}, MetricSpec::minkowski(3));
}

}  // namespace

TEST_CASE("zero variation gives zero Jacobi residuals") {
  auto g = test::periodic_grid({6, 6, 6});
  auto alg = test::su2();
  const ConnectionLagrangian L = ym(g, alg);
  const auto s = test::smooth_field<ConnectionField>(g, 3, 1);
  const VariationField X(g, 3);
  CHECK(jacobi_residual_holonomic(L, s, X).norms.max == 0.0);
  const JacobiResidual r = jacobi_residual(L, prolong(s), prolong(X));
  CHECK(r.first.norms.max == 0.0);
  CHECK(r.second.norms.max == 0.0);
}

TEST_CASE("linearization of a linear operator does not depend on the step") {
  auto g = test::periodic_grid({8, 8, 8});
  const ConnectionLagrangian L = ym(g, test::u1());
  const auto s = test::smooth_field<ConnectionField>(g, 1, 2);
  const auto X = test::smooth_field<VariationField>(g, 1, 3);
  const ResidualArray a = linearize_el_fd(L, s, X, 1e-1);
  const ResidualArray b = linearize_el_fd(L, s, X, 1e-3);
  CHECK(max_abs_difference(a.values, b.values) <= 1e-8 * std::max(1.0, a.norms.max));
  CHECK(gap_max(jacobi_residual_holonomic(L, s, X), a) <= 1e-8 * std::max(1.0, a.norms.max));
}

TEST_CASE("Jacobi operator agrees with the finite-difference linearization") {
  for (std::size_t N : {12u, 24u}) {
    auto g = test::periodic_grid({N, N, N}, 4.0);
    auto alg = test::su2();
    const ConnectionLagrangian L = ym(g, alg);
    const auto s = test::smooth_field<ConnectionField>(g, 3, 5);
    const auto X = test::smooth_field<VariationField>(g, 3, 6, 1.0);
    const double eps = 1e-4 * std::max(1.0, max_abs(s.data()));
    const ResidualArray fd = linearize_el_fd(L, s, X, eps);
    const double h = g->max_spacing();
    CHECK(gap_max(jacobi_residual_holonomic(L, s, X), fd) <= 5.0 * (eps * eps + h * h) * std::max(1.0, fd.norms.max));
  }
}

TEST_CASE("finite-difference linearization converges at second order in eps") {
  auto g = test::periodic_grid({8, 8, 8}, 4.0);
  auto alg = test::su2();
  const ConnectionLagrangian L = ym(g, alg);
  const auto s = test::smooth_field<ConnectionField>(g, 3, 7);
  const auto X = test::smooth_field<VariationField>(g, 3, 8, 1.0);
  const ResidualArray a = linearize_el_fd(L, s, X, 0.2);
  const ResidualArray b = linearize_el_fd(L, s, X, 0.1);
  const ResidualArray c = linearize_el_fd(L, s, X, 0.05);
  const double ratio = max_abs_difference(a.values, b.values) / max_abs_difference(b.values, c.values);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("Jacobi residual is linear in the variation") {
  auto g = test::periodic_grid({6, 6, 6}, 2.0);
  auto alg = test::su2();
  const ConnectionLagrangian L = ym(g, alg);
  const auto s = test::smooth_field<ConnectionField>(g, 3, 9);
  const auto X1 = test::smooth_field<VariationField>(g, 3, 10);
  const auto X2 = test::smooth_field<VariationField>(g, 3, 11);
  const ResidualArray r1 = jacobi_residual_holonomic(L, s, X1);
  const ResidualArray r2 = jacobi_residual_holonomic(L, s, X2);
  const ResidualArray r12 = jacobi_residual_holonomic(L, s, X1 + 2.0 * X2);
  for (std::size_t k = 0; k < r12.values.size(); ++k)
    CHECK(r12.values[k] == doctest::Approx(r1.values[k] + 2.0 * r2.values[k]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("infinitesimal gauge transformations are abelian Jacobi fields") {
  auto g = slab(32);
  const ConnectionLagrangian L = ym(g, test::u1());
  ConnectionField s(g, 1);
  const double k = 2 * kPi;
  for (std::size_t x = 0; x < g->points(); ++x) s(x, 2, 0) = std::sin(k * (g->coord(x, 0) - g->coord(x, 1)));
  GaugeParameterField eps(g, 1);
  for (std::size_t x = 0; x < g->points(); ++x) eps(x, 0) = std::cos(k * g->coord(x, 1)) + 0.5 * std::sin(k * g->coord(x, 0));
  const VariationField X = infinitesimal_gauge(s, eps, LieAlgebra::abelian(1));
  CHECK(jacobi_residual_holonomic(L, s, X).norms.max <= 1e-9);
  const JacobiResidual r = jacobi_residual(L, prolong(s), prolong(X));
  CHECK(r.first.norms.max <= 1e-9);
}

TEST_CASE("derivative of a one-parameter family of extremals is a Jacobi field") {
  // s_eps = (1 + eps) s with s an embedded plane wave, so X = s. Both Jacobi
  // groups must vanish to discretization order, also after a symmetric shift.
  std::vector<double> first;
  for (std::size_t N : {32u, 64u}) {
    auto g = slab(N);
    const ConnectionLagrangian L = ym(g, test::su2());
    const ConnectionField s = embedded_wave(g, 1.0);
    const JetVariationField x1 = prolong(retag<VariationField>(s));
    const TwoTensorField t = sym(test::noise_field<TwoTensorField>(g, 3, 4));
    const JacobiResidual r = jacobi_residual(L, prolong(s), add_to_jet(x1, t));
    const double h = g->max_spacing();
    CHECK(r.second.norms.max <= 1e-12);
    CHECK(r.first.norms.max <= 10.0 * h * h * std::pow(2 * kPi, 4));
    first.push_back(r.first.norms.max);
  }
  CHECK(first[0] / first[1] == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("t2 decomposition recovers the added tensor bit for bit") {
  auto g = test::open_grid({5, 5, 5}, 0.25, -0.5);
  VariationField X(g, 2);
  for (std::size_t x = 0; x < g->points(); ++x) {
    X(x, 0, 0) = 0.5 * g->coord(x, 1);
    X(x, 2, 1) = -1.5 * g->coord(x, 0);
  }
  TwoTensorField t0(g, 2);
  Rng rng(5);
  for (std::size_t x = 0; x < g->points(); ++x)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j)
        for (std::size_t a = 0; a < 2; ++a) t0(x, i, j, a) = t0(x, j, i, a) = 0.125 * static_cast<double>(rng.integer(-8, 8));
  const JetVariationField xbar = add_to_jet(prolong(X), t0);
  const T2Decomposition d = t2_decompose(xbar);
  CHECK(d.t.data() == t0.data());
  CHECK(d.X.data() == X.data());
  CHECK(d.sym_defect == 0.0);

  const T2Decomposition plain = t2_decompose(prolong(test::noise_field<VariationField>(g, 2, 3)));
  CHECK(max_abs(plain.t.data()) == 0.0);
}

TEST_CASE("symmetric tensors are in the kernel of the linearized first group") {
  auto g = test::periodic_grid({6, 6, 6, 6});
  auto alg = test::su2();
  const ConnectionLagrangian L = ym(g, alg);
  const JetField sbar = prolong(test::smooth_field<ConnectionField>(g, 3, 12));
  const JetVariationField x1 = prolong(test::smooth_field<VariationField>(g, 3, 13));
  const TwoTensorField t = sym(test::noise_field<TwoTensorField>(g, 3, 14));
  const JacobiResidual r0 = jacobi_residual(L, sbar, x1);
  const JacobiResidual r1 = jacobi_residual(L, sbar, add_to_jet(x1, t));
  CHECK(max_abs_difference(r0.first.values, r1.first.values) <= 1e-12);
  CHECK(max_abs_difference(r0.second.values, r1.second.values) <= 1e-12);

  const TwoTensorField u = alt(test::noise_field<TwoTensorField>(g, 3, 15));
  const JacobiResidual r2 = jacobi_residual(L, sbar, add_to_jet(x1, u));
  CHECK(max_abs_difference(r0.second.values, r2.second.values) > 0.1);
}
