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


#include "gvc/error.hpp"
#include "gvc/fields.hpp"
#include "gvc/grid.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace gvc;
using gvc::test::kPi;

TEST_CASE("grid coordinates are row-major with the last axis fastest") {
  const GridChart g({3, 3}, {0.5, 0.25}, Boundary::open, {1.0, -1.0}, MetricSpec::euclidean(2));
  CHECK(g.points() == 9);
  CHECK(g.stride(1) == 1);
  CHECK(g.stride(0) == 3);
  CHECK(g.coord(4, 0) == 1.5);
  CHECK(g.coord(4, 1) == -0.75);
  CHECK(g.cell_volume() == 0.125);
}

TEST_CASE("periodic shifts wrap and open grids mask their boundary layer") {
  const GridChart p({4}, {0.25}, Boundary::periodic, {}, MetricSpec::euclidean(1));
  CHECK(p.shift(0, 0, -1) == 3);
  CHECK(p.shift(3, 0, 1) == 0);
  CHECK(p.interior_count() == 4);
  const GridChart o({5, 5}, {0.1, 0.1}, Boundary::open, {}, MetricSpec::euclidean(2));
  CHECK(o.interior_count() == 9);
  CHECK(o.interior_count(2) == 1);
}

TEST_CASE("invalid grids and degenerate metrics are rejected") {
  CHECK_THROWS_AS(GridChart({2}, {0.1}, Boundary::open, {}, MetricSpec::euclidean(1)), InputError);
  CHECK_THROWS_AS(GridChart({4}, {0.0}, Boundary::periodic, {}, MetricSpec::euclidean(1)), InputError);
  CHECK_THROWS_AS(GridChart({4, 4}, {0.1, 0.1}, Boundary::periodic, {}, MetricSpec::euclidean(3)), InputError);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2, 2);
  g(0, 0) = 1.0;
  CHECK_THROWS_AS(GridChart({4, 4}, {0.1, 0.1}, Boundary::periodic, {}, MetricSpec::constant(g)), InputError);
  CHECK(metric_signature(MetricSpec::minkowski(4).constant_value()).negative == 3);
}

TEST_CASE("partial of a constant field is exactly zero") {
  auto grid = test::open_grid({5, 6}, 0.3, -1.0);
  ConnectionField A(grid, 2);
  for (double& v : A.data()) v = 1.75;
  for (std::size_t axis = 0; axis < 2; ++axis) CHECK(max_abs(partial(A, axis).data()) == 0.0);
}

TEST_CASE("partial of sin(2 pi x) on a periodic grid has the leading central-difference error") {
  // Central differences err by h^2 f'''/6, so err / h^2 tends to (2 pi)^3 / 6.
  for (std::size_t N : {32u, 64u, 128u}) {
    auto grid = test::periodic_grid({N});
    GaugeParameterField f(grid, 1);
    for (std::size_t x = 0; x < N; ++x) f(x, 0) = std::sin(2 * kPi * grid->coord(x, 0));
    const auto d = partial(f, 0);
    double err = 0.0;
    for (std::size_t x = 0; x < N; ++x)
      err = std::max(err, std::abs(d(x, 0) - 2 * kPi * std::cos(2 * kPi * grid->coord(x, 0))));
    const double h = grid->spacing(0);
    CHECK(err / (h * h) <= std::pow(2 * kPi, 3) / 6.0);
    CHECK(err / (h * h) == doctest::Approx(std::pow(2 * kPi, 3) / 6.0).epsilon(0.01));
  }
}

TEST_CASE("one-sided stencils differentiate quadratics exactly on open axes") {
  auto grid = test::open_grid({7, 4}, 0.2, -0.5);
  GaugeParameterField f(grid, 1);
  for (std::size_t x = 0; x < grid->points(); ++x) {
    const double a = grid->coord(x, 0), b = grid->coord(x, 1);
    f(x, 0) = 3.0 * a * a - a + 2.0 * b;
  }
  const auto d0 = partial(f, 0);
  const auto d1 = partial(f, 1);
  for (std::size_t x = 0; x < grid->points(); ++x) {
    CHECK(d0(x, 0) == doctest::Approx(6.0 * grid->coord(x, 0) - 1.0).epsilon(1e-12));
    CHECK(d1(x, 0) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("a single-point axis has zero derivative") {
  const auto grid = std::make_shared<GridChart>(std::vector<std::size_t>{8, 1}, std::vector<double>{0.1, 1.0},
                                                Boundary::periodic, std::vector<double>{},
                                                MetricSpec::euclidean(2));
  auto f = test::noise_field<GaugeParameterField>(grid, 2, 3);
  CHECK(max_abs(partial(f, 1).data()) == 0.0);
}

TEST_CASE("prolongation of a linear connection gives its constant slope") {
  auto grid = test::open_grid({5, 5, 5}, 0.25, 0.0);
  ConnectionField A(grid, 1);
  const double B = 1.5;
  for (std::size_t x = 0; x < grid->points(); ++x) A(x, 1, 0) = B * grid->coord(x, 0);
  const JetField j = prolong(A);
  CHECK(j.holonomic);
  CHECK(j.base.data() == A.data());
  for (std::size_t x = 0; x < grid->points(); ++x)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t jj = 0; jj < 3; ++jj)
        CHECK(j.da(x, i, jj, 0) == doctest::Approx(i == 1 && jj == 0 ? B : 0.0).epsilon(1e-12));
}

TEST_CASE("delta_C vanishes on prolongations and recovers an added tensor") {
  auto grid = test::periodic_grid({8, 8, 8});
  const auto A = test::smooth_field<ConnectionField>(grid, 3, 5);
  const JetField j = prolong(A);
  CHECK(max_abs(delta_C(j).data()) == 0.0);

  const auto t = test::noise_field<TwoTensorField>(grid, 3, 6);
  const TwoTensorField back = delta_C(add_to_jet(j, t));
  CHECK(max_abs_difference(back.data(), t.data()) <= 1e-15 * std::max(1.0, max_abs(j.da.data())));
  CHECK_FALSE(add_to_jet(j, t).holonomic);
}

TEST_CASE("alt and sym split a 2-tensor") {
  auto grid = test::periodic_grid({4, 4});
  const auto t = test::noise_field<TwoTensorField>(grid, 2, 9);
  const auto a = alt(t);
  const auto s = sym(t);
  CHECK(max_abs_difference((a + s).data(), t.data()) <= 1e-15);
  CHECK(max_abs(alt(s).data()) == 0.0);
  CHECK(max_abs_difference(alt(a).data(), a.data()) == 0.0);
  for (std::size_t x = 0; x < grid->points(); ++x)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t al = 0; al < 2; ++al) {
          CHECK(a(x, i, j, al) == -a(x, j, i, al));
          CHECK(s(x, i, j, al) == s(x, j, i, al));
        }
}

TEST_CASE("shape mismatches throw input errors") {
  auto g1 = test::periodic_grid({4, 4});
  auto g2 = test::periodic_grid({4, 5});
  ConnectionField a(g1, 1), b(g2, 1);
  CHECK_THROWS_AS(a += b, InputError);
  CHECK_THROWS_AS(partial(a, 2), InputError);
}

TEST_CASE("interior norms weight by the cell volume") {
  auto grid = test::periodic_grid({4, 4}, 2.0);
  GaugeParameterField f(grid, 1);
  for (double& v : f.data()) v = 2.0;
  const Norms n = interior_norms(f);
  CHECK(n.max == 2.0);
  CHECK(n.l2 == doctest::Approx(2.0 * 2.0));
}

TEST_CASE("field operations are independent of the worker count") {
  auto grid = test::periodic_grid({24, 24, 24});
  const auto A = test::smooth_field<ConnectionField>(grid, 3, 21);
  setenv("GVC_THREADS", "1", 1);
  const auto one = prolong(A).da.data();
  const Norms n1 = interior_norms(A);
  setenv("GVC_THREADS", "4", 1);
  const auto four = prolong(A).da.data();
  const Norms n4 = interior_norms(A);
  unsetenv("GVC_THREADS");
  CHECK(one == four);
  CHECK(n1.l2 == n4.l2);
}
