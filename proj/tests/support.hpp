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
#include "gvc/grid.hpp"
#include "gvc/lie.hpp"
#include "gvc/scenario.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

namespace gvc::test {

inline constexpr double kPi = std::numbers::pi;

inline GridPtr periodic_grid(std::vector<std::size_t> extent, double length = 1.0,
                             MetricSpec metric = MetricSpec::euclidean(0)) {
  std::vector<double> spacing;
  for (std::size_t e : extent) spacing.push_back(length / static_cast<double>(e));
  if (metric.dim() == 0) metric = MetricSpec::euclidean(extent.size());
  return std::make_shared<GridChart>(extent, spacing, Boundary::periodic, std::vector<double>{}, metric);
}

inline GridPtr open_grid(std::vector<std::size_t> extent, double spacing, double lower,
                         MetricSpec metric = MetricSpec::euclidean(0)) {
  if (metric.dim() == 0) metric = MetricSpec::euclidean(extent.size());
  return std::make_shared<GridChart>(extent, std::vector<double>(extent.size(), spacing), Boundary::open,
                                     std::vector<double>(extent.size(), lower), metric);
}

inline AlgebraPtr su2() { return std::make_shared<LieAlgebra>(LieAlgebra::su2()); }
inline AlgebraPtr u1() { return std::make_shared<LieAlgebra>(LieAlgebra::abelian(1)); }

/// Smooth periodic field: a sum of low Fourier modes with random amplitudes.
template <class Field>
Field smooth_field(const GridPtr& grid, std::size_t m, std::uint64_t seed, double amp = 0.5) {
  Field f(grid, m);
  Rng rng(seed);
  const std::size_t comps = f.per_point();
  std::vector<double> a(comps), b(comps);
  std::vector<std::vector<double>> k(comps, std::vector<double>(grid->dim()));
  for (std::size_t c = 0; c < comps; ++c) {
    a[c] = rng.uniform(-amp, amp);
    b[c] = rng.uniform(0.0, 2.0 * kPi);
    for (auto& kk : k[c]) kk = static_cast<double>(rng.integer(-1, 1));
  }
  for (std::size_t x = 0; x < grid->points(); ++x) {
    const std::vector<double> xc = grid->coords(x);
    for (std::size_t c = 0; c < comps; ++c) {
      double phase = b[c];
      for (std::size_t d = 0; d < grid->dim(); ++d) {
        const double len = grid->spacing(d) * static_cast<double>(grid->extent(d));
        phase += 2.0 * kPi * k[c][d] * xc[d] / len;
      }
      f.data()[x * comps + c] = a[c] * std::sin(phase);
    }
  }
  return f;
}

/// Pointwise random samples in [-amp, amp].
template <class Field>
Field noise_field(const GridPtr& grid, std::size_t m, std::uint64_t seed, double amp = 1.0) {
  Field f(grid, m);
  Rng rng(seed);
  for (double& v : f.data()) v = rng.uniform(-amp, amp);
  return f;
}

inline double max_abs_of(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace gvc::test
