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

#include "gvc/fields.hpp"

#include "gvc/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace gvc {

void partial_raw(const GridChart& grid, std::size_t comps, std::span<const double> in, std::size_t axis,
                 std::span<double> out) {
  require(in.size() == grid.points() * comps && out.size() == in.size(), "partial: buffer size mismatch");
  const std::size_t E = grid.extent(axis), S = grid.stride(axis);
  if (E == 1) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double inv2h = 1.0 / (2.0 * grid.spacing(axis));
  const bool periodic = grid.boundary() == Boundary::periodic;
  // One line per (outer, inner) pair; x = outer * E * S + i * S + inner.
  const std::size_t lines = grid.points() / E;
  parallel_for(lines, [&](std::size_t b, std::size_t e) {
    for (std::size_t line = b; line < e; ++line) {
      const std::size_t start = (line / S) * E * S + line % S;
      const auto at = [&](std::size_t i) { return in.data() + (start + i * S) * comps; };
      for (std::size_t i = 0; i < E; ++i) {
        double* o = out.data() + (start + i * S) * comps;
        if (periodic || (i > 0 && i + 1 < E)) {
          const double* fp = at(i + 1 == E ? 0 : i + 1);
          const double* fm = at(i == 0 ? E - 1 : i - 1);
          for (std::size_t c = 0; c < comps; ++c) o[c] = (fp[c] - fm[c]) * inv2h;
        } else if (i == 0) {
          const double *f0 = at(0), *f1 = at(1), *f2 = at(2);
          for (std::size_t c = 0; c < comps; ++c) o[c] = (-3.0 * f0[c] + 4.0 * f1[c] - f2[c]) * inv2h;
        } else {
          const double *f0 = at(i), *f1 = at(i - 1), *f2 = at(i - 2);
          for (std::size_t c = 0; c < comps; ++c) o[c] = (3.0 * f0[c] - 4.0 * f1[c] + f2[c]) * inv2h;
        }
      }
    }
  });
}

std::vector<double> gradient_raw(const GridChart& grid, std::size_t comps, std::span<const double> in) {
  const std::size_t n = grid.dim();
  std::vector<double> out(grid.points() * n * comps);
  std::vector<double> buf(grid.points() * comps);
  for (std::size_t j = 0; j < n; ++j) {
    partial_raw(grid, comps, in, j, buf);
    for (std::size_t x = 0; x < grid.points(); ++x)
      std::copy_n(buf.data() + x * comps, comps, out.data() + (x * n + j) * comps);
  }
  return out;
}

namespace {

// Per-point layout (b, comps) -> (b, j, comps) for every axis j.
template <class Out, class In>
void prolong_into(const In& f, Out& out, std::size_t blocks) {
  const std::size_t n = f.n();
  const std::size_t m = f.m();
  const auto grad = gradient_raw(f.grid(), f.per_point(), f.data());
  // grad layout: (x, j, b, alpha) -> out layout (x, b, j, alpha)
  for (std::size_t x = 0; x < f.points(); ++x)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t a = 0; a < m; ++a)
          out.data()[((x * blocks + b) * n + j) * m + a] = grad[((x * n + j) * blocks + b) * m + a];
}

}  // namespace

JetField prolong(const ConnectionField& s) {
  JetField j{s, JetDerivativeField(s.grid_ptr(), s.m()), true};
  prolong_into(s, j.da, s.n());
  return j;
}

JetVariationField prolong(const VariationField& v) {
  JetVariationField j{v, JetDerivativeField(v.grid_ptr(), v.m())};
  prolong_into(v, j.dv, v.n());
  return j;
}

SectionJet prolong(const SectionField& y) {
  SectionJet j{y, SectionVelocityField(y.grid_ptr(), y.m()), true};
  prolong_into(y, j.vel, 1);
  return j;
}

TwoTensorField delta_C(const JetField& sbar) {
  const JetField hol = prolong(sbar.base);
  TwoTensorField t(sbar.base.grid_ptr(), sbar.base.m());
  for (std::size_t k = 0; k < t.data().size(); ++k) t.data()[k] = sbar.da.data()[k] - hol.da.data()[k];
  return t;
}

namespace {

TwoTensorField symmetrize(const TwoTensorField& t, double sign) {
  TwoTensorField out(t.grid_ptr(), t.m());
  const std::size_t n = t.n(), m = t.m();
  for (std::size_t x = 0; x < t.points(); ++x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < m; ++a) out(x, i, j, a) = 0.5 * (t(x, i, j, a) + sign * t(x, j, i, a));
  out.set_symmetry(sign > 0 ? Symmetry::symmetric : Symmetry::antisymmetric);
  return out;
}

}  // namespace

TwoTensorField alt(const TwoTensorField& t) { return symmetrize(t, -1.0); }
TwoTensorField sym(const TwoTensorField& t) { return symmetrize(t, +1.0); }

JetField add_to_jet(const JetField& sbar, const TwoTensorField& t) {
  require(t.grid().points() == sbar.base.grid().points() && t.per_point() == sbar.da.per_point(),
          "add_to_jet: tensor shape mismatch");
  JetField out = sbar;
  for (std::size_t k = 0; k < out.da.data().size(); ++k) out.da.data()[k] += t.data()[k];
  out.holonomic = false;
  return out;
}

JetVariationField add_to_jet(const JetVariationField& xbar, const TwoTensorField& t) {
  require(t.grid().points() == xbar.v.grid().points() && t.per_point() == xbar.dv.per_point(),
          "add_to_jet: tensor shape mismatch");
  JetVariationField out = xbar;
  for (std::size_t k = 0; k < out.dv.data().size(); ++k) out.dv.data()[k] += t.data()[k];
  return out;
}

Norms interior_norms(const GridChart& grid, std::size_t comps, std::span<const double> values,
                     std::size_t radius) {
  require(values.size() == grid.points() * comps, "norms: buffer size mismatch");
  Norms nm;
  for (std::size_t x = 0; x < grid.points(); ++x) {
    if (!grid.interior(x, radius)) continue;
    for (std::size_t c = 0; c < comps; ++c) nm.max = std::max(nm.max, std::abs(values[x * comps + c]));
  }
  const double sum = chunked_sum(grid.points(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t x = b; x < e; ++x) {
      if (!grid.interior(x, radius)) continue;
      for (std::size_t c = 0; c < comps; ++c) s += values[x * comps + c] * values[x * comps + c];
    }
    return s;
  });
  nm.l2 = std::sqrt(sum * grid.cell_volume());
  return nm;
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "max_abs_difference: size mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

double max_abs(std::span<const double> a) {
  double d = 0.0;
  for (double v : a) d = std::max(d, std::abs(v));
  return d;
}

}  // namespace gvc
