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

#include "gvc/error.hpp"
#include "gvc/grid.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gvc {

enum class Symmetry { none, symmetric, antisymmetric };

/// Grid samples of an ad-valued tensor with `Rank` base indices. Per point
/// the layout is (i, j, ..., alpha) with alpha fastest. `Tag` keeps
/// connection, variation and tensor fields apart at compile time.
template <std::size_t Rank, class Tag>
class AdField {
 public:
  static constexpr std::size_t rank = Rank;

  AdField() = default;
  AdField(GridPtr grid, std::size_t m)
      : grid_(std::move(grid)), m_(m), per_point_(per_point_for(grid_->dim(), m)), data_(grid_->points() * per_point_, 0.0) {}

  const GridPtr& grid_ptr() const { return grid_; }
  const GridChart& grid() const { return *grid_; }
  std::size_t n() const { return grid_->dim(); }
  std::size_t m() const { return m_; }
  std::size_t per_point() const { return per_point_; }
  std::size_t points() const { return grid_->points(); }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }
  std::span<double> at(std::size_t x) { return {data_.data() + x * per_point_, per_point_}; }
  std::span<const double> at(std::size_t x) const { return {data_.data() + x * per_point_, per_point_}; }

  template <class... Idx>
  double& operator()(std::size_t x, Idx... idx) {
    return data_[x * per_point_ + offset(static_cast<std::size_t>(idx)...)];
  }
  template <class... Idx>
  double operator()(std::size_t x, Idx... idx) const {
    return data_[x * per_point_ + offset(static_cast<std::size_t>(idx)...)];
  }

  Symmetry symmetry() const { return symmetry_; }
  void set_symmetry(Symmetry s) { symmetry_ = s; }

  bool same_shape(const AdField& other) const {
    return grid_ == other.grid_ && m_ == other.m_;
  }

  AdField& operator+=(const AdField& o) {
    check_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    symmetry_ = symmetry_ == o.symmetry_ ? symmetry_ : Symmetry::none;
    return *this;
  }
  AdField& operator-=(const AdField& o) {
    check_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    symmetry_ = symmetry_ == o.symmetry_ ? symmetry_ : Symmetry::none;
    return *this;
  }
  AdField& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend AdField operator+(AdField a, const AdField& b) { return a += b; }
  friend AdField operator-(AdField a, const AdField& b) { return a -= b; }
  friend AdField operator*(double s, AdField a) { return a *= s; }

  static std::size_t per_point_for(std::size_t n, std::size_t m) {
    std::size_t p = m;
    for (std::size_t r = 0; r < Rank; ++r) p *= n;
    return p;
  }

 private:
  std::size_t offset(std::size_t alpha) const { return alpha; }
  std::size_t offset(std::size_t i, std::size_t alpha) const { return i * m_ + alpha; }
  std::size_t offset(std::size_t i, std::size_t j, std::size_t alpha) const {
    return (i * grid_->dim() + j) * m_ + alpha;
  }
  void check_shape(const AdField& o) const {
    require(grid_ && o.grid_ && grid_->points() == o.grid_->points() && per_point_ == o.per_point_,
            "field shape mismatch");
  }

  GridPtr grid_;
  std::size_t m_ = 0;
  std::size_t per_point_ = 0;
  std::vector<double> data_;
  Symmetry symmetry_ = Symmetry::none;
};

struct ConnectionTag;
struct VariationTag;
struct GaugeTag;
struct TwoTensorTag;
struct CurvatureTag;
struct JetSlotTag;
struct SectionTag;
struct SectionVelocityTag;

/// A_i^alpha(x).
using ConnectionField = AdField<1, ConnectionTag>;
/// v_i^alpha(x), a vertical vector field along a connection.
using VariationField = AdField<1, VariationTag>;
/// eps^alpha(x), an element of the gauge algebra.
using GaugeParameterField = AdField<0, GaugeTag>;
/// ad-valued covariant 2-tensors t_ij^alpha (symmetric, antisymmetric or general).
using TwoTensorField = AdField<2, TwoTensorTag>;
/// Jet coordinates A_{i,j}^alpha, i.e. the second slot of a JetField.
using JetDerivativeField = AdField<2, JetSlotTag>;
/// Generic fibred chart: y^alpha(x) and y_j^alpha(x).
using SectionField = AdField<0, SectionTag>;
using SectionVelocityField = AdField<1, SectionVelocityTag>;

/// Section of J^1 C. Not necessarily holonomic.
struct JetField {
  ConnectionField base;
  JetDerivativeField da;
  bool holonomic = false;
};

/// Vertical vector field along a section of J^1 C.
struct JetVariationField {
  VariationField v;
  JetDerivativeField dv;
};

/// Section of J^1 E for a generic fibred chart.
struct SectionJet {
  SectionField y;
  SectionVelocityField vel;
  bool holonomic = false;
};

/// Reinterpret samples under another tag of the same rank.
template <class To, std::size_t Rank, class Tag>
To retag(const AdField<Rank, Tag>& from) {
  static_assert(To::rank == Rank, "retag must preserve rank");
  To out(from.grid_ptr(), from.m());
  out.data() = from.data();
  out.set_symmetry(from.symmetry());
  return out;
}

// Finite differences ---------------------------------------------------------

/// Second-order first derivative of every component along `axis`, written to
/// `out` (same layout as `in`). Central differences in the bulk; on open axes
/// the end points use second-order one-sided stencils.
void partial_raw(const GridChart& grid, std::size_t comps, std::span<const double> in, std::size_t axis,
                 std::span<double> out);

template <std::size_t Rank, class Tag>
AdField<Rank, Tag> partial(const AdField<Rank, Tag>& f, std::size_t axis) {
  require(axis < f.n(), "partial: axis out of range");
  AdField<Rank, Tag> out(f.grid_ptr(), f.m());
  partial_raw(f.grid(), f.per_point(), f.data(), axis, out.data());
  return out;
}

/// d^2/dx^a dx^b by composing `partial`; mixed partials average both orders.
template <std::size_t Rank, class Tag>
AdField<Rank, Tag> second_partial(const AdField<Rank, Tag>& f, std::size_t a, std::size_t b) {
  if (a == b) return partial(partial(f, a), a);
  AdField<Rank, Tag> ab = partial(partial(f, a), b);
  AdField<Rank, Tag> ba = partial(partial(f, b), a);
  for (std::size_t k = 0; k < ab.data().size(); ++k) ab.data()[k] = 0.5 * (ab.data()[k] + ba.data()[k]);
  return ab;
}

/// All first derivatives of per-point vectors of size `comps`: out(x, j, c).
std::vector<double> gradient_raw(const GridChart& grid, std::size_t comps, std::span<const double> in);

// Jets and 2-tensors ---------------------------------------------------------

/// j^1 s with A_{i,j}^alpha = d A_i^alpha / dx^j.
JetField prolong(const ConnectionField& s);
/// Prolongation of a vertical field with fibre-independent coefficients.
JetVariationField prolong(const VariationField& v);
SectionJet prolong(const SectionField& y);

/// sbar.da - prolong(sbar.base).da.
TwoTensorField delta_C(const JetField& sbar);

TwoTensorField alt(const TwoTensorField& t);
TwoTensorField sym(const TwoTensorField& t);

/// sbar + t on the jet slot; the result is not holonomic.
JetField add_to_jet(const JetField& sbar, const TwoTensorField& t);
JetVariationField add_to_jet(const JetVariationField& xbar, const TwoTensorField& t);

// Norms ----------------------------------------------------------------------

struct Norms {
  double max = 0.0;
  /// sqrt(sum |e|^2 * cell volume) over the interior mask.
  double l2 = 0.0;
};

/// Max and h-weighted L2 over interior points of per-point vectors.
Norms interior_norms(const GridChart& grid, std::size_t comps, std::span<const double> values,
                     std::size_t radius = 1);

template <std::size_t Rank, class Tag>
Norms interior_norms(const AdField<Rank, Tag>& f, std::size_t radius = 1) {
  return interior_norms(f.grid(), f.per_point(), f.data(), radius);
}

/// max_x |a(x) - b(x)| over every component.
double max_abs_difference(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);

}  // namespace gvc
