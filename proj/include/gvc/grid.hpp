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

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace gvc {

enum class Boundary { periodic, open };

struct Signature {
  int positive = 0;
  int negative = 0;
  bool riemannian() const { return negative == 0; }
};

/// Metric tensor g_ij over the chart: either one constant matrix or a
/// function of the coordinates sampled at every grid point.
class MetricSpec {
 public:
  using Generator = std::function<Eigen::MatrixXd(std::span<const double> coords)>;

  static MetricSpec euclidean(std::size_t n);
  /// diag(+1, -1, ..., -1).
  static MetricSpec minkowski(std::size_t n);
  static MetricSpec constant(Eigen::MatrixXd g);
  static MetricSpec field(std::size_t n, Generator generator);

  bool is_constant() const { return !generator_; }
  std::size_t dim() const { return static_cast<std::size_t>(constant_.rows()); }
  const Eigen::MatrixXd& constant_value() const { return constant_; }
  const Generator& generator() const { return generator_; }

 private:
  Eigen::MatrixXd constant_;
  Generator generator_;
};

/// Discretized coordinate box on the base manifold. Points are stored in
/// row-major order (last axis fastest).
class GridChart {
 public:
  GridChart(std::vector<std::size_t> extent, std::vector<double> spacing, Boundary boundary,
            std::vector<double> lower = {}, MetricSpec metric = MetricSpec::euclidean(0));

  std::size_t dim() const { return extent_.size(); }
  std::size_t points() const { return points_; }
  std::size_t extent(std::size_t axis) const { return extent_[axis]; }
  double spacing(std::size_t axis) const { return spacing_[axis]; }
  double lower(std::size_t axis) const { return lower_[axis]; }
  double max_spacing() const;
  /// Product of spacings (cell volume in chart units).
  double cell_volume() const;
  Boundary boundary() const { return boundary_; }
  std::size_t stride(std::size_t axis) const { return stride_[axis]; }
  const std::vector<std::size_t>& extents() const { return extent_; }
  const std::vector<double>& spacings() const { return spacing_; }
  const std::vector<double>& lowers() const { return lower_; }

  std::size_t index(std::size_t x, std::size_t axis) const { return (x / stride_[axis]) % extent_[axis]; }
  double coord(std::size_t x, std::size_t axis) const { return lower_[axis] + spacing_[axis] * index(x, axis); }
  std::vector<double> coords(std::size_t x) const;

  /// Neighbour index; periodic axes wrap, open axes must stay in range.
  std::size_t shift(std::size_t x, std::size_t axis, long offset) const;

  /// In open mode, excludes the outermost `radius` layers on every axis with
  /// more than one point. Every point is interior on periodic grids.
  bool interior(std::size_t x, std::size_t radius = 1) const;
  std::size_t interior_count(std::size_t radius = 1) const;

  const MetricSpec& metric_spec() const { return metric_spec_; }
  bool constant_metric() const { return metric_spec_.is_constant(); }
  const Eigen::MatrixXd& metric(std::size_t x) const {
    return metric_spec_.is_constant() ? metric_spec_.constant_value() : metric_values_[x];
  }
  Signature signature() const { return signature_; }

  /// Same box with every spacing divided by 2^levels.
  GridChart refined(unsigned levels) const;

 private:
  std::vector<std::size_t> extent_;
  std::vector<double> spacing_;
  std::vector<double> lower_;
  std::vector<std::size_t> stride_;
  std::size_t points_ = 0;
  Boundary boundary_;
  MetricSpec metric_spec_;
  std::vector<Eigen::MatrixXd> metric_values_;
  Signature signature_;
};

using GridPtr = std::shared_ptr<const GridChart>;

/// Signature of a symmetric matrix; throws InputError when singular.
Signature metric_signature(const Eigen::MatrixXd& g);

}  // namespace gvc
