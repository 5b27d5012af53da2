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

#include "gvc/grid.hpp"

#include "gvc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gvc {

MetricSpec MetricSpec::euclidean(std::size_t n) {
  return constant(Eigen::MatrixXd::Identity(n, n));
}

MetricSpec MetricSpec::minkowski(std::size_t n) {
  Eigen::MatrixXd g = -Eigen::MatrixXd::Identity(n, n);
  if (n > 0) g(0, 0) = 1.0;
  return constant(g);
}

MetricSpec MetricSpec::constant(Eigen::MatrixXd g) {
  MetricSpec m;
  m.constant_ = std::move(g);
  return m;
}

MetricSpec MetricSpec::field(std::size_t n, Generator generator) {
  MetricSpec m;
  m.constant_ = Eigen::MatrixXd::Identity(n, n);
  m.generator_ = std::move(generator);
  return m;
}

Signature metric_signature(const Eigen::MatrixXd& g) {
  require(g.rows() == g.cols(), "metric must be square");
  require((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()),
          "metric must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  Signature s;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    const double ev = eig.eigenvalues()[k];
    require(std::abs(ev) > 1e-12 * scale, "metric is degenerate (|det g| = 0)");
    (ev > 0 ? s.positive : s.negative) += 1;
  }
  return s;
}

GridChart::GridChart(std::vector<std::size_t> extent, std::vector<double> spacing, Boundary boundary,
                     std::vector<double> lower, MetricSpec metric)
    : extent_(std::move(extent)),
      spacing_(std::move(spacing)),
      lower_(std::move(lower)),
      boundary_(boundary),
      metric_spec_(std::move(metric)) {
  const std::size_t n = extent_.size();
  require(n >= 1, "grid dimension must be positive");
  require(spacing_.size() == n, "grid spacing must have one entry per axis");
  if (lower_.empty()) lower_.assign(n, 0.0);
  require(lower_.size() == n, "grid lower corner must have one entry per axis");
  for (std::size_t a = 0; a < n; ++a) {
    require(extent_[a] >= 1, "grid extent must be positive on axis " + std::to_string(a));
    require(spacing_[a] > 0.0 && std::isfinite(spacing_[a]), "grid spacing must be > 0 on axis " + std::to_string(a));
    if (boundary_ == Boundary::open)
      require(extent_[a] == 1 || extent_[a] >= 3, "open axes need at least 3 points for one-sided stencils");
  }
  if (metric_spec_.dim() == 0) metric_spec_ = MetricSpec::euclidean(n);
  require(metric_spec_.dim() == n, "metric dimension does not match grid dimension");

  stride_.assign(n, 1);
  for (std::size_t a = n - 1; a > 0; --a) stride_[a - 1] = stride_[a] * extent_[a];
  points_ = stride_[0] * extent_[0];

  if (metric_spec_.is_constant()) {
    signature_ = metric_signature(metric_spec_.constant_value());
  } else {
    metric_values_.resize(points_);
    for (std::size_t x = 0; x < points_; ++x) {
      const auto c = coords(x);
      metric_values_[x] = metric_spec_.generator()(c);
      require(metric_values_[x].rows() == static_cast<Eigen::Index>(n) &&
                  metric_values_[x].cols() == static_cast<Eigen::Index>(n),
              "metric generator returned a matrix of the wrong size");
      const Signature s = metric_signature(metric_values_[x]);
      if (x == 0) signature_ = s;
      require(s.positive == signature_.positive, "metric signature changes across the grid");
    }
  }
}

double GridChart::max_spacing() const {
  double h = 0.0;
  for (std::size_t a = 0; a < dim(); ++a)
    if (extent_[a] > 1) h = std::max(h, spacing_[a]);
  return h;
}

double GridChart::cell_volume() const {
  double v = 1.0;
  for (std::size_t a = 0; a < dim(); ++a)
    if (extent_[a] > 1) v *= spacing_[a];
  return v;
}

std::vector<double> GridChart::coords(std::size_t x) const {
  std::vector<double> c(dim());
  for (std::size_t a = 0; a < dim(); ++a) c[a] = coord(x, a);
  return c;
}

std::size_t GridChart::shift(std::size_t x, std::size_t axis, long offset) const {
  const long n = static_cast<long>(extent_[axis]);
  const long i = static_cast<long>(index(x, axis));
  long j = i + offset;
  if (boundary_ == Boundary::periodic) {
    j %= n;
    if (j < 0) j += n;
  }
  return x + static_cast<std::size_t>(j - i) * stride_[axis];
}

bool GridChart::interior(std::size_t x, std::size_t radius) const {
  if (boundary_ == Boundary::periodic) return true;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (extent_[a] == 1) continue;
    const std::size_t i = index(x, a);
    if (i < radius || i + radius >= extent_[a]) return false;
  }
  return true;
}

std::size_t GridChart::interior_count(std::size_t radius) const {
  std::size_t count = 0;
  for (std::size_t x = 0; x < points_; ++x) count += interior(x, radius) ? 1 : 0;
  return count;
}

GridChart GridChart::refined(unsigned levels) const {
  std::vector<std::size_t> extent = extent_;
  std::vector<double> spacing = spacing_;
  const std::size_t factor = std::size_t{1} << levels;
  for (std::size_t a = 0; a < dim(); ++a) {
    if (extent[a] == 1) continue;
    extent[a] = boundary_ == Boundary::periodic ? extent[a] * factor : (extent[a] - 1) * factor + 1;
    spacing[a] /= static_cast<double>(factor);
  }
  return GridChart(extent, spacing, boundary_, lower_, metric_spec_);
}

}  // namespace gvc
