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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

namespace gvc {

/// Coordinates of J^1E over one point: z = [y^a | y_j^a]. The fibre index a
/// runs over `blocks * m` values; velocity y_j^a sits at
/// fibre() + vel_index(a, j). For connections blocks = n and a = (i, alpha),
/// so the velocity block is A_{i,j}^alpha in (i, j, alpha) order.
struct JetLayout {
  std::size_t n = 0;
  std::size_t blocks = 1;
  std::size_t m = 1;

  std::size_t fibre() const { return blocks * m; }
  std::size_t velocity() const { return blocks * n * m; }
  std::size_t dim() const { return fibre() + velocity(); }
  std::size_t vel_index(std::size_t a, std::size_t j) const { return ((a / m) * n + j) * m + a % m; }
};

/// First-order Lagrangian density L(x, y, y_j) on a fibred chart; x is a grid
/// point index so metric data can enter.
class FirstOrderLagrangian {
 public:
  virtual ~FirstOrderLagrangian() = default;

  virtual JetLayout layout() const = 0;
  virtual double value(std::size_t x, std::span<const double> z) const = 0;
  virtual void gradient(std::size_t x, std::span<const double> z, std::span<double> g) const = 0;
  virtual void hessian(std::size_t x, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h) const = 0;
  /// out = Hess(x, z) * w. The default assembles the Hessian.
  virtual void hessian_times(std::size_t x, std::span<const double> z, std::span<const double> w,
                             std::span<double> out) const;
};

/// Step used by every numeric derivative in the library.
inline double fd_step(double value) { return 1e-4 * std::max(1.0, std::abs(value)); }

using ScalarFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

/// Central differences of f with per-component step fd_step(z_c).
void numeric_gradient(const ScalarFn& f, std::span<const double> z, std::span<double> g);
/// Nested central differences of f.
void numeric_hessian(const ScalarFn& f, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h);
/// Central differences of an analytic gradient, symmetrized.
void numeric_hessian(const GradientFn& grad, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h);

/// Lagrangian from callbacks. Missing derivatives fall back to the numeric
/// routines above.
class CallbackLagrangian : public FirstOrderLagrangian {
 public:
  using Value = std::function<double(std::size_t, std::span<const double>)>;
  using Gradient = std::function<void(std::size_t, std::span<const double>, std::span<double>)>;
  using Hessian = std::function<void(std::size_t, std::span<const double>, Eigen::Ref<Eigen::MatrixXd>)>;

  CallbackLagrangian(JetLayout layout, Value value, Gradient gradient = {}, Hessian hessian = {});

  JetLayout layout() const override { return layout_; }
  double value(std::size_t x, std::span<const double> z) const override;
  void gradient(std::size_t x, std::span<const double> z, std::span<double> g) const override;
  void hessian(std::size_t x, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h) const override;

 private:
  JetLayout layout_;
  Value value_;
  Gradient gradient_;
  Hessian hessian_;
};

}  // namespace gvc
