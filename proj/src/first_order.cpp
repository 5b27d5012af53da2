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

#include "gvc/first_order.hpp"

#include "gvc/error.hpp"

#include <vector>

namespace gvc {

void FirstOrderLagrangian::hessian_times(std::size_t x, std::span<const double> z, std::span<const double> w,
                                         std::span<double> out) const {
  const auto D = static_cast<Eigen::Index>(layout().dim());
  Eigen::MatrixXd h(D, D);
  hessian(x, z, h);
  Eigen::Map<const Eigen::VectorXd> wv(w.data(), D);
  Eigen::Map<Eigen::VectorXd>(out.data(), D) = h * wv;
}

void numeric_gradient(const ScalarFn& f, std::span<const double> z, std::span<double> g) {
  std::vector<double> p(z.begin(), z.end());
  for (std::size_t c = 0; c < z.size(); ++c) {
    const double h = fd_step(z[c]);
    p[c] = z[c] + h;
    const double fp = f(p);
    p[c] = z[c] - h;
    const double fm = f(p);
    p[c] = z[c];
    g[c] = (fp - fm) / (2.0 * h);
  }
}

void numeric_hessian(const ScalarFn& f, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h) {
  const std::size_t N = z.size();
  std::vector<double> p(z.begin(), z.end());
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b) {
      const double ha = fd_step(z[a]), hb = fd_step(z[b]);
      auto eval = [&](double sa, double sb) {
        p[a] += sa * ha;
        p[b] += sb * hb;
        const double v = f(p);
        p[a] = z[a];
        p[b] = z[b];
        return v;
      };
      const double v = (eval(1, 1) - eval(1, -1) - eval(-1, 1) + eval(-1, -1)) / (4.0 * ha * hb);
      h(a, b) = h(b, a) = v;
    }
}

void numeric_hessian(const GradientFn& grad, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h) {
  const std::size_t N = z.size();
  std::vector<double> p(z.begin(), z.end()), gp(N), gm(N);
  for (std::size_t b = 0; b < N; ++b) {
    const double hb = fd_step(z[b]);
    p[b] = z[b] + hb;
    grad(p, gp);
    p[b] = z[b] - hb;
    grad(p, gm);
    p[b] = z[b];
    for (std::size_t a = 0; a < N; ++a) h(a, b) = (gp[a] - gm[a]) / (2.0 * hb);
  }
  const Eigen::MatrixXd s = 0.5 * (h + h.transpose());
  h = s;
}

CallbackLagrangian::CallbackLagrangian(JetLayout layout, Value value, Gradient gradient, Hessian hessian)
    : layout_(layout), value_(std::move(value)), gradient_(std::move(gradient)), hessian_(std::move(hessian)) {
  require(static_cast<bool>(value_), "lagrangian value callback is required");
}

double CallbackLagrangian::value(std::size_t x, std::span<const double> z) const { return value_(x, z); }

void CallbackLagrangian::gradient(std::size_t x, std::span<const double> z, std::span<double> g) const {
  if (gradient_) return gradient_(x, z, g);
  numeric_gradient([&](std::span<const double> p) { return value_(x, p); }, z, g);
}

void CallbackLagrangian::hessian(std::size_t x, std::span<const double> z, Eigen::Ref<Eigen::MatrixXd> h) const {
  if (hessian_) return hessian_(x, z, h);
  if (gradient_) return numeric_hessian([&](std::span<const double> p, std::span<double> g) { gradient_(x, p, g); }, z, h);
  numeric_hessian([&](std::span<const double> p) { return value_(x, p); }, z, h);
}

}  // namespace gvc
