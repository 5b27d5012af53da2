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

#include "gvc/lie.hpp"

#include "gvc/error.hpp"

#include <algorithm>
#include <cmath>

namespace gvc {

LieAlgebra::LieAlgebra(std::size_t m, std::vector<double> c, std::vector<std::string> labels)
    : m_(m), c_(std::move(c)), labels_(std::move(labels)) {
  require(m_ >= 1, "dim_g must be positive");
  require(c_.size() == m_ * m_ * m_, "structure constants must have dim_g^3 entries");
  require(labels_.empty() || labels_.size() == m_, "basis_labels must have dim_g entries");
  abelian_ = std::all_of(c_.begin(), c_.end(), [](double v) { return v == 0.0; });
}

LieAlgebra LieAlgebra::abelian(std::size_t m) { return LieAlgebra(m, std::vector<double>(m * m * m, 0.0)); }

LieAlgebra LieAlgebra::su2() {
  std::vector<double> c(27, 0.0);
  auto set = [&](int a, int b, int g, double v) { c[(a * 3 + b) * 3 + g] = v; };
  set(0, 1, 2, 1.0);
  set(1, 2, 0, 1.0);
  set(2, 0, 1, 1.0);
  set(0, 2, 1, -1.0);
  set(1, 0, 2, -1.0);
  set(2, 1, 0, -1.0);
  return LieAlgebra(3, std::move(c), {"e1", "e2", "e3"});
}

LieAlgebra LieAlgebra::preset(const std::string& name) {
  if (name == "u1") return abelian(1);
  if (name == "su2") return su2();
  throw InputError("unknown algebra preset: " + name);
}

void LieAlgebra::bracket(std::span<const double> a, std::span<const double> b, std::span<double> out) const {
  require(a.size() == m_ && b.size() == m_ && out.size() == m_, "bracket: vectors must have length dim_g");
  for (std::size_t al = 0; al < m_; ++al) {
    double s = 0.0;
    if (!abelian_)
      for (std::size_t be = 0; be < m_; ++be)
        for (std::size_t ga = 0; ga < m_; ++ga) s += c(al, be, ga) * a[be] * b[ga];
    out[al] = s;
  }
}

std::vector<double> LieAlgebra::bracket(std::span<const double> a, std::span<const double> b) const {
  std::vector<double> out(m_);
  bracket(a, b, out);
  return out;
}

Pairing::Pairing(Eigen::MatrixXd k, bool nondegenerate) : k_(std::move(k)), nondegenerate_(nondegenerate) {
  require(k_.rows() == k_.cols() && k_.rows() >= 1, "pairing must be a square matrix");
}

bool AlgebraReport::ok(double tol) const {
  return antisymmetry <= tol && jacobi <= tol && pairing_symmetry <= tol && ad_invariance <= tol;
}

double ad_invariance_violation(const LieAlgebra& alg, const Eigen::MatrixXd& k) {
  const std::size_t m = alg.dim();
  require(static_cast<std::size_t>(k.rows()) == m, "pairing dimension does not match dim_g");
  double worst = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t g = 0; g < m; ++g) {
        double s = 0.0;
        for (std::size_t d = 0; d < m; ++d) s += alg.c(d, a, b) * k(d, g) + alg.c(d, a, g) * k(b, d);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

AlgebraReport validate(const LieAlgebra& alg, const Pairing& pairing) {
  const std::size_t m = alg.dim();
  require(pairing.dim() == m, "pairing dimension does not match dim_g");
  AlgebraReport r;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t g = 0; g < m; ++g) r.antisymmetry = std::max(r.antisymmetry, std::abs(alg.c(a, b, g) + alg.c(a, g, b)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t g = 0; g < m; ++g)
        for (std::size_t e = 0; e < m; ++e) {
          double s = 0.0;
          for (std::size_t d = 0; d < m; ++d)
            s += alg.c(d, b, g) * alg.c(a, d, e) + alg.c(d, g, e) * alg.c(a, d, b) + alg.c(d, e, b) * alg.c(a, d, g);
          r.jacobi = std::max(r.jacobi, std::abs(s));
        }
  const Eigen::MatrixXd& k = pairing.matrix();
  r.pairing_symmetry = (k - k.transpose()).cwiseAbs().maxCoeff();
  r.ad_invariance = ad_invariance_violation(alg, k);
  r.det_pairing = k.determinant();
  return r;
}

Eigen::MatrixXd killing_form(const LieAlgebra& alg) {
  const std::size_t m = alg.dim();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      double s = 0.0;
      for (std::size_t g = 0; g < m; ++g)
        for (std::size_t d = 0; d < m; ++d) s += alg.c(g, a, d) * alg.c(d, b, g);
      K(a, b) = s;
    }
  return K;
}

LieAlgebra change_basis(const LieAlgebra& alg, const Eigen::MatrixXd& P) {
  const std::size_t m = alg.dim();
  require(static_cast<std::size_t>(P.rows()) == m && P.cols() == P.rows(), "basis change must be dim_g x dim_g");
  const Eigen::MatrixXd Pinv = P.inverse();
  std::vector<double> c(m * m * m, 0.0);
  // [B'_b, B'_g] = P(mu,b) P(rho,g) c^nu_{mu rho} B_nu = (Pinv(a,nu) ...) B'_a
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t g = 0; g < m; ++g) {
        double s = 0.0;
        for (std::size_t nu = 0; nu < m; ++nu)
          for (std::size_t mu = 0; mu < m; ++mu)
            for (std::size_t rho = 0; rho < m; ++rho) s += Pinv(a, nu) * alg.c(nu, mu, rho) * P(mu, b) * P(rho, g);
        c[(a * m + b) * m + g] = s;
      }
  return LieAlgebra(m, std::move(c));
}

}  // namespace gvc
