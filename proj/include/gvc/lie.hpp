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
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gvc {

/// Structure constants c^alpha_{beta gamma} of a Lie algebra in a basis B_alpha:
/// [B_beta, B_gamma] = c^alpha_{beta gamma} B_alpha. Stores the plain bracket
/// of the algebra (no adjoint-bundle sign).
class LieAlgebra {
 public:
  /// `c` is dense, indexed [(alpha * m + beta) * m + gamma].
  LieAlgebra(std::size_t m, std::vector<double> c, std::vector<std::string> labels = {});

  static LieAlgebra abelian(std::size_t m);
  /// su(2) with c^alpha_{beta gamma} = epsilon_{alpha beta gamma}.
  static LieAlgebra su2();
  static LieAlgebra preset(const std::string& name);

  std::size_t dim() const { return m_; }
  double c(std::size_t alpha, std::size_t beta, std::size_t gamma) const { return c_[(alpha * m_ + beta) * m_ + gamma]; }
  const std::vector<double>& constants() const { return c_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool is_abelian() const { return abelian_; }

  /// [a, b]^alpha = c^alpha_{beta gamma} a^beta b^gamma.
  void bracket(std::span<const double> a, std::span<const double> b, std::span<double> out) const;
  std::vector<double> bracket(std::span<const double> a, std::span<const double> b) const;

 private:
  std::size_t m_;
  std::vector<double> c_;
  std::vector<std::string> labels_;
  bool abelian_ = true;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Symmetric bilinear form <B_alpha, B_beta> on the algebra.
class Pairing {
 public:
  explicit Pairing(Eigen::MatrixXd k, bool nondegenerate = true);
  static Pairing identity(std::size_t m) { return Pairing(Eigen::MatrixXd::Identity(m, m)); }

  const Eigen::MatrixXd& matrix() const { return k_; }
  double operator()(std::size_t a, std::size_t b) const { return k_(a, b); }
  std::size_t dim() const { return static_cast<std::size_t>(k_.rows()); }
  bool nondegenerate() const { return nondegenerate_; }

 private:
  Eigen::MatrixXd k_;
  bool nondegenerate_;
};

struct AlgebraReport {
  double antisymmetry = 0.0;
  double jacobi = 0.0;
  double pairing_symmetry = 0.0;
  double ad_invariance = 0.0;
  double det_pairing = 0.0;
  bool ok(double tol = 1e-14) const;
};

/// Max violations of antisymmetry, the Jacobi identity, pairing symmetry and
/// infinitesimal ad-invariance. Never throws on bad data; shape mismatch does.
AlgebraReport validate(const LieAlgebra& alg, const Pairing& pairing);

/// max |sum_delta (c^delta_{ab} k_{delta g} + c^delta_{ag} k_{b delta})|.
double ad_invariance_violation(const LieAlgebra& alg, const Eigen::MatrixXd& k);

/// K_{ab} = sum_{g,d} c^g_{a d} c^d_{b g}.
Eigen::MatrixXd killing_form(const LieAlgebra& alg);

/// Structure constants in the basis B'_a = sum_b P(b, a) B_b.
LieAlgebra change_basis(const LieAlgebra& alg, const Eigen::MatrixXd& P);

}  // namespace gvc
