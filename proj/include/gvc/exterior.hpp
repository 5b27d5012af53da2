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

#include "gvc/grid.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <utility>
#include <vector>

namespace gvc {

using Subset = std::vector<std::size_t>;

/// Increasing r-subsets of {0..n-1} in lexicographic order.
std::vector<Subset> subsets(std::size_t n, std::size_t r);

/// Ordered pairs a<b in lexicographic order, with a reverse lookup.
class PairIndex {
 public:
  explicit PairIndex(std::size_t n);
  std::size_t size() const { return pairs_.size(); }
  std::size_t n() const { return n_; }
  std::pair<std::size_t, std::size_t> pair(std::size_t p) const { return pairs_[p]; }
  /// Index of {a,b} with a != b; which order is irrelevant.
  std::size_t index(std::size_t a, std::size_t b) const { return lookup_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::size_t> lookup_;
};

/// g^(r)(I, J) = det(ginv restricted to rows I, columns J).
Eigen::MatrixXd induced_metric(const Eigen::MatrixXd& ginv, std::size_t r);

/// Sign of the permutation sorting the concatenation (I, K); 0 if they overlap.
int concat_sign(const Subset& I, const Subset& K);

/// Complement of I in {0..n-1}, increasing.
Subset complement(const Subset& I, std::size_t n);

/// Per-point inverse metric, sqrt|det g| and g^(2), with a single copy for
/// constant metrics.
class MetricData {
 public:
  explicit MetricData(const GridChart& grid);

  bool constant() const { return constant_; }
  std::size_t dim() const { return n_; }
  Signature signature() const { return signature_; }
  const Eigen::MatrixXd& ginv(std::size_t x) const { return ginv_[constant_ ? 0 : x]; }
  const Eigen::MatrixXd& g2(std::size_t x) const { return g2_[constant_ ? 0 : x]; }
  double vol(std::size_t x) const { return vol_[constant_ ? 0 : x]; }
  /// sign(det g).
  int det_sign() const { return signature_.negative % 2 == 0 ? 1 : -1; }

 private:
  bool constant_;
  std::size_t n_;
  Signature signature_;
  std::vector<Eigen::MatrixXd> ginv_;
  std::vector<Eigen::MatrixXd> g2_;
  std::vector<double> vol_;
};

}  // namespace gvc
