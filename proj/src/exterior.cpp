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

#include "gvc/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gvc {

std::vector<Subset> subsets(std::size_t n, std::size_t r) {
  std::vector<Subset> out;
  if (r > n) return out;
  Subset cur(r);
  for (std::size_t k = 0; k < r; ++k) cur[k] = k;
  while (true) {
    out.push_back(cur);
    if (r == 0) break;
    std::size_t k = r;
    while (k > 0 && cur[k - 1] == n - r + (k - 1)) --k;
    if (k == 0) break;
    ++cur[k - 1];
    for (std::size_t q = k; q < r; ++q) cur[q] = cur[q - 1] + 1;
  }
  return out;
}

PairIndex::PairIndex(std::size_t n) : n_(n), lookup_(n * n, std::numeric_limits<std::size_t>::max()) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      lookup_[a * n + b] = lookup_[b * n + a] = pairs_.size();
      pairs_.emplace_back(a, b);
    }
}

Eigen::MatrixXd induced_metric(const Eigen::MatrixXd& ginv, std::size_t r) {
  const auto sets = subsets(static_cast<std::size_t>(ginv.rows()), r);
  const auto N = static_cast<Eigen::Index>(sets.size());
  Eigen::MatrixXd G(N, N);
  Eigen::MatrixXd minor(r, r);
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b) {
      if (r == 0) {
        G(a, b) = 1.0;
        continue;
      }
      for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q) minor(p, q) = ginv(sets[a][p], sets[b][q]);
      G(a, b) = r == 2 ? minor(0, 0) * minor(1, 1) - minor(0, 1) * minor(1, 0) : minor.determinant();
    }
  return G;
}

int concat_sign(const Subset& I, const Subset& K) {
  Subset all(I);
  all.insert(all.end(), K.begin(), K.end());
  int sign = 1;
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (all[a] == all[b]) return 0;
      if (all[a] > all[b]) sign = -sign;
    }
  return sign;
}

Subset complement(const Subset& I, std::size_t n) {
  Subset K;
  for (std::size_t a = 0; a < n; ++a)
    if (std::find(I.begin(), I.end(), a) == I.end()) K.push_back(a);
  return K;
}

MetricData::MetricData(const GridChart& grid)
    : constant_(grid.constant_metric()), n_(grid.dim()), signature_(grid.signature()) {
  const std::size_t count = constant_ ? 1 : grid.points();
  ginv_.resize(count);
  g2_.resize(count);
  vol_.resize(count);
  for (std::size_t x = 0; x < count; ++x) {
    const Eigen::MatrixXd& g = grid.metric(x);
    ginv_[x] = g.inverse();
    g2_[x] = induced_metric(ginv_[x], 2);
    vol_[x] = std::sqrt(std::abs(g.determinant()));
  }
}

}  // namespace gvc
