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

#include "gvc/fields.hpp"
#include "gvc/grid.hpp"
#include "gvc/lagrangian.hpp"
#include "gvc/lie.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gvc {

/// mt19937_64 with doubles built from the top 53 bits, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  long integer(long lo, long hi) { return lo + static_cast<long>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a(const std::string& text);

struct Tolerances {
  double eps0 = 1e-8;
  double C = 10.0;
  double ratio_tol = 0.2;
  /// Residuals below this are treated as roundoff in refinement ratios.
  double roundoff = 1e-9;
  double step = 0.05;
  double fd_eps = 1e-4;
};

/// Parsed scenario. Builders evaluate closed-form initializers on the grid of
/// the requested refinement level, so every level samples the same fields.
class Scenario {
 public:
  static Scenario parse(const std::string& text);
  static Scenario load(const std::string& path);

  const nlohmann::json& json() const { return json_; }
  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  /// FNV-1a of the canonical JSON dump, hex.
  std::string hash() const;
  const Tolerances& tolerances() const { return tol_; }

  AlgebraPtr algebra() const { return alg_; }
  const Pairing& pairing() const { return *pairing_; }
  GridPtr grid(unsigned level) const;
  std::unique_ptr<ConnectionLagrangian> lagrangian(const GridPtr& grid) const;
  bool has_field(const std::string& name) const;
  bool mass_term() const;

  ConnectionField connection(const std::string& name, const GridPtr& grid) const;
  VariationField variation(const std::string& name, const GridPtr& grid) const;
  GaugeParameterField gauge_parameter(const std::string& name, const GridPtr& grid) const;
  /// `sample` selects an independent draw for random initializers.
  TwoTensorField two_tensor(const std::string& name, const GridPtr& grid, std::size_t sample = 0) const;
  std::size_t samples(const std::string& name) const;

  /// Raw initializer evaluation, (x, indices..., alpha) with n^rank * m values per point.
  std::vector<double> evaluate(const std::string& name, const GridChart& grid, std::size_t rank,
                               const std::string& stream) const;

 private:
  nlohmann::json json_;
  std::uint64_t seed_ = 0;
  Tolerances tol_;
  AlgebraPtr alg_;
  std::shared_ptr<Pairing> pairing_;
  std::shared_ptr<GridChart> base_grid_;
};

struct SuiteOutcome {
  nlohmann::json report;
  bool passed = false;
};

/// command: fibration | jacobi | gauge | selfdual | regularity | all, with an
/// optional "verify " or "report " prefix.
SuiteOutcome run_command(const Scenario& scenario, const std::string& command, unsigned refine);

std::string version_string();

}  // namespace gvc
