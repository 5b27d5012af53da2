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

#include "gvc/scenario.hpp"

#include "gvc/error.hpp"
#include "gvc/exterior.hpp"
#include "gvc/parallel.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace gvc {

using Json = nlohmann::json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string version_string() { return GVC_VERSION_STRING; }

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Json& need(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError("missing field: " + path + key);
  return obj.at(key);
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InputError("field " + path + " must be a number");
  const double v = j.get<double>();
  require(std::isfinite(v), "field " + path + " must be finite");
  return v;
}

double number_or(const Json& obj, const std::string& key, double fallback, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return number(obj.at(key), path + key);
}

long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError("field " + path + " must be an integer");
  return j.get<long>();
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError("field " + path + " must be an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

Eigen::MatrixXd matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw InputError("field " + path + " must be a non-empty matrix");
  const std::size_t rows = j.size();
  Eigen::MatrixXd M(rows, rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = numbers(j[r], path + "[" + std::to_string(r) + "]");
    require(row.size() == rows, "field " + path + " must be square");
    for (std::size_t c = 0; c < rows; ++c) M(r, c) = row[c];
  }
  return M;
}

void reject_unknown(const Json& obj, const std::set<std::string>& known, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) throw InputError("unknown field: " + path + it.key());
}

void parse_algebra(const Json& j, AlgebraPtr& alg, std::shared_ptr<Pairing>& pairing) {
  if (j.is_string() || (j.is_object() && j.contains("preset"))) {
    const std::string name = j.is_string() ? j.get<std::string>() : need(j, "preset", "algebra.").get<std::string>();
    alg = std::make_shared<LieAlgebra>(LieAlgebra::preset(name));
    pairing = std::make_shared<Pairing>(Pairing::identity(alg->dim()));
    return;
  }
  if (!j.is_object()) throw InputError("field algebra must be a preset name or an object");
  reject_unknown(j, {"dim_g", "c", "pairing", "basis_labels", "nondegenerate"}, "algebra.");
  const long m = integer(need(j, "dim_g", "algebra."), "algebra.dim_g");
  require(m >= 1 && m <= 64, "field algebra.dim_g must be in [1, 64]");
  const Json& c = need(j, "c", "algebra.");
  const auto M = static_cast<std::size_t>(m);
  std::vector<double> flat;
  require(c.is_array() && c.size() == M, "field algebra.c must have dim_g entries");
  for (std::size_t a = 0; a < M; ++a) {
    require(c[a].is_array() && c[a].size() == M, "field algebra.c[" + std::to_string(a) + "] must have dim_g rows");
    for (std::size_t b = 0; b < M; ++b) {
      const auto row = numbers(c[a][b], "algebra.c[" + std::to_string(a) + "][" + std::to_string(b) + "]");
      require(row.size() == M, "field algebra.c rows must have dim_g entries");
      flat.insert(flat.end(), row.begin(), row.end());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("basis_labels"))
    for (const auto& l : j["basis_labels"]) labels.push_back(l.get<std::string>());
  alg = std::make_shared<LieAlgebra>(M, std::move(flat), std::move(labels));
  const bool nondeg = j.value("nondegenerate", true);
  pairing = std::make_shared<Pairing>(j.contains("pairing") ? matrix(j["pairing"], "algebra.pairing")
                                                            : Eigen::MatrixXd::Identity(M, M),
                                      nondeg);
  require(pairing->dim() == M, "field algebra.pairing must be dim_g x dim_g");
}

MetricSpec parse_metric(const Json& j, std::size_t n, const std::vector<double>& lower, const std::vector<double>& length) {
  if (j.is_null()) return MetricSpec::euclidean(n);
  const std::string type = need(j, "type", "metric.").get<std::string>();
  if (type == "euclidean") return MetricSpec::euclidean(n);
  if (type == "minkowski") return MetricSpec::minkowski(n);
  if (type == "diagonal") {
    const auto v = numbers(need(j, "values", "metric."), "metric.values");
    require(v.size() == n, "field metric.values must have one entry per axis");
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t a = 0; a < n; ++a) g(a, a) = v[a];
    return MetricSpec::constant(g);
  }
  if (type == "constant") {
    Eigen::MatrixXd g = matrix(need(j, "matrix", "metric."), "metric.matrix");
    require(static_cast<std::size_t>(g.rows()) == n, "field metric.matrix must be n x n");
    return MetricSpec::constant(g);
  }
  if (type == "conformal") {
    const double amp = number(need(j, "amplitude", "metric."), "metric.amplitude");
    const auto k = numbers(need(j, "wave_vector", "metric."), "metric.wave_vector");
    require(k.size() == n, "field metric.wave_vector must have one entry per axis");
    require(std::abs(amp) < 1.0, "field metric.amplitude must satisfy |amplitude| < 1");
    return MetricSpec::field(n, [amp, k, lower, length, n](std::span<const double> x) {
      double phase = 0.0;
      for (std::size_t a = 0; a < n; ++a) phase += k[a] * (x[a] - lower[a]) / length[a];
      return Eigen::MatrixXd((1.0 + amp * std::sin(kTwoPi * phase)) * Eigen::MatrixXd::Identity(n, n));
    });
  }
  throw InputError("unknown metric type: " + type);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < e; ++k) r *= b;
  return r;
}

// Flat offset of (indices..., alpha) within one point.
std::size_t component_offset(const std::vector<long>& index, std::size_t n, std::size_t m, std::size_t rank,
                             const std::string& path) {
  require(index.size() == rank + 1, "field " + path + " must have " + std::to_string(rank + 1) + " entries");
  std::size_t off = 0;
  for (std::size_t r = 0; r < rank; ++r) {
    require(index[r] >= 0 && static_cast<std::size_t>(index[r]) < n, "field " + path + " has a base index out of range");
    off = off * n + static_cast<std::size_t>(index[r]);
  }
  require(index[rank] >= 0 && static_cast<std::size_t>(index[rank]) < m, "field " + path + " has an algebra index out of range");
  return off * m + static_cast<std::size_t>(index[rank]);
}

std::vector<long> index_list(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError("field " + path + " must be an array of integers");
  std::vector<long> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(integer(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace

Scenario Scenario::parse(const std::string& text) {
  Scenario s;
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  try {
    s.json_ = blank ? Json::object() : Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  const Json& j = s.json_;
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  try {
    reject_unknown(j, {"name", "description", "algebra", "grid", "metric", "lagrangian", "fields", "tolerances", "seed", "options"}, "");
    parse_algebra(need(j, "algebra", ""), s.alg_, s.pairing_);
    const AlgebraReport ar = validate(*s.alg_, *s.pairing_);
    require(ar.antisymmetry <= 1e-12, "field algebra.c violates antisymmetry (max " + std::to_string(ar.antisymmetry) + ")");
    require(ar.jacobi <= 1e-12, "field algebra.c violates the Jacobi identity (max " + std::to_string(ar.jacobi) + ")");
    require(ar.pairing_symmetry <= 1e-12, "field algebra.pairing must be symmetric");
    require(ar.ad_invariance <= 1e-12, "field algebra.pairing is not ad-invariant (max " + std::to_string(ar.ad_invariance) + ")");

    const Json& g = need(j, "grid", "");
    reject_unknown(g, {"extent", "length", "spacing", "lower", "boundary"}, "grid.");
    std::vector<std::size_t> extent;
    for (long e : index_list(need(g, "extent", "grid."), "grid.extent")) {
      require(e >= 1, "field grid.extent entries must be positive");
      extent.push_back(static_cast<std::size_t>(e));
    }
    const std::size_t n = extent.size();
    require(n >= 2 && n <= 6, "field grid.extent must have 2 to 6 axes");
    const std::string bname = g.value("boundary", std::string("periodic"));
    require(bname == "periodic" || bname == "open", "field grid.boundary must be \"periodic\" or \"open\"");
    const Boundary boundary = bname == "periodic" ? Boundary::periodic : Boundary::open;
    std::vector<double> spacing(n, 1.0), length(n, 1.0);
    if (g.contains("spacing")) {
      spacing = numbers(g["spacing"], "grid.spacing");
      require(spacing.size() == n, "field grid.spacing must have one entry per axis");
    } else {
      length = numbers(need(g, "length", "grid."), "grid.length");
      require(length.size() == n, "field grid.length must have one entry per axis");
      for (std::size_t a = 0; a < n; ++a) {
        require(length[a] > 0.0, "field grid.length entries must be positive");
        const std::size_t cells = boundary == Boundary::periodic ? extent[a] : (extent[a] > 1 ? extent[a] - 1 : 1);
        spacing[a] = length[a] / static_cast<double>(cells);
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      require(spacing[a] > 0.0, "field grid.spacing entries must be positive");
      const std::size_t cells = boundary == Boundary::periodic ? extent[a] : (extent[a] > 1 ? extent[a] - 1 : 1);
      length[a] = spacing[a] * static_cast<double>(cells);
    }
    std::vector<double> lower(n, 0.0);
    if (g.contains("lower")) {
      lower = numbers(g["lower"], "grid.lower");
      require(lower.size() == n, "field grid.lower must have one entry per axis");
    }
    const MetricSpec metric = parse_metric(j.contains("metric") ? j["metric"] : Json(), n, lower, length);
    s.base_grid_ = std::make_shared<GridChart>(extent, spacing, boundary, lower, metric);

    if (j.contains("lagrangian")) {
      const Json& l = j["lagrangian"];
      reject_unknown(l, {"type", "coefficients", "mass"}, "lagrangian.");
      const std::string type = need(l, "type", "lagrangian.").get<std::string>();
      require(type == "yang_mills" || type == "custom_quadratic", "unknown lagrangian type: " + type);
      if (type == "custom_quadratic") need(l, "coefficients", "lagrangian.");
      if (l.contains("mass")) number(l["mass"], "lagrangian.mass");
    }
    if (j.contains("fields")) require(j["fields"].is_object(), "field fields must be an object");
    if (j.contains("tolerances")) {
      const Json& t = j["tolerances"];
      reject_unknown(t, {"eps0", "C", "ratio_tol", "roundoff", "step", "fd_eps"}, "tolerances.");
      s.tol_.eps0 = number_or(t, "eps0", s.tol_.eps0, "tolerances.");
      s.tol_.C = number_or(t, "C", s.tol_.C, "tolerances.");
      s.tol_.ratio_tol = number_or(t, "ratio_tol", s.tol_.ratio_tol, "tolerances.");
      s.tol_.roundoff = number_or(t, "roundoff", s.tol_.roundoff, "tolerances.");
      s.tol_.step = number_or(t, "step", s.tol_.step, "tolerances.");
      s.tol_.fd_eps = number_or(t, "fd_eps", s.tol_.fd_eps, "tolerances.");
      require(s.tol_.step > 0 && s.tol_.fd_eps > 0, "fields tolerances.step and tolerances.fd_eps must be positive");
    }
    if (j.contains("seed")) {
      require(j["seed"].is_number_unsigned() || j["seed"].is_number_integer(), "field seed must be an integer");
      s.seed_ = j["seed"].get<std::uint64_t>();
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Scenario::hash() const {
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(fnv1a(json_.dump())));
  return out;
}

GridPtr Scenario::grid(unsigned level) const {
  if (level == 0) return base_grid_;
  return std::make_shared<GridChart>(base_grid_->refined(level));
}

bool Scenario::has_field(const std::string& name) const {
  return json_.contains("fields") && json_["fields"].contains(name);
}

bool Scenario::mass_term() const { return json_.contains("lagrangian") && json_["lagrangian"].contains("mass"); }

std::unique_ptr<ConnectionLagrangian> Scenario::lagrangian(const GridPtr& grid) const {
  const Json l = json_.contains("lagrangian") ? json_["lagrangian"] : Json{{"type", "yang_mills"}};
  const std::string type = l["type"].get<std::string>();
  LagrangianSpec spec;
  if (type == "yang_mills") {
    spec = builtin_ym(std::make_shared<MetricData>(*grid), *pairing_);
  } else {
    spec = custom_quadratic(grid->dim(), alg_->dim(), matrix(l["coefficients"], "lagrangian.coefficients"));
  }
  std::optional<MassTerm> mass;
  if (l.contains("mass")) mass = MassTerm{number(l["mass"], "lagrangian.mass"), pairing_->matrix()};
  return std::make_unique<ConnectionLagrangian>(std::move(spec), alg_, grid, mass);
}

std::size_t Scenario::samples(const std::string& name) const {
  if (!has_field(name)) return 1;
  const Json& f = json_["fields"][name];
  if (!f.contains("samples")) return 1;
  const long k = integer(f["samples"], "fields." + name + ".samples");
  require(k >= 1 && k <= 1000, "field fields." + name + ".samples must be in [1, 1000]");
  return static_cast<std::size_t>(k);
}

std::vector<double> Scenario::evaluate(const std::string& name, const GridChart& grid, std::size_t rank,
                                       const std::string& stream) const {
  const std::size_t n = grid.dim(), m = alg_->dim(), N = grid.points();
  const std::size_t P = ipow(n, rank) * m;
  std::vector<double> out(N * P, 0.0);
  if (!has_field(name)) return out;
  const std::string path = "fields." + name + ".";
  const Json& f = json_["fields"][name];
  reject_unknown(f, {"type", "values", "modes", "terms", "amplitude", "max_wavenumber", "symmetry", "samples", "scale"}, path);
  const std::string type = need(f, "type", path).get<std::string>();

  std::vector<double> box(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t cells = grid.boundary() == Boundary::periodic ? grid.extent(a) : grid.extent(a) - 1;
    box[a] = grid.spacing(a) * static_cast<double>(std::max<std::size_t>(cells, 1));
  }

  if (type == "zero") {
  } else if (type == "constant") {
    const auto v = numbers(need(f, "values", path), path + "values");
    require(v.size() == P, "field " + path + "values must have " + std::to_string(P) + " entries");
    for (std::size_t x = 0; x < N; ++x) std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(x * P));
  } else if (type == "plane_wave") {
    const Json& modes = need(f, "modes", path);
    require(modes.is_array(), "field " + path + "modes must be an array");
    for (std::size_t q = 0; q < modes.size(); ++q) {
      const std::string mp = path + "modes[" + std::to_string(q) + "].";
      const std::size_t off = component_offset(index_list(need(modes[q], "index", mp), mp + "index"), n, m, rank, mp + "index");
      const double amp = number_or(modes[q], "amplitude", 1.0, mp);
      const double phase = number_or(modes[q], "phase", 0.0, mp);
      const auto k = numbers(need(modes[q], "wave_vector", mp), mp + "wave_vector");
      require(k.size() == n, "field " + mp + "wave_vector must have one entry per axis");
      for (std::size_t x = 0; x < N; ++x) {
        double arg = phase;
        for (std::size_t a = 0; a < n; ++a) arg += kTwoPi * k[a] * grid.coord(x, a);
        out[x * P + off] += amp * std::sin(arg);
      }
    }
  } else if (type == "linear") {
    const Json& terms = need(f, "terms", path);
    require(terms.is_array(), "field " + path + "terms must be an array");
    for (std::size_t q = 0; q < terms.size(); ++q) {
      const std::string tp = path + "terms[" + std::to_string(q) + "].";
      const std::size_t off = component_offset(index_list(need(terms[q], "index", tp), tp + "index"), n, m, rank, tp + "index");
      const double offset = number_or(terms[q], "offset", 0.0, tp);
      std::vector<double> slope(n, 0.0);
      if (terms[q].contains("slope")) slope = numbers(terms[q]["slope"], tp + "slope");
      require(slope.size() == n, "field " + tp + "slope must have one entry per axis");
      for (std::size_t x = 0; x < N; ++x) {
        double v = offset;
        for (std::size_t a = 0; a < n; ++a) v += slope[a] * grid.coord(x, a);
        out[x * P + off] += v;
      }
    }
  } else if (type == "random") {
    const double amp = number_or(f, "amplitude", 1.0, path);
    const long K = f.contains("modes") ? integer(f["modes"], path + "modes") : 3;
    const long kmax = f.contains("max_wavenumber") ? integer(f["max_wavenumber"], path + "max_wavenumber") : 1;
    require(K >= 1 && K <= 64, "field " + path + "modes must be in [1, 64]");
    require(kmax >= 0 && kmax <= 16, "field " + path + "max_wavenumber must be in [0, 16]");
    Rng rng(seed_ ^ fnv1a(stream));
    struct Mode {
      double amp, phase;
      std::vector<double> k;
    };
    std::vector<std::vector<Mode>> per_comp(P);
    for (std::size_t c = 0; c < P; ++c)
      for (long q = 0; q < K; ++q) {
        Mode md{amp * rng.uniform(-1.0, 1.0) / static_cast<double>(K), rng.uniform(0.0, kTwoPi), std::vector<double>(n, 0.0)};
        for (std::size_t a = 0; a < n; ++a) {
          const long w = rng.integer(-kmax, kmax);
          md.k[a] = grid.extent(a) > 1 ? static_cast<double>(w) : 0.0;
        }
        per_comp[c].push_back(std::move(md));
      }
    // exp(i k.y) factors per axis, so each point costs products instead of sines.
    std::vector<std::complex<double>> seed_phase;
    std::vector<std::vector<std::vector<std::complex<double>>>> axis(n);
    for (std::size_t c = 0; c < P; ++c)
      for (const Mode& md : per_comp[c]) seed_phase.push_back(md.amp * std::polar(1.0, md.phase));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < P; ++c)
        for (const Mode& md : per_comp[c]) {
          std::vector<std::complex<double>> row(grid.extent(a));
          for (std::size_t i = 0; i < row.size(); ++i)
            row[i] = std::polar(1.0, kTwoPi * md.k[a] * grid.spacing(a) * static_cast<double>(i) / box[a]);
          axis[a].push_back(std::move(row));
        }
    const std::size_t modes = seed_phase.size() / P;
    parallel_for(N, [&](std::size_t b, std::size_t e) {
      std::vector<std::size_t> idx(n);
      for (std::size_t x = b; x < e; ++x) {
        for (std::size_t a = 0; a < n; ++a) idx[a] = grid.index(x, a);
        for (std::size_t c = 0; c < P; ++c) {
          double v = 0.0;
          for (std::size_t q = 0; q < modes; ++q) {
            const std::size_t mq = c * modes + q;
            std::complex<double> z = seed_phase[mq];
            for (std::size_t a = 0; a < n; ++a) z *= axis[a][mq][idx[a]];
            v += z.imag();
          }
          out[x * P + c] = v;
        }
      }
    });
  } else {
    throw InputError("unknown initializer type for " + path + "type: " + type);
  }

  if (f.contains("scale")) {
    const double sc = number(f["scale"], path + "scale");
    for (double& v : out) v *= sc;
  }
  if (f.contains("symmetry")) {
    const std::string sym = f["symmetry"].get<std::string>();
    require(rank == 2 || sym == "none", "field " + path + "symmetry applies to 2-tensors only");
    require(sym == "symmetric" || sym == "antisymmetric" || sym == "none", "field " + path + "symmetry must be symmetric, antisymmetric or none");
    if (sym != "none") {
      const double sign = sym == "symmetric" ? 1.0 : -1.0;
      for (std::size_t x = 0; x < N; ++x)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j)
            for (std::size_t a = 0; a < m; ++a) {
              double& tij = out[x * P + (i * n + j) * m + a];
              double& tji = out[x * P + (j * n + i) * m + a];
              const double v = 0.5 * (tij + sign * tji);
              tij = v;
              tji = sign * v;
            }
    }
  }
  return out;
}

namespace {

template <class Field>
Field fill(const Scenario& s, const std::string& name, const GridPtr& grid, std::size_t rank, const std::string& stream) {
  Field f(grid, s.algebra()->dim());
  f.data() = s.evaluate(name, *grid, rank, stream);
  return f;
}

}  // namespace

ConnectionField Scenario::connection(const std::string& name, const GridPtr& grid) const {
  return fill<ConnectionField>(*this, name, grid, 1, name);
}

VariationField Scenario::variation(const std::string& name, const GridPtr& grid) const {
  return fill<VariationField>(*this, name, grid, 1, name);
}

GaugeParameterField Scenario::gauge_parameter(const std::string& name, const GridPtr& grid) const {
  return fill<GaugeParameterField>(*this, name, grid, 0, name);
}

TwoTensorField Scenario::two_tensor(const std::string& name, const GridPtr& grid, std::size_t sample) const {
  TwoTensorField t = fill<TwoTensorField>(*this, name, grid, 2, name + "#" + std::to_string(sample));
  if (has_field(name) && json_["fields"][name].contains("symmetry")) {
    const std::string sym = json_["fields"][name]["symmetry"].get<std::string>();
    if (sym == "symmetric") t.set_symmetry(Symmetry::symmetric);
    if (sym == "antisymmetric") t.set_symmetry(Symmetry::antisymmetric);
  }
  return t;
}

}  // namespace gvc
