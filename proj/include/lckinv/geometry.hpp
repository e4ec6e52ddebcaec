#pragma once

// Explicit compact complex manifolds M presented as M~/Gamma: a chart atlas of
// the covering M~, deck generators with explicit inverses, a character
// chi : Gamma -> R+, automorphic volume densities and holomorphic fields.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lckinv/errors.hpp"
#include "lckinv/quadrature.hpp"
#include "lckinv/types.hpp"

namespace lckinv {

using RealChartFn = std::function<double(const CVector&)>;
using VectorChartFn = std::function<CVector(const CVector&)>;
using MatrixChartFn = std::function<CMatrix(const CVector&)>;

struct Chart {
  std::string id;
  std::function<bool(const CVector&)> contains;
  // Distance from a point to the chart boundary; empty when the chart is all of C^n.
  RealChartFn boundary_distance;

  bool has(const CVector& z) const { return !contains || contains(z); }
};

struct ChartTransition {
  std::string from;
  std::string to;
  VectorChartFn map;
  MatrixChartFn jacobian;  // d(map)/dz, holomorphic
  std::function<bool(const CVector&)> defined_at;
};

// A word in the deck generators: (generator id, exponent) pairs.
using GroupWord = std::vector<std::pair<std::string, int>>;

class Character {
 public:
  Character() = default;
  explicit Character(std::map<std::string, double> generator_values) : values_(std::move(generator_values)) {
    for (const auto& [id, v] : values_) {
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("character value on '" + id + "' must be positive");
    }
  }

  // Unlisted generators act trivially.
  double on_generator(const std::string& id) const {
    auto it = values_.find(id);
    return it == values_.end() ? 1.0 : it->second;
  }

  double operator()(const GroupWord& word) const {
    double value = 1.0;
    for (const auto& [id, exponent] : word) value *= std::pow(on_generator(id), exponent);
    return value;
  }

  const std::map<std::string, double>& generator_values() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

struct DeckGenerator {
  std::string id;
  std::string chart_id;  // chart in which map and inverse are expressed
  VectorChartFn map;
  VectorChartFn inverse;
  MatrixChartFn jacobian;
};

struct DeckGroupSpec {
  std::vector<DeckGenerator> generators;
  std::string description;
};

struct VolumeFormSpec {
  std::string name;
  std::map<std::string, RealChartFn> log_density;  // chart id -> log a
  Character character;
  std::map<std::string, MatrixChartFn> exact_ricci;  // optional closed-form R_{i jbar}
  std::string description;

  double log_density_at(const ChartPoint& p) const {
    auto it = log_density.find(p.chart_id);
    if (it == log_density.end()) {
      throw DomainError("volume form '" + name + "' has no density in chart '" + p.chart_id + "'");
    }
    double v = it->second(p.coords);
    if (!std::isfinite(v)) throw EvaluationError("non-finite log-density of '" + name + "'");
    return v;
  }

  const RealChartFn& log_density_in(const std::string& chart) const {
    auto it = log_density.find(chart);
    if (it == log_density.end()) {
      throw DomainError("volume form '" + name + "' has no density in chart '" + chart + "'");
    }
    return it->second;
  }

  const MatrixChartFn* exact_ricci_in(const std::string& chart) const {
    auto it = exact_ricci.find(chart);
    return it == exact_ricci.end() ? nullptr : &it->second;
  }
};

struct VectorFieldSpec {
  std::string name;
  std::map<std::string, VectorChartFn> components;
  std::string description;

  const VectorChartFn& components_in(const std::string& chart) const {
    auto it = components.find(chart);
    if (it == components.end()) {
      throw DomainError("vector field '" + name + "' has no components in chart '" + chart + "'");
    }
    return it->second;
  }

  CVector at(const ChartPoint& p) const { return components_in(p.chart_id)(p.coords); }
};

struct ManifoldSpec {
  std::string name;
  int dimension = 0;
  std::vector<Chart> atlas;
  std::vector<ChartTransition> transitions;
  DeckGroupSpec deck_group;
  IntegrationDomain fundamental_domain;

  const Chart& chart(const std::string& id) const {
    for (const auto& c : atlas) {
      if (c.id == id) return c;
    }
    throw DomainError("manifold '" + name + "' has no chart '" + id + "'");
  }

  void require_inside(const ChartPoint& p) const {
    if (p.dim() != dimension) throw DimensionMismatchError("point dimension differs from manifold dimension");
    if (!chart(p.chart_id).has(p.coords)) throw DomainError("point lies outside chart '" + p.chart_id + "'");
  }
};

}  // namespace lckinv

namespace lckinv {

// integrate() bound to the manifold's fundamental domain.
template <class Density>
IntegrationResult integrate_invariant_density(const ManifoldSpec& m, Density&& density, const QuadratureSpec& q) {
  return integrate(std::forward<Density>(density), m.fundamental_domain, q);
}

}  // namespace lckinv
