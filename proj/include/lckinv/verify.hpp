#pragma once

// Sampled checks of the structural contracts: automorphy of volume forms
// (gamma^* Omega = chi(gamma) Omega), Gamma-invariance and holomorphy of
// vector fields, and consistency across chart transitions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lckinv/calculus.hpp"
#include "lckinv/geometry.hpp"

namespace lckinv {

struct VerificationReport {
  double max_residual = 0.0;
  bool pass = true;
};

struct FieldVerificationReport {
  double max_equivariance_residual = 0.0;  // |d gamma(X(p)) - X(gamma p)|
  double max_holomorphy_residual = 0.0;    // max |dX^i/dzbar^j|
  double max_transition_residual = 0.0;    // |dT(X_from(p)) - X_to(T p)|
  bool pass = true;

  double max_residual() const {
    return std::max({max_equivariance_residual, max_holomorphy_residual, max_transition_residual});
  }
};

inline constexpr int default_verification_samples = 256;
inline constexpr double default_verification_tol = 1e-8;

// Uniform samples of the fundamental-domain parameter box, mapped into its chart
// and filtered by the indicator. Deterministic for a given seed.
inline std::vector<ChartPoint> sample_fundamental_domain(const ManifoldSpec& m, int count, std::uint64_t seed = 1) {
  if (count < 1) throw std::invalid_argument("sample count must be at least 1");
  const auto& dom = m.fundamental_domain;
  std::mt19937_64 rng(seed);
  std::vector<ChartPoint> pts;
  std::vector<double> params(dom.dims());
  int attempts = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > 1000 * count) throw DomainError("fundamental domain indicator rejects almost every sample");
    for (std::size_t d = 0; d < dom.dims(); ++d) {
      std::uniform_real_distribution<double> u(dom.box[d].first, dom.box[d].second);
      params[d] = u(rng);
    }
    CVector z = dom.chart_coords(params);
    if (dom.indicator && !dom.indicator(z)) continue;
    pts.push_back({dom.chart_id, std::move(z)});
  }
  return pts;
}

inline double log_abs_det_squared(const CMatrix& J) { return 2.0 * std::log(std::abs(J.determinant())); }

// max over samples and generators of |log a(gamma p) + log|det J_gamma|^2 - log a(p) - log chi(gamma)|.
inline VerificationReport verify_automorphic(const VolumeFormSpec& vol, const ManifoldSpec& m,
                                             int samples = default_verification_samples,
                                             double tol = default_verification_tol) {
  VerificationReport rep;
  for (const auto& p : sample_fundamental_domain(m, samples)) {
    m.require_inside(p);
    const double log_a = vol.log_density_at(p);
    for (const auto& g : m.deck_group.generators) {
      if (g.chart_id != p.chart_id) continue;
      ChartPoint q{g.chart_id, g.map(p.coords)};
      m.require_inside(q);
      const double residual = vol.log_density_at(q) + log_abs_det_squared(g.jacobian(p.coords)) - log_a -
                              std::log(vol.character.on_generator(g.id));
      if (!std::isfinite(residual)) throw EvaluationError("non-finite automorphy residual");
      rep.max_residual = std::max(rep.max_residual, std::abs(residual));
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

// gamma^{-1}(gamma(p)) = p and gamma(gamma^{-1}(p)) = p.
inline VerificationReport verify_deck_group(const ManifoldSpec& m, int samples = default_verification_samples,
                                            double tol = default_verification_tol) {
  VerificationReport rep;
  for (const auto& p : sample_fundamental_domain(m, samples)) {
    for (const auto& g : m.deck_group.generators) {
      if (g.chart_id != p.chart_id) continue;
      const double scale = std::max(1.0, p.coords.cwiseAbs().maxCoeff());
      rep.max_residual = std::max(rep.max_residual, (g.inverse(g.map(p.coords)) - p.coords).norm() / scale);
      rep.max_residual = std::max(rep.max_residual, (g.map(g.inverse(p.coords)) - p.coords).norm() / scale);
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

// Residuals are relative to max(1, |X|) so linear and quadratic fields far out
// in a noncompact chart are judged at the same resolution.
inline FieldVerificationReport verify_invariant_field(const VectorFieldSpec& x, const ManifoldSpec& m,
                                                      int samples = default_verification_samples,
                                                      double tol = default_verification_tol,
                                                      const DifferentiationScheme& scheme = {}) {
  FieldVerificationReport rep;
  auto relative = [](const CVector& a, const CVector& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
  };
  for (const auto& p : sample_fundamental_domain(m, samples)) {
    m.require_inside(p);
    const auto& comps = x.components_in(p.chart_id);
    const CVector X = comps(p.coords);
    if (!X.allFinite()) throw EvaluationError("non-finite components of field '" + x.name + "'");

    for (const auto& g : m.deck_group.generators) {
      if (g.chart_id != p.chart_id) continue;
      ChartPoint q{g.chart_id, g.map(p.coords)};
      m.require_inside(q);
      rep.max_equivariance_residual =
          std::max(rep.max_equivariance_residual, relative(g.jacobian(p.coords) * X, x.at(q)));
    }

    const double h = effective_step(scheme, p.coords, &m.chart(p.chart_id), nullptr);
    const auto jac = wirtinger_jacobian(comps, p.coords, h, scheme.order);
    const double scale = std::max(1.0, jac.holo.cwiseAbs().maxCoeff());
    rep.max_holomorphy_residual = std::max(rep.max_holomorphy_residual, jac.anti.cwiseAbs().maxCoeff() / scale);

    for (const auto& t : m.transitions) {
      if (t.from != p.chart_id || (t.defined_at && !t.defined_at(p.coords))) continue;
      ChartPoint q{t.to, t.map(p.coords)};
      if (!m.chart(t.to).has(q.coords)) continue;
      rep.max_transition_residual =
          std::max(rep.max_transition_residual, relative(t.jacobian(p.coords) * X, x.at(q)));
    }
  }
  rep.pass = rep.max_residual() <= tol;
  return rep;
}

// Omega = a_from |dz|^2 = a_to |dw|^2 with w = T(z): log a_to(T z) + log|det dT|^2 = log a_from(z).
inline VerificationReport verify_chart_consistency(const VolumeFormSpec& vol, const ManifoldSpec& m,
                                                   int samples = default_verification_samples,
                                                   double tol = 1e-10) {
  VerificationReport rep;
  for (const auto& p : sample_fundamental_domain(m, samples)) {
    for (const auto& t : m.transitions) {
      if (t.from != p.chart_id || (t.defined_at && !t.defined_at(p.coords))) continue;
      ChartPoint q{t.to, t.map(p.coords)};
      if (!m.chart(t.to).has(q.coords)) continue;
      const double residual =
          vol.log_density_at(q) + log_abs_det_squared(t.jacobian(p.coords)) - vol.log_density_at(p);
      rep.max_residual = std::max(rep.max_residual, std::abs(residual));
    }
  }
  rep.pass = rep.max_residual <= tol;
  return rep;
}

}  // namespace lckinv
