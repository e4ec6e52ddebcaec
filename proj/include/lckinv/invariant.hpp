#pragma once

// Direct evaluation of the invariant
//
//   f(X) = int_M div X rho_Omega^n                 (direct)
//        = -int_M X(rho_Omega^n / Omega) Omega     (alternative)
//
// over the fundamental domain of the deck group, together with the linear
// family Omega_t = phi^t Omega_0 used to check independence of (Omega, chi).

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lckinv/calculus.hpp"
#include "lckinv/geometry.hpp"
#include "lckinv/quadrature.hpp"
#include "lckinv/verify.hpp"

namespace lckinv {

inline constexpr const char* normalization_convention =
    "rho^n = n! det(R) (i dz1^dzbar1)^...^(i dzn^dzbarn), R_ijbar = -d_i dbar_j log a, "
    "i dz^dzbar = 2 dx^dy; localization reports (1/2pi)^n (n+1) f";

enum class InvariantMethod { direct, alternative };

inline std::string to_string(InvariantMethod m) { return m == InvariantMethod::direct ? "direct" : "alternative"; }

struct InvariantResult {
  Complex value;
  double error_estimate = 0.0;  // refinement difference + truncation tail bound
  InvariantMethod method = InvariantMethod::direct;
  std::string normalization = normalization_convention;
};

namespace detail {

// (i dz ^ dzbar)^n = 2^n times Lebesgue measure on C^n.
inline double euclidean_top_form_factor(int n) { return std::ldexp(1.0, n); }

inline InvariantResult finish(const IntegrationResult& r, InvariantMethod method) {
  InvariantResult out;
  out.value = r.value;
  out.error_estimate = r.error_estimate + r.tail_bound;
  out.method = method;
  return out;
}

}  // namespace detail

inline InvariantResult invariant_direct(const ManifoldSpec& m, const VolumeFormSpec& vol, const VectorFieldSpec& x,
                                        const DifferentiationScheme& scheme, const QuadratureSpec& q) {
  const Chart& chart = m.chart(m.fundamental_domain.chart_id);
  const double factor = detail::euclidean_top_form_factor(m.dimension);
  auto integrand = [&](const ChartPoint& p) -> Complex {
    const Complex div = divergence(x, vol, p, scheme, &chart);
    if (div == Complex(0.0, 0.0)) return div;
    return factor * div * ricci_top_density(vol, p, scheme, &chart);
  };
  return detail::finish(integrate_invariant_density(m, integrand, q), InvariantMethod::direct);
}

// The ratio rho^n / Omega = n! det R / a is differentiated by the same scheme.
// Third derivatives of log a enter here, so this route is noisier.
inline InvariantResult invariant_alternative(const ManifoldSpec& m, const VolumeFormSpec& vol,
                                             const VectorFieldSpec& x, const DifferentiationScheme& scheme,
                                             const QuadratureSpec& q) {
  const Chart& chart = m.chart(m.fundamental_domain.chart_id);
  const double factor = detail::euclidean_top_form_factor(m.dimension);
  const auto& log_a = vol.log_density_in(m.fundamental_domain.chart_id);
  const std::string chart_id = m.fundamental_domain.chart_id;
  RealChartFn ratio = [&](const CVector& z) {
    ChartPoint p{chart_id, z};
    return ricci_top_density(vol, p, scheme, &chart) * std::exp(-log_a(z));
  };
  auto integrand = [&](const ChartPoint& p) -> Complex {
    const CVector X = x.at(p);
    if (X.isZero(0.0)) return Complex(0.0, 0.0);
    const CVector grad = wirtinger_gradient(ratio, p, scheme, &chart);
    Complex acc(0.0, 0.0);
    for (Eigen::Index i = 0; i < X.size(); ++i) acc += X(i) * grad(i);
    return -factor * acc * std::exp(log_a(p.coords));
  };
  return detail::finish(integrate_invariant_density(m, integrand, q), InvariantMethod::alternative);
}

// log a_t = log a_0 + t (log a_1 - log a_0), chi_t = chi_0 (chi_1 / chi_0)^t.
// Written this way so that vol1 == vol0 reproduces vol0 bit for bit.
struct DeformationFamily {
  VolumeFormSpec vol0;
  VolumeFormSpec vol1;

  VolumeFormSpec at(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("deformation parameter must lie in [0, 1]");
    VolumeFormSpec out;
    out.name = vol0.name + "->" + vol1.name + "@" + std::to_string(t);
    for (const auto& [chart, l0] : vol0.log_density) {
      auto it = vol1.log_density.find(chart);
      if (it == vol1.log_density.end()) continue;
      out.log_density[chart] = [l0 = l0, l1 = it->second, t](const CVector& z) {
        const double a = l0(z);
        return a + t * (l1(z) - a);
      };
    }
    for (const auto& [chart, r0] : vol0.exact_ricci) {
      auto it = vol1.exact_ricci.find(chart);
      if (it == vol1.exact_ricci.end()) continue;
      out.exact_ricci[chart] = [r0 = r0, r1 = it->second, t](const CVector& z) {
        const CMatrix a = r0(z);
        return CMatrix(a + t * (r1(z) - a));
      };
    }
    std::map<std::string, double> chi;
    for (const auto* vol : {&vol0, &vol1}) {
      for (const auto& [id, v] : vol->character.generator_values()) chi[id] = 0.0;
    }
    for (auto& [id, v] : chi) {
      const double c0 = vol0.character.on_generator(id);
      v = c0 * std::pow(vol1.character.on_generator(id) / c0, t);
    }
    out.character = Character(std::move(chi));
    out.description = "log-linear interpolation of '" + vol0.name + "' and '" + vol1.name + "'";
    return out;
  }
};

inline std::vector<std::pair<double, InvariantResult>> deformation_invariant_curve(
    const ManifoldSpec& m, const VolumeFormSpec& vol0, const VolumeFormSpec& vol1, const VectorFieldSpec& x,
    const std::vector<double>& t_grid, const DifferentiationScheme& scheme, const QuadratureSpec& q) {
  DeformationFamily family{vol0, vol1};
  std::vector<std::pair<double, InvariantResult>> curve;
  for (double t : t_grid) curve.emplace_back(t, invariant_direct(m, family.at(t), x, scheme, q));
  return curve;
}

struct SpreadSummary {
  double spread = 0.0;             // max |f_t - f_s|
  double max_error_estimate = 0.0;
};

inline SpreadSummary curve_spread(const std::vector<std::pair<double, InvariantResult>>& curve) {
  SpreadSummary s;
  for (const auto& [t, a] : curve) {
    s.max_error_estimate = std::max(s.max_error_estimate, a.error_estimate);
    for (const auto& [u, b] : curve) s.spread = std::max(s.spread, std::abs(a.value - b.value));
  }
  return s;
}

// max |det R| over sampled points of the fundamental domain.
inline double max_abs_ricci_determinant(const ManifoldSpec& m, const VolumeFormSpec& vol, int samples,
                                        const DifferentiationScheme& scheme, std::uint64_t seed = 7) {
  const Chart& chart = m.chart(m.fundamental_domain.chart_id);
  double worst = 0.0;
  for (const auto& p : sample_fundamental_domain(m, samples, seed)) {
    worst = std::max(worst, std::abs(ricci_matrix(vol, p, scheme, &chart).matrix.determinant()));
  }
  return worst;
}

}  // namespace lckinv
