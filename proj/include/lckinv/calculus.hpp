#pragma once

// Pointwise complex-differential operators on chart data. Derivatives are
// central differences on the real parts (x^k, y^k) of the coordinates:
//
//   d/dz    = (d/dx - i d/dy) / 2
//   d/dzbar = (d/dx + i d/dy) / 2
//
// The Ricci coefficient matrix is R_{i jbar} = -d^2 log a / dz^i dzbar^j, so
// that rho_Omega = i R_{i jbar} dz^i ^ dzbar^j and
//
//   rho_Omega^n = n! det(R) (i dz^1 ^ dzbar^1) ^ ... ^ (i dz^n ^ dzbar^n).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "lckinv/errors.hpp"
#include "lckinv/geometry.hpp"
#include "lckinv/types.hpp"

namespace lckinv {

struct DifferentiationScheme {
  double step = 1e-3;
  int order = 4;  // 2 or 4
  // Multiply the step by max(1, |p|_inf) so the stencil keeps its relative
  // resolution far out in noncompact charts.
  bool scale_with_point = true;
  // Hermitian/reality tolerance, relative to max(1, |entry|).
  double hermitian_tol = 1e-8;
};

inline void validate(const DifferentiationScheme& s) {
  if (!(s.step > 0.0)) throw std::invalid_argument("differentiation step must be positive");
  if (s.order != 2 && s.order != 4) throw std::invalid_argument("differentiation order must be 2 or 4");
}

// Step actually used at z. When the stencil would come within half its reach
// of the chart boundary it is shrunk and `reduced` is set.
inline double effective_step(const DifferentiationScheme& s, const CVector& z, const Chart* chart, bool* reduced) {
  validate(s);
  double h = s.step;
  if (s.scale_with_point) {
    double scale = 1.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) scale = std::max(scale, std::abs(z(i)));
    h *= scale;
  }
  if (reduced) *reduced = false;
  if (chart && chart->boundary_distance) {
    const double reach = (s.order == 4 ? 2.0 : 1.0) * std::sqrt(2.0) * h;
    const double dist = chart->boundary_distance(z);
    if (!(dist > 0.0)) throw DomainError("differentiation point on the chart boundary");
    if (2.0 * reach > dist) {
      h *= dist / (2.0 * reach);
      if (reduced) *reduced = true;
    }
  }
  return h;
}

namespace detail {

// Real direction k of C^n: coordinate k/2, real part for even k.
inline CVector shifted(const CVector& z, int k, double delta) {
  CVector w = z;
  if (k % 2 == 0) {
    w(k / 2) += Complex(delta, 0.0);
  } else {
    w(k / 2) += Complex(0.0, delta);
  }
  return w;
}

inline CVector shifted(const CVector& z, int k, double dk, int l, double dl) {
  return shifted(shifted(z, k, dk), l, dl);
}

inline double checked(double v) {
  if (!std::isfinite(v)) throw EvaluationError("non-finite value on differentiation stencil");
  return v;
}

inline Complex checked(Complex v) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError("non-finite value on differentiation stencil");
  }
  return v;
}

inline CVector checked(CVector v) {
  if (!v.allFinite()) throw EvaluationError("non-finite value on differentiation stencil");
  return v;
}

struct Stencil1 {
  std::array<double, 4> offsets;
  std::array<double, 4> coeffs;
  int size;
};

// First-derivative central stencils.
inline Stencil1 first_derivative_stencil(int order) {
  if (order == 2) return {{-1.0, 1.0, 0.0, 0.0}, {-0.5, 0.5, 0.0, 0.0}, 2};
  return {{-2.0, -1.0, 1.0, 2.0}, {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0}, 4};
}

// d f / d(real direction k)
template <class Fn>
auto real_partial(const Fn& f, const CVector& z, int k, double h, int order) {
  const auto st = first_derivative_stencil(order);
  using T = decltype(checked(f(z)));
  T acc = st.coeffs[0] * checked(f(shifted(z, k, st.offsets[0] * h)));
  for (int a = 1; a < st.size; ++a) acc += st.coeffs[a] * checked(f(shifted(z, k, st.offsets[a] * h)));
  return T(acc / h);
}

// d^2 f / d(real k) d(real l)
template <class Fn>
double real_second_partial(const Fn& f, const CVector& z, int k, int l, double h, int order, double f0) {
  if (k == l) {
    if (order == 2) {
      return (checked(f(shifted(z, k, h))) - 2.0 * f0 + checked(f(shifted(z, k, -h)))) / (h * h);
    }
    return (-checked(f(shifted(z, k, 2.0 * h))) + 16.0 * checked(f(shifted(z, k, h))) - 30.0 * f0 +
            16.0 * checked(f(shifted(z, k, -h))) - checked(f(shifted(z, k, -2.0 * h)))) /
           (12.0 * h * h);
  }
  const auto st = first_derivative_stencil(order);
  double acc = 0.0;
  for (int a = 0; a < st.size; ++a) {
    for (int b = 0; b < st.size; ++b) {
      acc += st.coeffs[a] * st.coeffs[b] * checked(f(shifted(z, k, st.offsets[a] * h, l, st.offsets[b] * h)));
    }
  }
  return acc / (h * h);
}

}  // namespace detail

// Wirtinger derivatives of a complex scalar function.
struct WirtingerPair {
  CVector dz;     // df/dz^i
  CVector dzbar;  // df/dzbar^i
};

template <class Fn>
WirtingerPair wirtinger(const Fn& f, const CVector& z, double h, int order) {
  const auto n = z.size();
  WirtingerPair out{CVector(n), CVector(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex fx = detail::real_partial(f, z, static_cast<int>(2 * i), h, order);
    Complex fy = detail::real_partial(f, z, static_cast<int>(2 * i + 1), h, order);
    out.dz(i) = 0.5 * (fx - Complex(0.0, 1.0) * fy);
    out.dzbar(i) = 0.5 * (fx + Complex(0.0, 1.0) * fy);
  }
  return out;
}

// df/dz^i of a real-valued chart function.
inline CVector wirtinger_gradient(const RealChartFn& fn, const ChartPoint& p, const DifferentiationScheme& scheme,
                                  const Chart* chart = nullptr) {
  const double h = effective_step(scheme, p.coords, chart, nullptr);
  const auto n = p.coords.size();
  CVector g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double fx = detail::real_partial(fn, p.coords, static_cast<int>(2 * i), h, scheme.order);
    double fy = detail::real_partial(fn, p.coords, static_cast<int>(2 * i + 1), h, scheme.order);
    g(i) = 0.5 * Complex(fx, -fy);
  }
  return g;
}

// Holomorphic and antiholomorphic Jacobians of a vector-valued chart map:
// holo(i, j) = dF^i/dz^j, anti(i, j) = dF^i/dzbar^j.
struct JacobianPair {
  CMatrix holo;
  CMatrix anti;
};

inline JacobianPair wirtinger_jacobian(const VectorChartFn& F, const CVector& z, double h, int order) {
  const auto n = z.size();
  const auto m = F(z).size();
  JacobianPair out{CMatrix(m, n), CMatrix(m, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    CVector fx = detail::real_partial([&](const CVector& w) -> CVector { return F(w); }, z, static_cast<int>(2 * j),
                                      h, order);
    CVector fy = detail::real_partial([&](const CVector& w) -> CVector { return F(w); }, z,
                                      static_cast<int>(2 * j + 1), h, order);
    out.holo.col(j) = 0.5 * (fx - Complex(0.0, 1.0) * fy);
    out.anti.col(j) = 0.5 * (fx + Complex(0.0, 1.0) * fy);
  }
  return out;
}

struct RicciEvaluation {
  CMatrix matrix;  // R_{i jbar}
  ChartPoint point;
  bool exact = false;
  bool step_reduced = false;
};

inline double hermitian_defect(const CMatrix& R) { return (R - R.adjoint()).cwiseAbs().maxCoeff(); }

inline RicciEvaluation ricci_matrix(const VolumeFormSpec& vol, const ChartPoint& p,
                                    const DifferentiationScheme& scheme, const Chart* chart = nullptr) {
  RicciEvaluation out{CMatrix(), p, false, false};
  if (const auto* exact = vol.exact_ricci_in(p.chart_id)) {
    out.matrix = (*exact)(p.coords);
    out.exact = true;
    return out;
  }
  const auto& log_a = vol.log_density_in(p.chart_id);
  const double h = effective_step(scheme, p.coords, chart, &out.step_reduced);
  const int n = p.dim();
  const int real_dim = 2 * n;
  const double f0 = detail::checked(log_a(p.coords));
  Eigen::MatrixXd H(real_dim, real_dim);
  for (int k = 0; k < real_dim; ++k) {
    for (int l = k; l < real_dim; ++l) {
      H(k, l) = detail::real_second_partial(log_a, p.coords, k, l, h, scheme.order, f0);
      H(l, k) = H(k, l);
    }
  }
  // d_i dbar_j = (H_{xi xj} + H_{yi yj} + i (H_{xi yj} - H_{yi xj})) / 4
  out.matrix = CMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = H(2 * i, 2 * j) + H(2 * i + 1, 2 * j + 1);
      const double im = H(2 * i, 2 * j + 1) - H(2 * i + 1, 2 * j);
      out.matrix(i, j) = -0.25 * Complex(re, im);
    }
  }
  return out;
}

// div X = sum_i dX^i/dz^i + sum_i X^i d(log a)/dz^i
inline Complex divergence(const VectorFieldSpec& x, const VolumeFormSpec& vol, const ChartPoint& p,
                          const DifferentiationScheme& scheme, const Chart* chart = nullptr) {
  const auto& comps = x.components_in(p.chart_id);
  const CVector X = comps(p.coords);
  bool all_zero = true;
  for (Eigen::Index i = 0; i < X.size(); ++i) all_zero = all_zero && X(i) == Complex(0.0, 0.0);
  const double h = effective_step(scheme, p.coords, chart, nullptr);
  Complex div(0.0, 0.0);
  const int n = p.dim();
  for (int i = 0; i < n; ++i) {
    auto component = [&](const CVector& w) { return Complex(comps(w)(i)); };
    Complex fx = detail::real_partial(component, p.coords, 2 * i, h, scheme.order);
    Complex fy = detail::real_partial(component, p.coords, 2 * i + 1, h, scheme.order);
    div += 0.5 * (fx - Complex(0.0, 1.0) * fy);
  }
  if (all_zero) return div;
  const CVector grad = wirtinger_gradient(vol.log_density_in(p.chart_id), p, scheme, chart);
  for (int i = 0; i < n; ++i) div += X(i) * grad(i);
  return div;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Density of rho_Omega^n against (i dz^1 ^ dzbar^1) ^ ... ^ (i dz^n ^ dzbar^n).
inline double ricci_top_density(const VolumeFormSpec& vol, const ChartPoint& p, const DifferentiationScheme& scheme,
                                const Chart* chart = nullptr) {
  const auto ric = ricci_matrix(vol, p, scheme, chart);
  const double scale = std::max(1.0, ric.matrix.cwiseAbs().maxCoeff());
  if (hermitian_defect(ric.matrix) > scheme.hermitian_tol * scale) {
    throw DifferentiationQualityError("Ricci matrix of '" + vol.name + "' is not Hermitian to tolerance");
  }
  const Complex det = ric.matrix.determinant();
  if (std::abs(det.imag()) > scheme.hermitian_tol * std::max(1.0, std::abs(det))) {
    throw DifferentiationQualityError("determinant of the Ricci matrix of '" + vol.name + "' is not real");
  }
  return factorial(p.dim()) * det.real();
}

}  // namespace lckinv
