#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "lckinv/calculus.hpp"
#include "lckinv/quadrature.hpp"
#include "lckinv/registry.hpp"

using namespace lckinv;

namespace {

IntegrationDomain unit_square() {
  IntegrationDomain d;
  d.chart_id = "z";
  d.box = {{0.0, 1.0}, {0.0, 1.0}};
  return d;
}

IntegrationDomain annulus() {
  IntegrationDomain d;
  d.chart_id = "z";
  d.box = {{-1.5, 1.5}, {-1.5, 1.5}};
  d.indicator = [](const CVector& z) {
    const double r2 = std::norm(z(0));
    return r2 >= 1.0 && r2 <= 2.0;
  };
  return d;
}

double fs_area_density(const ChartPoint& p) {
  const double q = 1.0 + std::norm(p.coords(0));
  return 2.0 / (q * q);
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int n = 2; n <= 12; ++n) {
    const auto rule = gauss_legendre_rule(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], deg);
      const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
      EXPECT_NEAR(acc, exact, 1e-13) << "n=" << n << " deg=" << deg;
    }
  }
  EXPECT_THROW(gauss_legendre_rule(1), std::invalid_argument);
}

TEST(CompensatedSum, RecoversCancelledTerms) {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e-16);
  s.add(-1.0);
  EXPECT_DOUBLE_EQ(s.value(), 1e-16);
}

TEST(Integrate, ConstantOverUnitSquare) {
  auto r = integrate([](const ChartPoint&) { return 1.0; }, unit_square(), {4, QuadratureRule::gauss_legendre, 1, 1});
  EXPECT_NEAR(r.value.real(), 1.0, 1e-15);
  EXPECT_EQ(r.value.imag(), 0.0);
  EXPECT_LE(r.error_estimate, 1e-15);
}

TEST(Integrate, MaskedAnnulusAreaWithinErrorEstimate) {
  for (int level = 3; level <= 5; ++level) {
    auto r = integrate([](const ChartPoint&) { return 1.0; }, annulus(), {16, QuadratureRule::midpoint, level, 1});
    EXPECT_LE(std::abs(r.value.real() - std::numbers::pi), r.error_estimate) << "level " << level;
  }
}

TEST(Integrate, FubiniStudyAreaOfCP1) {
  const auto& m = *registry_get("cp1").manifold;
  auto r = integrate_invariant_density(m, fs_area_density, {16, QuadratureRule::gauss_legendre, 2, 1});
  EXPECT_NEAR(r.value.real(), 2.0 * std::numbers::pi, 1e-4);
  EXPECT_GT(r.tail_bound, 0.0);
  EXPECT_LT(r.tail_bound, 1e-6);
}

TEST(Integrate, RefinementShrinksErrorEstimate) {
  const auto& m = *registry_get("cp1").manifold;
  double previous = std::numeric_limits<double>::infinity();
  for (int level = 1; level <= 6; ++level) {
    auto r = integrate_invariant_density(m, fs_area_density, {2, QuadratureRule::gauss_legendre, level, 1});
    if (previous > 1e-10) EXPECT_LE(4.0 * r.error_estimate, previous) << "level " << level;
    previous = r.error_estimate;
  }
}

TEST(Integrate, IsLinearInTheDensity) {
  const auto& m = *registry_get("cp1").manifold;
  const QuadratureSpec q{8, QuadratureRule::gauss_legendre, 2, 1};
  auto f = [](const ChartPoint& p) { return Complex(fs_area_density(p), 0.0); };
  auto g = [](const ChartPoint& p) { return std::exp(-std::norm(p.coords(0) - 1.0)) * p.coords(0); };
  const Complex alpha(1.5, -0.25), beta(-0.75, 2.0);
  auto combo = integrate([&](const ChartPoint& p) { return alpha * f(p) + beta * g(p); }, m.fundamental_domain, q);
  auto sep = alpha * integrate(f, m.fundamental_domain, q).value + beta * integrate(g, m.fundamental_domain, q).value;
  EXPECT_LE(std::abs(combo.value - sep), 1e-12);
}

TEST(Integrate, ResultIsIndependentOfWorkerCount) {
  const auto& h = registry_get("hopf");
  const auto& vol = h.volume("r4-bump");
  auto density = [&](const ChartPoint& p) { return ricci_top_density(vol, p, {}); };
  const auto one = integrate_invariant_density(*h.manifold, density, {3, QuadratureRule::gauss_legendre, 1, 1});
  const auto three = integrate_invariant_density(*h.manifold, density, {3, QuadratureRule::gauss_legendre, 1, 3});
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.error_estimate, three.error_estimate);
  const auto again = integrate_invariant_density(*h.manifold, density, {3, QuadratureRule::gauss_legendre, 1, 3});
  EXPECT_EQ(again.value, three.value);
}

TEST(Integrate, ZeroDensityGivesExactlyZero) {
  const auto& m = *registry_get("hopf").manifold;
  auto r = integrate_invariant_density(m, [](const ChartPoint&) { return 0.0; }, {3, QuadratureRule::gauss_legendre, 1, 1});
  EXPECT_EQ(r.value, Complex(0.0, 0.0));
  EXPECT_EQ(r.error_estimate, 0.0);
}

TEST(Integrate, HopfRicciTopDensityOfConeDensityVanishes) {
  const auto& h = registry_get("hopf");
  const auto& vol = h.volume("r4");
  auto r = integrate_invariant_density(*h.manifold, [&](const ChartPoint& p) { return ricci_top_density(vol, p, {}); },
                                       {4, QuadratureRule::gauss_legendre, 1, 1});
  EXPECT_LE(std::abs(r.value), 1e-8);
}

TEST(Integrate, DropsSparseNonFiniteSamples) {
  // Singular only in a corner that holds one node per level.
  auto singular = [](const ChartPoint& p) {
    const bool corner = p.coords(0).real() < 0.01 && p.coords(0).imag() < 0.01;
    return corner ? std::numeric_limits<double>::quiet_NaN() : 1.0;
  };
  auto r = integrate(singular, unit_square(), {10, QuadratureRule::gauss_legendre, 2, 1});
  EXPECT_EQ(r.samples, 1600u);
  EXPECT_EQ(r.dropped, 1u);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-4);
}

TEST(Integrate, MostlyNonFiniteIntegrandIsIllPosed) {
  auto bad = [](const ChartPoint& p) {
    return p.coords(0).real() < 0.5 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  EXPECT_THROW(integrate(bad, unit_square(), {4, QuadratureRule::gauss_legendre, 1, 1}), IllPosedIntegrandError);
}

TEST(Integrate, RejectsDegenerateInput) {
  IntegrationDomain d = unit_square();
  d.box[0] = {1.0, 1.0};
  EXPECT_THROW(integrate([](const ChartPoint&) { return 1.0; }, d, {}), DomainError);
  EXPECT_THROW(integrate([](const ChartPoint&) { return 1.0; }, unit_square(), {4, QuadratureRule::gauss_legendre, 0, 1}),
               std::invalid_argument);
}

TEST(Integrate, WorkerExceptionsPropagate) {
  auto throwing = [](const ChartPoint& p) -> double {
    if (p.coords(0).real() > 0.9) throw EvaluationError("boom");
    return 1.0;
  };
  EXPECT_THROW(integrate(throwing, unit_square(), {4, QuadratureRule::gauss_legendre, 2, 3}), EvaluationError);
}
