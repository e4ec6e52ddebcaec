#pragma once

// Property checks shared by the CLI `check` suites and the test programs.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "lckinv/calculus.hpp"
#include "lckinv/invariant.hpp"

namespace lckinv {

// Acceptance thresholds, also the CLI defaults.
namespace tolerance {
inline constexpr double automorphy = 1e-8;
inline constexpr double chart_consistency = 1e-10;
inline constexpr double cross_method_direct = 1e-6;
inline constexpr double method_agreement = 1e-4;
inline constexpr double vaisman_det = 1e-8;
inline constexpr double vaisman_invariant = 1e-6;
inline constexpr double vaisman_perturbed_invariant = 1e-5;
inline constexpr double hopf_choice_independence = 1e-6;
inline constexpr double ricci_exact_match = 1e-7;
inline constexpr double min_convergence_order = 3.5;
}  // namespace tolerance

inline constexpr int vaisman_samples = 10000;
inline constexpr int ricci_samples = 100;
inline constexpr double convergence_base_step = 0.1;

// Uniform samples of the disk |z| <= radius in a one-dimensional chart.
inline std::vector<ChartPoint> disk_samples(const std::string& chart, int count, double radius,
                                            std::uint64_t seed = 11) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ChartPoint> pts;
  for (int k = 0; k < count; ++k) {
    const double r = radius * std::sqrt(u(rng));
    const double theta = 2.0 * std::numbers::pi * u(rng);
    CVector z(1);
    z(0) = std::polar(r, theta);
    pts.push_back({chart, z});
  }
  return pts;
}

inline VolumeFormSpec without_exact_ricci(VolumeFormSpec vol) {
  vol.exact_ricci.clear();
  return vol;
}

// max over points of the largest entry error of the finite-difference Ricci
// matrix against the closed form.
inline double ricci_max_error(const VolumeFormSpec& vol, const std::vector<ChartPoint>& pts,
                              const DifferentiationScheme& scheme) {
  const VolumeFormSpec numeric = without_exact_ricci(vol);
  double worst = 0.0;
  for (const auto& p : pts) {
    const CMatrix exact = ricci_matrix(vol, p, scheme).matrix;
    const CMatrix approx = ricci_matrix(numeric, p, scheme).matrix;
    worst = std::max(worst, (exact - approx).cwiseAbs().maxCoeff());
  }
  return worst;
}

// log2 of the error ratio under one halving of the step.
inline double observed_ricci_order(const VolumeFormSpec& vol, const std::vector<ChartPoint>& pts,
                                   DifferentiationScheme scheme) {
  const double coarse = ricci_max_error(vol, pts, scheme);
  scheme.step *= 0.5;
  const double fine = ricci_max_error(vol, pts, scheme);
  return std::log2(coarse / fine);
}

}  // namespace lckinv
