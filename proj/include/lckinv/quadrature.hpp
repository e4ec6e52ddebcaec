#pragma once

// Deterministic tensor-product quadrature over a box of real parameters that
// is mapped into one chart. Refinement level l splits every axis into 2^l
// panels; the error estimate is the difference between the two finest levels.
//
// Reduction order is fixed: each cell is summed on its own with compensated
// summation and the cell sums are folded in cell order, so the result does not
// depend on the number of worker threads.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "lckinv/errors.hpp"
#include "lckinv/types.hpp"

namespace lckinv {

struct IntegrationDomain {
  std::string chart_id;
  std::vector<std::pair<double, double>> box;  // parameter intervals
  // Parameters -> chart coordinates. When empty the parameters are read as
  // (Re z^1, Im z^1, Re z^2, ...).
  std::function<CVector(std::span<const double>)> to_chart;
  // Lebesgue density of the substitution; empty means 1.
  std::function<double(std::span<const double>)> measure_map;
  std::function<bool(const CVector&)> indicator;
  // Bound on the part of the integral cut off by a truncated noncompact chart,
  // valid for integrands dominated by the bound declared in `description`.
  double tail_bound = 0.0;
  // Axes along which the integrand is periodic; these always use the midpoint
  // rule, which is spectrally accurate there.
  std::vector<bool> periodic;
  std::string description;

  bool is_periodic(std::size_t axis) const { return axis < periodic.size() && periodic[axis]; }

  std::size_t dims() const { return box.size(); }

  CVector chart_coords(std::span<const double> params) const {
    if (to_chart) return to_chart(params);
    CVector z(static_cast<Eigen::Index>(params.size() / 2));
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = Complex(params[2 * i], params[2 * i + 1]);
    return z;
  }
};

enum class QuadratureRule { gauss_legendre, midpoint };

struct QuadratureSpec {
  int points_per_axis = 8;
  QuadratureRule rule = QuadratureRule::gauss_legendre;
  int refinement_levels = 2;
  unsigned threads = 1;  // 0 = hardware concurrency
};

struct IntegrationResult {
  Complex value;
  double error_estimate = 0.0;
  double tail_bound = 0.0;
  std::size_t samples = 0;
  std::size_t dropped = 0;
};

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Nodes and weights on [-1, 1].
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline Rule1D gauss_legendre_rule(int n) {
  if (n < 2) throw std::invalid_argument("gauss-legendre needs at least 2 points per axis");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

inline Rule1D midpoint_rule(int n) {
  if (n < 1) throw std::invalid_argument("midpoint rule needs at least 1 point per axis");
  Rule1D r;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(-1.0 + (2.0 * i + 1.0) / n);
    r.weights.push_back(2.0 / n);
  }
  return r;
}

namespace detail {

template <class Density>
Complex evaluate_density(Density& density, const ChartPoint& p) {
  using R = std::invoke_result_t<Density&, const ChartPoint&>;
  if constexpr (std::is_convertible_v<R, double> && !std::is_same_v<std::decay_t<R>, Complex>) {
    return Complex(static_cast<double>(density(p)), 0.0);
  } else {
    return Complex(density(p));
  }
}

struct LevelSum {
  Complex value;
  std::size_t samples = 0;
  std::size_t dropped = 0;
};

template <class Density>
LevelSum integrate_level(Density& density, const IntegrationDomain& dom, const std::vector<Rule1D>& rules,
                         int level, unsigned threads) {
  const std::size_t dims = dom.dims();
  const std::size_t panels = std::size_t{1} << level;
  std::size_t cells = 1;
  for (std::size_t d = 0; d < dims; ++d) cells *= panels;
  std::size_t pts_per_cell = 1;
  for (std::size_t d = 0; d < dims; ++d) pts_per_cell *= rules[d].nodes.size();

  struct CellSum {
    double re = 0.0, im = 0.0;
    std::size_t dropped = 0;
  };
  std::vector<CellSum> cell_sums(cells);

  auto run_cells = [&](std::size_t begin, std::size_t end) {
    std::vector<double> params(dims);
    std::vector<std::size_t> panel_idx(dims), node_idx(dims);
    for (std::size_t cell = begin; cell < end; ++cell) {
      std::size_t rem = cell;
      for (std::size_t d = 0; d < dims; ++d) {
        panel_idx[d] = rem % panels;
        rem /= panels;
      }
      CompensatedSum re, im;
      std::size_t dropped = 0;
      for (std::size_t k = 0; k < pts_per_cell; ++k) {
        std::size_t r = k;
        double weight = 1.0;
        for (std::size_t d = 0; d < dims; ++d) {
          const auto& rule = rules[d];
          node_idx[d] = r % rule.nodes.size();
          r /= rule.nodes.size();
          const auto [lo, hi] = dom.box[d];
          const double width = (hi - lo) / static_cast<double>(panels);
          const double a = lo + width * static_cast<double>(panel_idx[d]);
          params[d] = a + 0.5 * width * (rule.nodes[node_idx[d]] + 1.0);
          weight *= 0.5 * width * rule.weights[node_idx[d]];
        }
        ChartPoint p{dom.chart_id, dom.chart_coords(params)};
        if (dom.indicator && !dom.indicator(p.coords)) continue;
        if (dom.measure_map) weight *= dom.measure_map(params);
        if (weight == 0.0) continue;
        Complex v = evaluate_density(density, p);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          ++dropped;
          continue;
        }
        re.add(weight * v.real());
        im.add(weight * v.imag());
      }
      cell_sums[cell] = {re.value(), im.value(), dropped};
    }
  };

  unsigned workers = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cells));
  if (workers <= 1) {
    run_cells(0, cells);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (cells + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(cells, w * chunk);
      const std::size_t end = std::min(cells, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_cells(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  CompensatedSum re, im;
  std::size_t dropped = 0;
  for (const auto& c : cell_sums) {
    re.add(c.re);
    im.add(c.im);
    dropped += c.dropped;
  }
  return {Complex(re.value(), im.value()), cells * pts_per_cell, dropped};
}

}  // namespace detail

// Integrates a real- or complex-valued pointwise density over the domain.
// Masked domains (with an indicator) always use the midpoint rule, as do
// periodic axes.
template <class Density>
IntegrationResult integrate(Density&& density, const IntegrationDomain& dom, const QuadratureSpec& q) {
  if (dom.box.empty()) throw DomainError("integration domain has an empty box");
  for (const auto& [lo, hi] : dom.box) {
    if (!(hi > lo)) throw DomainError("integration box must have positive volume");
  }
  if (q.refinement_levels < 1) throw std::invalid_argument("refinement_levels must be at least 1");
  const bool use_midpoint = q.rule == QuadratureRule::midpoint || static_cast<bool>(dom.indicator);
  std::vector<Rule1D> rules;
  for (std::size_t d = 0; d < dom.dims(); ++d) {
    rules.push_back(use_midpoint || dom.is_periodic(d) ? midpoint_rule(q.points_per_axis)
                                                       : gauss_legendre_rule(q.points_per_axis));
  }

  auto fine = detail::integrate_level(density, dom, rules, q.refinement_levels, q.threads);
  auto coarse = detail::integrate_level(density, dom, rules, q.refinement_levels - 1, q.threads);
  for (const auto* lvl : {&fine, &coarse}) {
    if (static_cast<double>(lvl->dropped) > 0.01 * static_cast<double>(lvl->samples)) {
      throw IllPosedIntegrandError("integrand is non-finite at " + std::to_string(lvl->dropped) + " of " +
                                   std::to_string(lvl->samples) + " samples");
    }
  }
  IntegrationResult out;
  out.value = fine.value;
  out.error_estimate = std::abs(fine.value - coarse.value);
  out.tail_bound = dom.tail_bound;
  out.samples = fine.samples;
  out.dropped = fine.dropped;
  return out;
}

}  // namespace lckinv
