#pragma once

// Command implementations behind the lckinv CLI. Each returns a Report and an
// exit code (0 success/pass, 1 fail, 2 usage error); argument parsing lives in
// tools/lckinv.cpp.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "lckinv/checks.hpp"
#include "lckinv/fixed_point_io.hpp"
#include "lckinv/invariant.hpp"
#include "lckinv/localization.hpp"
#include "lckinv/registry.hpp"
#include "lckinv/report.hpp"
#include "lckinv/verify.hpp"

namespace lckinv {

// Raised for problems the user can fix on the command line.
struct UsageError : Error {
  using Error::Error;
};

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_usage = 2 };

struct CommandOutcome {
  Report report;
  int exit_code = exit_pass;
};

// Quadrature defaults per example: enough resolution to meet the acceptance
// tolerances on one core.
inline QuadratureSpec default_quadrature(const std::string& example) {
  if (example == "hopf") return {5, QuadratureRule::gauss_legendre, 2, 0};
  return {16, QuadratureRule::gauss_legendre, 3, 0};
}

struct NumericsOptions {
  std::optional<int> refine;
  std::optional<int> points;
  std::optional<unsigned> threads;
  double step = 1e-3;
  int order = 4;

  QuadratureSpec quadrature(const std::string& example) const {
    QuadratureSpec q = default_quadrature(example);
    if (refine) q.refinement_levels = *refine;
    if (points) q.points_per_axis = *points;
    if (threads) q.threads = *threads;
    return q;
  }
  DifferentiationScheme scheme() const {
    DifferentiationScheme s;
    s.step = step;
    s.order = order;
    return s;
  }
};

inline nlohmann::json numerics_json(const NumericsOptions& o, const std::string& example) {
  const auto q = o.quadrature(example);
  return {{"refine", q.refinement_levels},
          {"points_per_axis", q.points_per_axis},
          {"step", o.step},
          {"order", o.order}};
}

inline Report cmd_list(const std::string& filter = {}) {
  Report r;
  r.command = "list";
  r.inputs = {{"filter", filter}};
  nlohmann::json examples = nlohmann::json::array();
  for (const auto& name : registry_names()) {
    if (!filter.empty() && name.find(filter) == std::string::npos) continue;
    const auto& b = registry_get(name);
    nlohmann::json vols = nlohmann::json::array();
    nlohmann::json fields = nlohmann::json::array();
    for (const auto& v : b.volumes) vols.push_back(v.name);
    for (const auto& f : b.fields) fields.push_back(f.name);
    examples.push_back({{"name", b.name},
                        {"display", b.manifold ? b.name : b.name + " (localization only)"},
                        {"dimension", b.manifold ? b.manifold->dimension : b.fixed_point_data->manifold_dim},
                        {"volumes", vols},
                        {"fields", fields},
                        {"has_atlas", b.manifold.has_value()},
                        {"has_fixed_point_data", b.fixed_point_data.has_value()},
                        {"fixed_point_field", b.fixed_point_field},
                        {"notes", b.notes}});
  }
  r.details["examples"] = examples;
  return r;
}

struct InvariantOptions {
  std::string example;
  std::string volume;
  std::string field;
  std::string method = "direct";  // direct | alt | localization
  std::string fixed_point_file;
  NumericsOptions numerics;
};

inline CommandOutcome cmd_invariant(const InvariantOptions& o) {
  Report r;
  r.command = "invariant";
  r.inputs = {{"example", o.example},
              {"volume", o.volume},
              {"field", o.field},
              {"method", o.method},
              {"fixed_point_file", o.fixed_point_file}};

  if (o.method == "localization") {
    FixedPointData data;
    if (!o.fixed_point_file.empty()) {
      data = load_fixed_point_file(o.fixed_point_file);
    } else {
      if (o.example.empty()) throw UsageError("--example or --fixed-point-file is required");
      const auto& b = registry_get(o.example);
      if (!b.fixed_point_data) {
        throw UsageError("example '" + o.example + "' has no fixed-point data; use --method direct or alt");
      }
      if (!o.field.empty() && o.field != b.fixed_point_field) {
        throw UsageError("fixed-point data of '" + o.example + "' describes field '" + b.fixed_point_field +
                         "', not '" + o.field + "'");
      }
      data = *b.fixed_point_data;
    }
    const Rational exact = localization_sum(data);
    const double f = unnormalized_invariant(data);
    const int n = data.manifold_dim;
    ReportEntry normalized{"(1/2pi)^" + std::to_string(n) + " (" + std::to_string(n + 1) + ") f",
                           to_double(exact), 0.0, 0.0, "localization", to_string(exact), std::nullopt, std::nullopt};
    ReportEntry raw{"f", f, 0.0, 0.0, "localization", std::nullopt, std::nullopt, std::nullopt};
    r.results = {normalized, raw};
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : data.components) {
      comps.push_back({{"name", c.name}, {"contribution", to_string(component_contribution(c, n))}});
    }
    r.details["components"] = comps;
    r.details["label"] = data.label;
    return {r, exit_pass};
  }

  if (o.method != "direct" && o.method != "alt") {
    throw UsageError("unknown method '" + o.method + "' (expected direct, alt or localization)");
  }
  if (o.example.empty()) throw UsageError("--example is required");
  const auto& b = registry_get(o.example);
  if (!b.manifold) {
    throw UsageError("example '" + o.example + "' has no atlas for quadrature; use --method localization");
  }
  if (o.volume.empty() || o.field.empty()) throw UsageError("--volume and --field are required");
  const auto& vol = b.volume(o.volume);
  const auto& x = b.field(o.field);
  r.inputs["numerics"] = numerics_json(o.numerics, o.example);
  const auto q = o.numerics.quadrature(o.example);
  const auto scheme = o.numerics.scheme();
  const auto res = o.method == "direct" ? invariant_direct(*b.manifold, vol, x, scheme, q)
                                        : invariant_alternative(*b.manifold, vol, x, scheme, q);
  r.results = {entry_from("f", res)};
  return {r, exit_pass};
}

struct CheckOptions {
  std::string example;
  std::string suite;
  int samples = default_verification_samples;
  double tol = tolerance::automorphy;
  NumericsOptions numerics;
};

namespace detail {

inline ReportEntry check_entry(std::string label, double value, double tol, std::string method) {
  return {std::move(label), value, 0.0, 0.0, std::move(method), std::nullopt, tol, value <= tol};
}

inline bool all_pass(const Report& r) {
  for (const auto& e : r.results) {
    if (e.pass && !*e.pass) return false;
  }
  return true;
}

}  // namespace detail

inline CommandOutcome cmd_check(const CheckOptions& o) {
  Report r;
  r.command = "check";
  r.inputs = {{"example", o.example}, {"suite", o.suite}, {"samples", o.samples}, {"tol", o.tol}};
  const auto& b = registry_get(o.example);
  if (!b.manifold) {
    throw UsageError("suite '" + o.suite + "' needs an atlas; example '" + o.example + "' is localization only");
  }
  const ManifoldSpec& m = *b.manifold;
  const auto q = o.numerics.quadrature(o.example);
  const auto scheme = o.numerics.scheme();

  if (o.suite == "automorphy") {
    r.results.push_back(detail::check_entry("deck group inverses", verify_deck_group(m, o.samples).max_residual,
                                            o.tol, "sampled"));
    for (const auto& v : b.volumes) {
      r.results.push_back(detail::check_entry("automorphy " + v.name,
                                              verify_automorphic(v, m, o.samples, o.tol).max_residual, o.tol,
                                              "sampled"));
      if (!m.transitions.empty()) {
        r.results.push_back(detail::check_entry("chart consistency " + v.name,
                                                verify_chart_consistency(v, m, o.samples).max_residual,
                                                tolerance::chart_consistency, "sampled"));
      }
    }
    for (const auto& x : b.fields) {
      const auto rep = verify_invariant_field(x, m, o.samples, o.tol, scheme);
      r.results.push_back(detail::check_entry("field " + x.name, rep.max_residual(), o.tol, "sampled"));
    }
  } else if (o.suite == "invariance") {
    r.inputs["numerics"] = numerics_json(o.numerics, o.example);
    for (const auto& x : b.fields) {
      std::vector<InvariantResult> values;
      for (const auto& v : b.volumes) {
        values.push_back(invariant_direct(m, v, x, scheme, q));
        r.results.push_back(entry_from("f[" + x.name + ", " + v.name + "]", values.back()));
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
          const double tol = 2.0 * (values[i].error_estimate + values[j].error_estimate);
          r.results.push_back(detail::check_entry(
              "|f[" + b.volumes[i].name + "] - f[" + b.volumes[j].name + "]| for " + x.name,
              std::abs(values[i].value - values[j].value), tol, "comparison"));
        }
      }
    }
  } else if (o.suite == "deformation") {
    r.inputs["numerics"] = numerics_json(o.numerics, o.example);
    const bool cp1 = o.example == "cp1";
    const auto& vol0 = b.volume(cp1 ? "fs" : "r4");
    const auto& vol1 = b.volume(cp1 ? "fs-bump" : "lebesgue");
    const auto& x = b.field(cp1 ? "z-ddz" : "x1");
    const std::vector<double> grid = cp1 ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}
                                         : std::vector<double>{0.0, 1.0};
    const auto curve = deformation_invariant_curve(m, vol0, vol1, x, grid, scheme, q);
    for (const auto& [t, res] : curve) r.results.push_back(entry_from("f_t, t = " + std::to_string(t), res));
    const auto s = curve_spread(curve);
    const double tol = cp1 ? 2.0 * s.max_error_estimate : tolerance::hopf_choice_independence;
    r.results.push_back(detail::check_entry("spread max|f_t - f_s|", s.spread, tol, "comparison"));
  } else if (o.suite == "vaisman") {
    if (o.example != "hopf") throw UsageError("suite 'vaisman' applies to the hopf example only");
    r.inputs["numerics"] = numerics_json(o.numerics, o.example);
    r.results.push_back(detail::check_entry("max |det R| (r4)",
                                            max_abs_ricci_determinant(m, b.volume("r4"), vaisman_samples, scheme),
                                            tolerance::vaisman_det, "sampled"));
    for (const auto* vname : {"r4", "r4-bump"}) {
      const double tol =
          std::string(vname) == "r4" ? tolerance::vaisman_invariant : tolerance::vaisman_perturbed_invariant;
      for (const auto& x : b.fields) {
        const auto res = invariant_direct(m, b.volume(vname), x, scheme, q);
        auto e = entry_from("f[" + x.name + ", " + vname + "]", res);
        e.tolerance = tol;
        e.pass = std::abs(res.value) <= tol;
        r.results.push_back(e);
      }
    }
  } else if (o.suite == "convergence") {
    if (o.example != "cp1") throw UsageError("suite 'convergence' needs closed-form Ricci data (cp1 only)");
    const auto pts = disk_samples("z", ricci_samples, 2.0);
    for (const auto& v : b.volumes) {
      if (v.exact_ricci.empty()) continue;
      DifferentiationScheme s = scheme;
      r.results.push_back(detail::check_entry("max Ricci error " + v.name + " (h = " + std::to_string(s.step) + ")",
                                              ricci_max_error(v, pts, s), tolerance::ricci_exact_match,
                                              "finite-difference"));
      s.step = convergence_base_step;
      const double order = observed_ricci_order(v, pts, s);
      r.results.push_back({"observed order " + v.name, order, 0.0, 0.0, "richardson", std::nullopt,
                           tolerance::min_convergence_order, order >= tolerance::min_convergence_order});
    }
  } else {
    throw UsageError("unknown suite '" + o.suite +
                     "' (expected automorphy, invariance, deformation, vaisman or convergence)");
  }
  r.pass = detail::all_pass(r);
  return {r, *r.pass ? exit_pass : exit_fail};
}

inline nlohmann::json cmd_export(const std::string& example) {
  const auto& b = registry_get(example);
  if (!b.fixed_point_data) throw UsageError("example '" + example + "' has no fixed-point data");
  return to_json(*b.fixed_point_data);
}

}  // namespace lckinv
