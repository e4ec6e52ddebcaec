#pragma once

// Built-in examples addressed by name: "cp1", "hopf", "hopf-blowup".

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "lckinv/errors.hpp"
#include "lckinv/geometry.hpp"
#include "lckinv/localization.hpp"

namespace lckinv {

struct ExampleBundle {
  std::string name;
  std::optional<ManifoldSpec> manifold;  // absent for localization-only examples
  std::vector<VolumeFormSpec> volumes;
  std::vector<VectorFieldSpec> fields;
  std::optional<FixedPointData> fixed_point_data;
  std::string fixed_point_field;  // field whose zero set the data describes
  std::string notes;

  const VolumeFormSpec& volume(const std::string& id) const {
    for (const auto& v : volumes) {
      if (v.name == id) return v;
    }
    throw UnknownNameError("example '" + name + "' has no volume form '" + id + "'");
  }

  const VectorFieldSpec& field(const std::string& id) const {
    for (const auto& f : fields) {
      if (f.name == id) return f;
    }
    throw UnknownNameError("example '" + name + "' has no vector field '" + id + "'");
  }
};

namespace examples {

inline double abs2(Complex z) { return std::norm(z); }

inline CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

inline CMatrix scalar_matrix(Complex x) {
  CMatrix m(1, 1);
  m(0, 0) = x;
  return m;
}

// Fixed bump on CP^1 used for the perturbed Fubini-Study density.
inline double cp1_bump(Complex z) { return std::exp(-abs2(z - 1.0)); }

// Gamma-invariant bump on C^2 \ {0}: depends on z / |z| only.
inline double hopf_bump(const CVector& z) {
  const double r = z.norm();
  const Complex u1 = z(0) / r;
  const Complex u2 = z(1) / r;
  return 0.5 * std::exp(-abs2(u1 - 1.0) - abs2(u2));
}

// Radial cutoff of the affine chart of CP^1.
inline constexpr double cp1_cutoff = 1e4;

inline ExampleBundle make_cp1() {
  ExampleBundle b;
  b.name = "cp1";

  ManifoldSpec m;
  m.name = "cp1";
  m.dimension = 1;
  m.atlas = {Chart{"z", {}, {}}, Chart{"w", {}, {}}};
  auto nonzero = [](const CVector& z) { return z(0) != Complex(0.0, 0.0); };
  auto invert = [](const CVector& z) { return vec({1.0 / z(0)}); };
  auto invert_jac = [](const CVector& z) { return scalar_matrix(-1.0 / (z(0) * z(0))); };
  m.transitions = {ChartTransition{"z", "w", invert, invert_jac, nonzero},
                   ChartTransition{"w", "z", invert, invert_jac, nonzero}};
  m.deck_group.description = "trivial: the covering is CP^1 itself";

  IntegrationDomain dom;
  dom.chart_id = "z";
  dom.box = {{0.0, std::atan(cp1_cutoff)}, {0.0, 2.0 * std::numbers::pi}};
  dom.to_chart = [](std::span<const double> s) { return vec({std::tan(s[0]) * std::polar(1.0, s[1])}); };
  dom.measure_map = [](std::span<const double> s) {
    const double c = std::cos(s[0]);
    return std::tan(s[0]) / (c * c);
  };
  dom.periodic = {false, true};
  dom.tail_bound = 4.0 * std::numbers::pi / (1.0 + cp1_cutoff * cp1_cutoff);
  dom.description =
      "affine chart, z = tan(u) e^{i theta}, |z| <= 1e4; tail bound valid for integrands dominated by "
      "4 (1 + |z|^2)^-2";
  m.fundamental_domain = dom;
  b.manifold = m;

  auto fs_log = [](const CVector& z) { return -2.0 * std::log1p(abs2(z(0))); };
  auto fs_ricci = [](const CVector& z) {
    const double q = 1.0 + abs2(z(0));
    return scalar_matrix(2.0 / (q * q));
  };
  VolumeFormSpec fs;
  fs.name = "fs";
  fs.log_density = {{"z", fs_log}, {"w", fs_log}};
  fs.exact_ricci = {{"z", fs_ricci}, {"w", fs_ricci}};
  fs.description = "Fubini-Study density (1 + |z|^2)^-2";

  // Ricci of e^psi a: R - d dbar psi, with d dbar exp(-|z-1|^2) = exp(-|z-1|^2)(|z-1|^2 - 1).
  auto bump_ricci_z = [fs_ricci](const CVector& z) {
    const double d2 = abs2(z(0) - 1.0);
    return CMatrix(fs_ricci(z) + scalar_matrix(cp1_bump(z(0)) * (1.0 - d2)));
  };
  VolumeFormSpec fs_bump;
  fs_bump.name = "fs-bump";
  fs_bump.log_density = {
      {"z", [fs_log](const CVector& z) { return fs_log(z) + cp1_bump(z(0)); }},
      {"w", [fs_log](const CVector& w) {
         return w(0) == Complex(0.0, 0.0) ? fs_log(w) : fs_log(w) + cp1_bump(1.0 / w(0));
       }}};
  fs_bump.exact_ricci = {
      {"z", bump_ricci_z},
      {"w", [bump_ricci_z, fs_ricci](const CVector& w) {
         if (w(0) == Complex(0.0, 0.0)) return fs_ricci(w);
         const double a = abs2(w(0));
         return CMatrix(bump_ricci_z(vec({1.0 / w(0)})) / (a * a));
       }}};
  fs_bump.description = "exp(psi) (1 + |z|^2)^-2 with psi(z) = exp(-|z - 1|^2)";
  b.volumes = {fs, fs_bump};

  auto field = [](std::string name, VectorChartFn in_z, VectorChartFn in_w, std::string desc) {
    VectorFieldSpec f;
    f.name = std::move(name);
    f.components = {{"z", std::move(in_z)}, {"w", std::move(in_w)}};
    f.description = std::move(desc);
    return f;
  };
  b.fields = {
      field("z-ddz", [](const CVector& z) { return vec({z(0)}); }, [](const CVector& w) { return vec({-w(0)}); },
            "z d/dz (= -w d/dw)"),
      field("ddz", [](const CVector&) { return vec({1.0}); }, [](const CVector& w) { return vec({-w(0) * w(0)}); },
            "d/dz (= -w^2 d/dw)"),
      field("z2-ddz", [](const CVector& z) { return vec({z(0) * z(0)}); },
            [](const CVector&) { return vec({-1.0}); }, "z^2 d/dz (= -d/dw)"),
  };

  FixedPointData fp;
  fp.label = "cp1 z d/dz";
  fp.manifold_dim = 1;
  fp.components = {ZeroComponent{"z = 0", 0, Rational(1), {Rational(1)}, Rational(0), {Rational(0)}},
                   ZeroComponent{"z = infinity", 0, Rational(-1), {Rational(-1)}, Rational(0), {Rational(0)}}};
  b.fixed_point_data = fp;
  b.fixed_point_field = "z-ddz";
  b.notes =
      "Riemann sphere with the trivial covering. z d/dz has isolated zeros at 0 (linearization 1) and at "
      "infinity (linearization -1 in w = 1/z).";
  return b;
}

inline ExampleBundle make_hopf() {
  ExampleBundle b;
  b.name = "hopf";

  ManifoldSpec m;
  m.name = "hopf";
  m.dimension = 2;
  m.atlas = {Chart{"c2",
                   [](const CVector& z) { return z.norm() > 0.0; },
                   [](const CVector& z) { return z.norm(); }}};
  m.deck_group.generators = {DeckGenerator{"g", "c2", [](const CVector& z) { return CVector(2.0 * z); },
                                           [](const CVector& z) { return CVector(0.5 * z); },
                                           [](const CVector&) { return CMatrix(2.0 * CMatrix::Identity(2, 2)); }}};
  m.deck_group.description = "infinite cyclic group generated by z -> 2z";

  // z1 = sqrt(s) cos(eta) e^{i xi1}, z2 = sqrt(s) sin(eta) e^{i xi2}, 1 <= s = |z|^2 <= 2;
  // Lebesgue measure is (s / 2) sin(eta) cos(eta) ds d eta d xi1 d xi2.
  IntegrationDomain dom;
  dom.chart_id = "c2";
  dom.box = {{1.0, 2.0}, {0.0, std::numbers::pi / 2.0}, {0.0, 2.0 * std::numbers::pi}, {0.0, 2.0 * std::numbers::pi}};
  dom.to_chart = [](std::span<const double> s) {
    const double r = std::sqrt(s[0]);
    return vec({r * std::cos(s[1]) * std::polar(1.0, s[2]), r * std::sin(s[1]) * std::polar(1.0, s[3])});
  };
  dom.measure_map = [](std::span<const double> s) { return 0.5 * s[0] * std::sin(s[1]) * std::cos(s[1]); };
  dom.periodic = {false, false, true, true};
  dom.description = "shell 1 <= |z1|^2 + |z2|^2 <= 2 in Hopf coordinates";
  m.fundamental_domain = dom;
  b.manifold = m;

  auto r4_log = [](const CVector& z) { return -2.0 * std::log(z.squaredNorm()); };
  VolumeFormSpec r4;
  r4.name = "r4";
  r4.log_density = {{"c2", r4_log}};
  r4.character = Character({{"g", 1.0}});
  r4.description = "|z|^-4, invariant under z -> 2z";

  VolumeFormSpec lebesgue;
  lebesgue.name = "lebesgue";
  lebesgue.log_density = {{"c2", [](const CVector&) { return 0.0; }}};
  lebesgue.character = Character({{"g", 16.0}});
  lebesgue.description = "Lebesgue density, scaled by |det 2I|^2 = 16 under z -> 2z";

  VolumeFormSpec r4_bump;
  r4_bump.name = "r4-bump";
  r4_bump.log_density = {{"c2", [r4_log](const CVector& z) { return r4_log(z) + hopf_bump(z); }}};
  r4_bump.character = Character({{"g", 1.0}});
  r4_bump.description = "exp(psi(z/|z|)) |z|^-4 with psi(u) = exp(-|u1 - 1|^2 - |u2|^2) / 2";
  b.volumes = {r4, lebesgue, r4_bump};

  auto field = [](std::string name, VectorChartFn fn, std::string desc) {
    VectorFieldSpec f;
    f.name = std::move(name);
    f.components = {{"c2", std::move(fn)}};
    f.description = std::move(desc);
    return f;
  };
  b.fields = {
      field("x1", [](const CVector& z) { return vec({z(0), 0.0}); }, "z1 d/dz1"),
      field("x2", [](const CVector& z) { return vec({0.0, z(1)}); }, "z2 d/dz2"),
      field("radial", [](const CVector& z) { return CVector(z); }, "z1 d/dz1 + z2 d/dz2"),
  };
  b.notes = "Hopf surface (C^2 \\ {0}) / <z -> 2z> with fundamental domain 1 <= |z|^2 <= 2.";
  return b;
}

// Blow-up of the Hopf surface at (0, 3/2) with X = z1 d/dz1 lifted. Zero set:
// the isolated point (1:0) of the exceptional divisor E, where X reads
// zeta1 d/dzeta1 - zeta2 d/dzeta2 (L(X) = diag(1, -1)); and the proper
// transform Z of {z1 = 0}, an elliptic curve, with L(X) = diag(0, 1),
// c1(TZ) = 0 and normal bundle -[E] (Z.E = 1).
inline ExampleBundle make_hopf_blowup() {
  ExampleBundle b;
  b.name = "hopf-blowup";
  FixedPointData fp;
  fp.label = "blow-up of the Hopf surface at (0, 3/2), X = z1 d/dz1";
  fp.manifold_dim = 2;
  fp.components = {
      ZeroComponent{"isolated (1:0)", 0, Rational(0), {Rational(1), Rational(-1)}, Rational(0),
                    {Rational(0), Rational(0)}},
      ZeroComponent{"elliptic curve Z", 1, Rational(1), {Rational(1)}, Rational(0), {Rational(-1)}},
  };
  b.fixed_point_data = fp;
  b.fixed_point_field = "x1";
  b.notes =
      "Localization data only. Isolated zero on E with L(X) = diag(1, -1); elliptic curve Z (proper transform "
      "of z1 = 0) with tr L(X) = 1, c1(Z) = 0, normal bundle -[E].";
  return b;
}

}  // namespace examples

inline const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names{"cp1", "hopf", "hopf-blowup"};
  return names;
}

inline const ExampleBundle& registry_get(const std::string& name) {
  static const std::map<std::string, ExampleBundle> registry{
      {"cp1", examples::make_cp1()},
      {"hopf", examples::make_hopf()},
      {"hopf-blowup", examples::make_hopf_blowup()},
  };
  auto it = registry.find(name);
  if (it == registry.end()) {
    throw UnknownNameError("unknown example '" + name + "' (expected cp1, hopf or hopf-blowup)");
  }
  return it->second;
}

}  // namespace lckinv
