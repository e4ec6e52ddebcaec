#include <gtest/gtest.h>

#include "lckinv/calculus.hpp"
#include "lckinv/fixed_point_io.hpp"
#include "lckinv/registry.hpp"
#include "lckinv/verify.hpp"

using namespace lckinv;
using examples::vec;

TEST(Registry, ListsTheThreeExamples) {
  EXPECT_EQ(registry_names(), (std::vector<std::string>{"cp1", "hopf", "hopf-blowup"}));
  for (const auto& name : registry_names()) EXPECT_EQ(registry_get(name).name, name);
}

TEST(Registry, UnknownNamesThrow) {
  EXPECT_THROW(registry_get("torus"), UnknownNameError);
  EXPECT_THROW(registry_get("cp1").volume("nope"), UnknownNameError);
  EXPECT_THROW(registry_get("hopf").field("nope"), UnknownNameError);
}

TEST(Registry, BundleShapes) {
  const auto& cp1 = registry_get("cp1");
  ASSERT_TRUE(cp1.manifold && cp1.fixed_point_data);
  EXPECT_EQ(cp1.manifold->dimension, 1);
  EXPECT_EQ(cp1.fixed_point_field, "z-ddz");
  const auto& hopf = registry_get("hopf");
  ASSERT_TRUE(hopf.manifold);
  EXPECT_FALSE(hopf.fixed_point_data);
  EXPECT_EQ(hopf.manifold->dimension, 2);
  EXPECT_EQ(hopf.volumes.size(), 3u);
  EXPECT_EQ(hopf.fields.size(), 3u);
  const auto& blow = registry_get("hopf-blowup");
  EXPECT_FALSE(blow.manifold);
  ASSERT_TRUE(blow.fixed_point_data);
  EXPECT_EQ(blow.fixed_point_data->manifold_dim, 2);
}

TEST(Registry, BlowupContributions) {
  const auto& data = *registry_get("hopf-blowup").fixed_point_data;
  const auto& iso = data.components[0];
  const auto& curve = data.components[1];
  EXPECT_EQ(component_contribution(iso, 2), Rational(0));
  const auto r = component_residue(curve, 2);
  EXPECT_EQ(r.numerator, CohomologyClass(1, {Rational(1), Rational(-3)}));
  EXPECT_EQ(r.denominator, CohomologyClass(1, {Rational(1), Rational(-1)}));
  EXPECT_EQ(r.denominator_inverse, CohomologyClass(1, {Rational(1), Rational(1)}));
  EXPECT_EQ(r.value, Rational(-2));
  EXPECT_EQ(localization_sum(data), Rational(-2));
}

TEST(Registry, CP1LocalizationVanishes) {
  const auto& data = *registry_get("cp1").fixed_point_data;
  EXPECT_EQ(component_contribution(data.components[0], 1), Rational(1));
  EXPECT_EQ(component_contribution(data.components[1], 1), Rational(-1));
  EXPECT_EQ(localization_sum(data), Rational(0));
}

TEST(Registry, AllBundlesPassVerification) {
  for (const auto& name : registry_names()) {
    const auto& b = registry_get(name);
    if (!b.manifold) continue;
    EXPECT_TRUE(verify_deck_group(*b.manifold).pass) << name;
    for (const auto& v : b.volumes) EXPECT_TRUE(verify_automorphic(v, *b.manifold).pass) << name << " " << v.name;
    for (const auto& x : b.fields) EXPECT_TRUE(verify_invariant_field(x, *b.manifold).pass) << name << " " << x.name;
  }
}

TEST(Registry, FieldsEvaluateOnEveryChart) {
  for (const auto& name : registry_names()) {
    const auto& b = registry_get(name);
    if (!b.manifold) continue;
    for (const auto& x : b.fields) {
      for (const auto& c : b.manifold->atlas) EXPECT_TRUE(x.components.count(c.id)) << name << " " << x.name;
    }
  }
}

TEST(Registry, HopfRadialFieldIsDivergenceFree) {
  const auto& b = registry_get("hopf");
  const auto pts = sample_fundamental_domain(*b.manifold, 50, 3);
  for (const auto& p : pts) {
    EXPECT_NEAR(std::abs(divergence(b.field("radial"), b.volume("r4"), p, {})), 0.0, 1e-8);
    // Lebesgue density: div(z1 d/dz1) = 1.
    EXPECT_NEAR(std::abs(divergence(b.field("x1"), b.volume("lebesgue"), p, {}) - 1.0), 0.0, 1e-8);
  }
}

TEST(Registry, ExportRoundTrip) {
  for (const auto& name : {"cp1", "hopf-blowup"}) {
    const auto& data = *registry_get(name).fixed_point_data;
    const auto j = to_json(data);
    const auto back = fixed_point_data_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(to_json(back), j);
    EXPECT_EQ(localization_sum(back), localization_sum(data));
  }
}
