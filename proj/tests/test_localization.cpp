#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "lckinv/fixed_point_io.hpp"
#include "lckinv/localization.hpp"

using namespace lckinv;

namespace {

Rational q(long long p, long long d = 1) { return make_rational(p, d); }

CohomologyClass cls(int dim, std::vector<Rational> c) { return CohomologyClass(dim, std::move(c)); }

ZeroComponent isolated(std::string name, Rational trace, std::vector<Rational> weights) {
  std::vector<Rational> zeros(weights.size(), Rational(0));
  return {std::move(name), 0, std::move(trace), std::move(weights), Rational(0), std::move(zeros)};
}

FixedPointData blowup_data() {
  return {2,
          {isolated("point", q(0), {q(1), q(-1)}),
           ZeroComponent{"curve", 1, q(1), {q(1)}, q(0), {q(-1)}}},
          "blow-up"};
}

FixedPointData cp1_data() {
  return {1, {isolated("0", q(1), {q(1)}), isolated("inf", q(-1), {q(-1)})}, "cp1"};
}

// Random class with small rational coefficients.
CohomologyClass random_class(std::mt19937_64& rng, int dim, bool invertible) {
  std::uniform_int_distribution<long long> num(-9, 9), den(1, 7);
  std::vector<Rational> c;
  for (int k = 0; k <= dim; ++k) {
    Rational v = q(num(rng), den(rng));
    if (k == 0 && invertible && v == 0) v = q(1, den(rng));
    c.push_back(v);
  }
  return cls(dim, c);
}

}  // namespace

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(parse_rational("3"), q(3));
  EXPECT_EQ(parse_rational("-6/4"), q(-3, 2));
  EXPECT_EQ(parse_rational(" +1/3 "), q(1, 3));
  EXPECT_EQ(to_string(q(-6, 4)), "-3/2");
  EXPECT_EQ(to_string(q(-2)), "-2");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x/2"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(ClassMul, TruncatesAboveComponentDimension) {
  EXPECT_EQ(class_mul(cls(1, {q(1), q(-1)}), cls(1, {q(1), q(1)})), CohomologyClass::one(1));
  EXPECT_EQ(class_pow(cls(1, {q(1), q(-1)}), 3), cls(1, {q(1), q(-3)}));
  EXPECT_EQ(class_mul(cls(1, {q(1), q(2)}), cls(1, {q(3)})), cls(1, {q(3), q(6)}));
}

TEST(ClassMul, RejectsDimensionMismatch) {
  EXPECT_THROW(class_mul(CohomologyClass::one(0), CohomologyClass::one(1)), DimensionMismatchError);
}

TEST(ClassInverse, Examples) {
  EXPECT_EQ(class_inverse(cls(1, {q(1), q(-1)})), cls(1, {q(1), q(1)}));
  EXPECT_EQ(class_inverse(CohomologyClass::one(0)), CohomologyClass::one(0));
  const auto inv = class_inverse(cls(1, {q(2), q(4)}));
  EXPECT_EQ(inv, cls(1, {q(1, 2), q(-1)}));
  // Oracle: the product must be the unit of the truncated ring.
  EXPECT_EQ(class_mul(cls(1, {q(2), q(4)}), inv), CohomologyClass::one(1));
}

TEST(ClassInverse, ZeroConstantTermIsNotInvertible) {
  EXPECT_THROW(class_inverse(cls(1, {q(0), q(1)})), NonInvertibleError);
}

TEST(ClassRing, RandomizedRingLaws) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = trial % 5;
    auto a = random_class(rng, d, true);
    auto b = random_class(rng, d, false);
    auto c = random_class(rng, d, false);
    EXPECT_EQ(class_mul(a, b), class_mul(b, a));
    EXPECT_EQ(class_mul(class_mul(a, b), c), class_mul(a, class_mul(b, c)));
    EXPECT_EQ(class_mul(a, class_add(b, c)), class_add(class_mul(a, b), class_mul(a, c)));
    EXPECT_EQ(class_mul(a, class_inverse(a)), CohomologyClass::one(d));
  }
}

TEST(ComponentContribution, Examples) {
  EXPECT_EQ(component_contribution(isolated("p", q(0), {q(1), q(-1)}), 2), q(0));
  EXPECT_EQ(component_contribution(ZeroComponent{"Z", 1, q(1), {q(1)}, q(0), {q(-1)}}, 2), q(-2));
  EXPECT_EQ(component_contribution(isolated("0", q(1), {q(1)}), 1), q(1));
}

TEST(ComponentContribution, CurveIntermediateClasses) {
  const auto res = component_residue(ZeroComponent{"Z", 1, q(1), {q(1)}, q(0), {q(-1)}}, 2);
  EXPECT_EQ(res.numerator, cls(1, {q(1), q(-3)}));
  EXPECT_EQ(res.denominator, cls(1, {q(1), q(-1)}));
  EXPECT_EQ(res.denominator_inverse, cls(1, {q(1), q(1)}));
  EXPECT_EQ(res.value, q(-2));
}

TEST(ComponentContribution, RejectsSingularOrUnsupportedData) {
  EXPECT_THROW(component_contribution(isolated("p", q(1), {q(1), q(0)}), 2), NonsingularityError);
  EXPECT_THROW(component_contribution(ZeroComponent{"S", 2, q(1), {}, q(0), {}}, 2), DimensionMismatchError);
  EXPECT_THROW(component_contribution(isolated("p", q(1), {q(1)}), 2), DimensionMismatchError);
  EXPECT_THROW(component_contribution(ZeroComponent{"p", 0, q(1), {q(1)}, q(1), {q(0)}}, 1), DimensionMismatchError);
}

TEST(LocalizationSum, Examples) {
  EXPECT_EQ(localization_sum(blowup_data()), q(-2));
  EXPECT_EQ(localization_sum(cp1_data()), q(0));
  EXPECT_EQ(localization_sum(FixedPointData{2, {isolated("p", q(0), {q(1), q(1)})}, "zero"}), q(0));
  EXPECT_THROW(localization_sum(FixedPointData{2, {}, "empty"}), DimensionMismatchError);
}

TEST(UnnormalizedInvariant, Examples) {
  EXPECT_EQ(unnormalized_invariant(cp1_data()), 0.0);
  EXPECT_NEAR(unnormalized_invariant(blowup_data()), -2.0 * 4.0 * std::numbers::pi * std::numbers::pi / 3.0, 1e-12);
  EXPECT_NEAR(unnormalized_invariant(blowup_data()), -26.3189450696, 1e-9);
  EXPECT_EQ(unnormalized_invariant(FixedPointData{2, {isolated("p", q(0), {q(2), q(3)})}, "zero"}), 0.0);
}

// Scaling X scales every weight and trace; the residue sum is homogeneous of
// degree one, like f itself.
TEST(LocalizationSum, LinearInTheVectorField) {
  for (const auto& data : {blowup_data(), cp1_data()}) {
    for (const auto& c : {q(2), q(-1), q(1, 3), q(-7, 5)}) {
      EXPECT_EQ(localization_sum(scale_field(data, c)), c * localization_sum(data));
    }
  }
}

TEST(FixedPointJson, ParsesStringsAndIntegers) {
  auto j = nlohmann::json::parse(R"({"label": "b", "manifold_dim": 2, "components": [
      {"name": "p", "dim": 0, "trace_L": 0, "normal_weights": ["1", -1], "c1_tangent_deg": "0",
       "normal_line_degrees": [0, "0"]},
      {"name": "Z", "dim": 1, "trace_L": "1", "normal_weights": ["1/1"], "c1_tangent_deg": 0,
       "normal_line_degrees": ["-1"]}]})");
  const auto data = fixed_point_data_from_json(j);
  EXPECT_EQ(localization_sum(data), q(-2));
  EXPECT_EQ(localization_sum(fixed_point_data_from_json(to_json(data))), q(-2));
  EXPECT_EQ(to_json(fixed_point_data_from_json(to_json(data))), to_json(data));
}

TEST(FixedPointJson, RejectsZeroWeightsCitingNonsingularity) {
  auto j = nlohmann::json::parse(R"({"label": "bad", "manifold_dim": 1, "components": [
      {"name": "p", "dim": 0, "trace_L": "1", "normal_weights": ["0/3"], "c1_tangent_deg": "0",
       "normal_line_degrees": ["0"]}]})");
  try {
    fixed_point_data_from_json(j);
    FAIL() << "zero weight accepted";
  } catch (const NonsingularityError& e) {
    EXPECT_NE(std::string(e.what()).find("nonsingular"), std::string::npos);
  }
}

TEST(FixedPointJson, RejectsMalformedInput) {
  EXPECT_THROW(fixed_point_data_from_json(nlohmann::json::parse(R"({"components": []})")), ParseError);
  EXPECT_THROW(fixed_point_data_from_json(nlohmann::json::parse(
                   R"({"manifold_dim": 1, "components": [{"dim": 0, "trace_L": 1.5,
                       "normal_weights": [1], "normal_line_degrees": [0]}]})")),
               ParseError);
  EXPECT_THROW(load_fixed_point_file("/nonexistent/fp.json"), ParseError);
}
