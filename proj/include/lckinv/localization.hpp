#pragma once

// Exact evaluation of the residue (localization) formula for the invariant
//
//   (1/2pi)^n (n+1) f(X) = sum_lambda  int_{Z_lambda} (div X + c1(M))^{n+1} / det(L^nu(X) + (i/2pi) K)
//
// from declarative fixed-point data. Each zero component Z carries a
// truncated cohomology ring Q[t]/(t^{d+1}) where t is the positive generator
// of H^{2d}(Z) normalised so that int_Z t^d = 1.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "lckinv/errors.hpp"
#include "lckinv/rational.hpp"

namespace lckinv {

// c_0 + c_1 t + ... + c_d t^d in Q[t]/(t^{d+1}).
class CohomologyClass {
 public:
  explicit CohomologyClass(int dim, std::vector<Rational> coeffs = {}) : coeffs_(std::move(coeffs)) {
    if (dim < 0) throw DimensionMismatchError("cohomology class of negative dimension");
    coeffs_.resize(static_cast<std::size_t>(dim) + 1);
  }

  static CohomologyClass constant(int dim, const Rational& c) { return CohomologyClass(dim, {c}); }
  static CohomologyClass one(int dim) { return constant(dim, Rational(1)); }

  int dim() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  // Pairing against the fundamental class: coefficient of t^d.
  const Rational& top() const { return coeffs_.back(); }

  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;

 private:
  std::vector<Rational> coeffs_;
};

inline void require_same_dim(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("cohomology classes live on components of dimension " + std::to_string(a.dim()) +
                                 " and " + std::to_string(b.dim()));
  }
}

inline CohomologyClass class_add(const CohomologyClass& a, const CohomologyClass& b) {
  require_same_dim(a, b);
  std::vector<Rational> c(a.coeffs());
  for (int k = 0; k <= a.dim(); ++k) c[k] += b[k];
  return CohomologyClass(a.dim(), std::move(c));
}

// Truncated product; all degrees above dim() are dropped.
inline CohomologyClass class_mul(const CohomologyClass& a, const CohomologyClass& b) {
  require_same_dim(a, b);
  const int d = a.dim();
  std::vector<Rational> c(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= d; ++j) c[i + j] += a[i] * b[j];
  }
  return CohomologyClass(d, std::move(c));
}

inline CohomologyClass class_pow(const CohomologyClass& a, unsigned e) {
  CohomologyClass result = CohomologyClass::one(a.dim());
  CohomologyClass base = a;
  while (e != 0) {
    if (e & 1U) result = class_mul(result, base);
    e >>= 1U;
    if (e != 0) base = class_mul(base, base);
  }
  return result;
}

// Inverse in the truncated ring, b_k = -(1/c_0) sum_{j=1..k} c_j b_{k-j}.
inline CohomologyClass class_inverse(const CohomologyClass& a) {
  if (a[0] == 0) {
    throw NonInvertibleError("cohomology class with zero constant term is not invertible (degenerate linearization)");
  }
  const int d = a.dim();
  std::vector<Rational> b(static_cast<std::size_t>(d) + 1);
  b[0] = Rational(1) / a[0];
  for (int k = 1; k <= d; ++k) {
    Rational acc = 0;
    for (int j = 1; j <= k; ++j) acc += a[j] * b[k - j];
    b[k] = -acc * b[0];
  }
  return CohomologyClass(d, std::move(b));
}

// One connected component Z of zero(X).
struct ZeroComponent {
  std::string name;
  int dim = 0;
  Rational trace_L;                          // tr L(X) on Z (constant)
  std::vector<Rational> normal_weights;      // eigenvalues of L^nu(X)
  Rational c1_tangent_deg;                   // int_Z c1(TZ), t-units
  std::vector<Rational> normal_line_degrees; // int_Z c1(line_j), t-units
};

struct FixedPointData {
  int manifold_dim = 0;
  std::vector<ZeroComponent> components;
  std::string label;
};

inline void validate(const ZeroComponent& c, int n) {
  const std::string where = "zero component '" + c.name + "': ";
  if (c.dim < 0 || c.dim > n) throw DimensionMismatchError(where + "dimension out of range");
  if (c.dim >= 2) {
    throw DimensionMismatchError(where + "components of complex dimension >= 2 are not supported");
  }
  const auto codim = static_cast<std::size_t>(n - c.dim);
  if (c.normal_weights.size() != codim || c.normal_line_degrees.size() != codim) {
    throw DimensionMismatchError(where + "expected " + std::to_string(codim) +
                                 " normal weights and normal line degrees");
  }
  for (const auto& w : c.normal_weights) {
    if (w == 0) {
      throw NonsingularityError(where + "zero normal weight; the localization formula requires L^nu(X) "
                                "to be nonsingular on every zero component");
    }
  }
  if (c.dim == 0) {
    bool degrees_vanish = c.c1_tangent_deg == 0;
    for (const auto& deg : c.normal_line_degrees) degrees_vanish = degrees_vanish && deg == 0;
    if (!degrees_vanish) throw DimensionMismatchError(where + "isolated zeros carry no Chern degrees");
  }
}

inline void validate(const FixedPointData& data) {
  if (data.manifold_dim < 1) throw DimensionMismatchError("fixed-point data needs manifold_dim >= 1");
  if (data.components.empty()) throw DimensionMismatchError("fixed-point data has no zero components");
  for (const auto& c : data.components) validate(c, data.manifold_dim);
}

// Intermediate classes of one residue term, kept for inspection and reports.
struct ComponentResidue {
  CohomologyClass numerator;          // (tr L + c1(M)|_Z)^{n+1}
  CohomologyClass denominator;        // prod_j (w_j + c1(line_j))
  CohomologyClass denominator_inverse;
  Rational value;                     // int_Z numerator * denominator^{-1}
};

inline ComponentResidue component_residue(const ZeroComponent& c, int n) {
  validate(c, n);
  const int d = c.dim;
  Rational c1_restricted = c.c1_tangent_deg;
  for (const auto& deg : c.normal_line_degrees) c1_restricted += deg;

  auto equivariant_c1 = (d == 0) ? CohomologyClass::constant(0, c.trace_L)
                                 : CohomologyClass(1, {c.trace_L, c1_restricted});
  auto numerator = class_pow(equivariant_c1, static_cast<unsigned>(n + 1));

  auto denominator = CohomologyClass::one(d);
  for (std::size_t j = 0; j < c.normal_weights.size(); ++j) {
    auto factor = (d == 0) ? CohomologyClass::constant(0, c.normal_weights[j])
                           : CohomologyClass(1, {c.normal_weights[j], c.normal_line_degrees[j]});
    denominator = class_mul(denominator, factor);
  }
  auto inverse = class_inverse(denominator);
  Rational value = class_mul(numerator, inverse).top();
  return {std::move(numerator), std::move(denominator), std::move(inverse), std::move(value)};
}

inline Rational component_contribution(const ZeroComponent& c, int n) { return component_residue(c, n).value; }

// Equals (1/2pi)^n (n+1) f(X).
inline Rational localization_sum(const FixedPointData& data) {
  validate(data);
  Rational total = 0;
  for (const auto& c : data.components) total += component_contribution(c, data.manifold_dim);
  return total;
}

// f(X) itself: localization_sum * (2pi)^n / (n+1), rounded once to double.
inline double unnormalized_invariant(const FixedPointData& data) {
  const int n = data.manifold_dim;
  const double scale = std::pow(2.0 * std::numbers::pi, n) / static_cast<double>(n + 1);
  return to_double(localization_sum(data)) * scale;
}

// X -> cX: weights and traces scale by c, Chern degrees are untouched.
inline FixedPointData scale_field(FixedPointData data, const Rational& c) {
  for (auto& comp : data.components) {
    comp.trace_L *= c;
    for (auto& w : comp.normal_weights) w *= c;
  }
  return data;
}

}  // namespace lckinv
