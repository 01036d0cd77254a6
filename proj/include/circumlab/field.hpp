#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circumlab/geometry.hpp"
#include "circumlab/polynomial.hpp"

namespace circumlab {

struct Gradient {
  double x = 0, y = 0;
};

/// Second derivatives; symmetric by construction (one mixed entry).
struct Hessian {
  double xx = 0, xy = 0, yy = 0;
};

/// An analytic function on R^2 with exact first (and optionally second) derivatives.
class ScalarField {
 public:
  using ValueFn = std::function<double(Point)>;
  using GradFn = std::function<Gradient(Point)>;
  using HessFn = std::function<Hessian(Point)>;

  ScalarField(std::string name, ValueFn value, GradFn grad, std::optional<HessFn> hess = std::nullopt,
              std::optional<int> polynomial_degree = std::nullopt);

  static ScalarField from_polynomial(std::string name, const Polynomial2& p);

  const std::string& name() const { return name_; }
  double value(Point p) const { return value_(p); }
  Gradient grad(Point p) const { return grad_(p); }
  bool has_hessian() const { return hess_.has_value(); }
  /// Throws InconsistentSpec when the field carries no second derivatives.
  Hessian hess(Point p) const;
  double laplacian(Point p) const;

  /// Total degree when the field is a polynomial.
  std::optional<int> polynomial_degree() const { return degree_; }

  /// this - (c0 + cx x + cy y); keeps the Hessian and polynomial degree.
  ScalarField minus_affine(double c0, double cx, double cy, std::string name) const;
  /// x -> this(scale * x); the pullback under a pure scaling.
  ScalarField pulled_back_by_scaling(double scale) const;

 private:
  std::string name_;
  ValueFn value_;
  GradFn grad_;
  std::optional<HessFn> hess_;
  std::optional<int> degree_;
};

/// Built-in fields: one, x, y, mono(i,j) for i+j <= 4, sinsin, expsum, bubble.
std::vector<ScalarField> field_registry();

/// Looks up a registry name or builds a parameterized field:
///   affine(cx,cy,c0)         c0 + cx x + cy y
///   mono(i,j)                x^i y^j
///   poly:c00,c10,c01,c20,... graded coefficients (also poly(c00,...))
/// Throws UnknownField on a miss or malformed parameters.
ScalarField lookup_field(std::string_view name);

/// Parses the graded coefficient list after "poly:".
Polynomial2 parse_poly_coefficients(std::string_view list);

}  // namespace circumlab
