#pragma once

#include <span>
#include <vector>

#include "circumlab/field.hpp"
#include "circumlab/geometry.hpp"
#include "circumlab/quadrature.hpp"

namespace circumlab {

/// c0 + cx x + cy y
struct AffineFunction {
  double c0 = 0, cx = 0, cy = 0;
  double operator()(Point p) const { return c0 + cx * p.x + cy * p.y; }
};

/// The affine function matching v at the three apexes of tri.
AffineFunction p1_interpolate(const Triangle& tri, const ScalarField& v);

/// v - I_h v as a field (same Hessian as v).
ScalarField interpolation_error_field(const Triangle& tri, const ScalarField& v);

struct InterpErrorReport {
  TriangleMetrics metrics;
  double p = 2;
  double err_0p = 0;    // |v - I_h v|_{0,p,K}
  double err_1p = 0;    // |v - I_h v|_{1,p,K}
  double err_full = 0;  // ||v - I_h v||_{1,p,K}
  double semi_2p = 0;   // |v|_{2,p,K}
  double ratio_1 = 0;   // err_1p / semi_2p (0 when semi_2p = 0)
  double kobayashi_bound = 0;     // C_K
  double circumradius_bound = 0;  // R_K
  /// err_1p / (R_K semi_2p): the constant the circumradius estimate would need.
  double empirical_quotient = 0;
  /// R_K <= 1, the hypothesis of the general circumradius estimate.
  bool hypothesis_ok = false;
  /// p = 2: err_1p <= C_K semi_2p + 1e-10.
  /// p != 2: err_1p <= kEmpiricalCircumradiusConstant * R_K semi_2p + 1e-10.
  bool bound_satisfied = false;
};

/// Constant applied to R_K |v|_{2,p,K} when p != 2. The existence-level
/// constant C_p has no known value; 1 is the p = 2 value from C(K) < R_K.
inline constexpr double kEmpiricalCircumradiusConstant = 1.0;
inline constexpr double kBoundTolerance = 1e-10;

InterpErrorReport error_report(const Triangle& tri, const ScalarField& v, double p, const QuadratureRule& rule);
/// Quadrature chosen per seminorm (exact for polynomials at even p, adaptive otherwise).
InterpErrorReport error_report(const Triangle& tri, const ScalarField& v, double p);

struct NeedleRow {
  double h = 0;
  InterpErrorReport report;
};

/// One row per h for the isosceles needle with base h and height h^alpha.
/// Throws InvalidFamily unless alpha > 1 and every h lies in (0, 1).
std::vector<NeedleRow> needle_study(std::span<const double> h_list, double alpha, const ScalarField& v, double p);

}  // namespace circumlab
