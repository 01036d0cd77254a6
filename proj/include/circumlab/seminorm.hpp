#pragma once

#include <limits>

#include "circumlab/field.hpp"
#include "circumlab/geometry.hpp"
#include "circumlab/quadrature.hpp"

namespace circumlab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default number of subdivisions per edge of the sampling grid used for p = infinity.
inline constexpr int kDefaultSupGrid = 64;

/// |.|_{m,p,K} with m in {0,1,2} and p in [1, infinity].
struct SeminormSpec {
  int order = 0;
  double p = 2.0;
};

/// For p < infinity:
///   m = 0:  (int |u|^p)^(1/p)
///   m = 1:  (int |u_x|^p + |u_y|^p)^(1/p)
///   m = 2:  (int |u_xx|^p + |u_yy|^p + 2 |u_xy|^p)^(1/p)
/// For p = infinity the maximum of the per-derivative maxima (plain max, no
/// weight on the mixed term) over a uniform barycentric grid with `sup_grid`
/// subdivisions per edge. This is a lower estimate of the essential supremum;
/// grids whose subdivision counts divide each other are nested, so refining
/// that way never decreases it.
///
/// Throws InconsistentSpec for m = 2 without a Hessian or m outside {0,1,2},
/// InvalidExponent for p < 1.
double seminorm(const ScalarField& f, SeminormSpec spec, const Triangle& tri, const QuadratureRule& rule,
                int sup_grid = kDefaultSupGrid);

/// Chooses the rule itself: the exact degree p*(deg - m) for polynomial
/// fields with even integer p, otherwise degree doubling 4, 8, 16, 30 until
/// two successive values agree to 1e-8 relative.
double seminorm(const ScalarField& f, SeminormSpec spec, const Triangle& tri, int sup_grid = kDefaultSupGrid);

/// Rule degree that integrates |D^m f|^p exactly, if one exists within the supported range.
std::optional<int> exact_rule_degree(const ScalarField& f, SeminormSpec spec);

}  // namespace circumlab
