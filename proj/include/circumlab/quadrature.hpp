#pragma once

#include <array>
#include <vector>

#include "circumlab/geometry.hpp"

namespace circumlab {

inline constexpr int kMinRuleDegree = 1;
inline constexpr int kMaxRuleDegree = 30;

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

struct MappedPoint {
  Point x;
  double w;
};

/// Quadrature on the reference triangle (0,0), (1,0), (0,1).
/// Points are barycentric (l1, l2, l3) with respect to those apexes; the
/// weights are positive and sum to the reference area 1/2.
class QuadratureRule {
 public:
  const std::vector<std::array<double, 3>>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  int exactness_degree() const { return degree_; }
  std::size_t size() const { return weights_.size(); }

  /// Points and weights transported to `tri`; weights sum to its area.
  std::vector<MappedPoint> map_to(const Triangle& tri) const;

  friend QuadratureRule make_rule(int degree);

 private:
  std::vector<std::array<double, 3>> points_;
  std::vector<double> weights_;
  int degree_ = 0;
};

/// Collapsed-tensor Gauss-Legendre rule exact for total degree <= `degree`.
/// Throws UnsupportedDegree outside [1, 30].
QuadratureRule make_rule(int degree);

/// Reference rules are immutable; this returns a shared instance per degree.
const QuadratureRule& cached_rule(int degree);

}  // namespace circumlab
