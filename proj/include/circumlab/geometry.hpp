#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace circumlab {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Relative floor below which a triangle counts as degenerate: S < kDegeneracyFloor * h_K^2.
inline constexpr double kDegeneracyFloor = 1e-14;

/// A non-degenerate triangle with counterclockwise vertex order.
///
/// Vertices given clockwise are reordered by swapping the second and third
/// vertex, so a counterclockwise input keeps its order and the first vertex
/// is always preserved.
class Triangle {
 public:
  /// The reference triangle (0,0), (1,0), (0,1).
  Triangle() : Triangle({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}) {}
  /// Throws DegenerateTriangle if the area is below the relative floor.
  Triangle(Point p1, Point p2, Point p3);

  Point operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  const std::array<Point, 3>& vertices() const { return v_; }
  double area() const;
  Point centroid() const;

  /// The image under x -> scale * x.
  Triangle scaled(double scale) const;

 private:
  std::array<Point, 3> v_;
};

/// Derived per-triangle quantities. Edge i is opposite vertex i.
struct TriangleMetrics {
  double A = 0, B = 0, C = 0;  // |p2p3|, |p3p1|, |p1p2|
  double S = 0;                // area
  double h_K = 0;              // diameter (longest edge)
  double rho_K = 0;            // inradius
  double R_K = 0;              // circumradius
  std::array<double, 3> angles{};  // interior angle at each vertex
  double theta_min = 0;
  double theta_max = 0;
  double C_K = 0;              // Kobayashi's constant
};

/// Evaluated in long double and rounded at the end; C(K) is a difference of
/// nearly equal terms for flat triangles.
TriangleMetrics metrics(const Triangle& tri);

struct ConditionFlags {
  bool min_angle_ok = false;
  bool max_angle_ok = false;
  bool regular_ok = false;
};

/// Minimum angle (theta >= theta0), maximum angle (theta <= theta1) and
/// regularity (h_K / rho_K <= sigma) predicates. sigma may be +infinity.
/// Requires 0 < theta0 < pi/3 <= theta1 < pi and sigma > 0, else InvalidThreshold.
ConditionFlags condition_flags(const TriangleMetrics& m, double theta0, double theta1, double sigma);

/// Similarity decomposition onto the apexes (-1,0), (1,0), (s, eta*t).
///
/// The longest edge becomes the baseline, so eta lies in (0, sqrt(3)].
/// `ratio` is half the length of that edge: every length of the input is
/// `ratio` times the corresponding length of the canonical triangle.
struct CanonicalForm {
  double s = 0, t = 1;
  double eta = 1;
  double a = 0, b = 0;
  double X = 0, Y = 0;
  double ratio = 1;
  int apex = 0;  // index (in the ccw input) of the vertex opposite the baseline

  double canonical_circumradius() const { return X * Y / eta; }
};

CanonicalForm canonicalize(const Triangle& tri);

/// The canonical triangle itself, scaled by `ratio` (congruent to the input).
Triangle reconstruct(const CanonicalForm& cf);

/// The unscaled canonical triangle (-1,0), (1,0), (s, eta*t).
Triangle canonical_triangle(const CanonicalForm& cf);

/// |ratio * XY/eta - R_K| <= 1e-12 * R_K.
bool circumradius_identity_check(const Triangle& tri);

/// Isosceles needle with base h on the x-axis and apex (h/2, h^alpha).
Triangle needle(double h, double alpha);

}  // namespace circumlab
