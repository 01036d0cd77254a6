#include "circumlab/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "circumlab/errors.hpp"

namespace circumlab {

namespace {

using Long = long double;

Long cross_l(Point o, Point a, Point b) {
  return (static_cast<Long>(a.x) - o.x) * (static_cast<Long>(b.y) - o.y) -
         (static_cast<Long>(a.y) - o.y) * (static_cast<Long>(b.x) - o.x);
}

Long dist2_l(Point a, Point b) {
  const Long dx = static_cast<Long>(a.x) - b.x;
  const Long dy = static_cast<Long>(a.y) - b.y;
  return dx * dx + dy * dy;
}

std::string describe(Point p1, Point p2, Point p3) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p1.x << "," << p1.y << ") (" << p2.x << "," << p2.y << ") (" << p3.x << "," << p3.y << ")";
  return os.str();
}

}  // namespace

Triangle::Triangle(Point p1, Point p2, Point p3) : v_{p1, p2, p3} {
  const Long twice_area = cross_l(p1, p2, p3);
  const Long h2 = std::max({dist2_l(p1, p2), dist2_l(p2, p3), dist2_l(p3, p1)});
  if (!std::isfinite(static_cast<double>(twice_area)) ||
      std::abs(twice_area) / 2 < static_cast<Long>(kDegeneracyFloor) * h2 || h2 == 0) {
    throw DegenerateTriangle("degenerate triangle " + describe(p1, p2, p3));
  }
  if (twice_area < 0) std::swap(v_[1], v_[2]);
}

double Triangle::area() const { return static_cast<double>(cross_l(v_[0], v_[1], v_[2]) / 2); }

Point Triangle::centroid() const {
  return {(v_[0].x + v_[1].x + v_[2].x) / 3.0, (v_[0].y + v_[1].y + v_[2].y) / 3.0};
}

Triangle Triangle::scaled(double scale) const {
  return Triangle(scale * v_[0], scale * v_[1], scale * v_[2]);
}

TriangleMetrics metrics(const Triangle& tri) {
  const auto& v = tri.vertices();
  const Long A2 = dist2_l(v[1], v[2]);
  const Long B2 = dist2_l(v[2], v[0]);
  const Long C2 = dist2_l(v[0], v[1]);
  const Long A = std::sqrt(A2), B = std::sqrt(B2), C = std::sqrt(C2);
  const Long S = cross_l(v[0], v[1], v[2]) / 2;
  const Long h = std::max({A, B, C});
  if (!(S >= static_cast<Long>(kDegeneracyFloor) * h * h)) {
    throw DegenerateTriangle("degenerate triangle " + describe(v[0], v[1], v[2]));
  }

  TriangleMetrics m;
  m.A = static_cast<double>(A);
  m.B = static_cast<double>(B);
  m.C = static_cast<double>(C);
  m.S = static_cast<double>(S);
  m.h_K = static_cast<double>(h);
  m.rho_K = static_cast<double>(2 * S / (A + B + C));
  m.R_K = static_cast<double>(A * B * C / (4 * S));

  // Law of cosines in the form atan2(2S, (b^2 + c^2 - a^2)/2), stable near 0 and pi.
  m.angles[0] = static_cast<double>(std::atan2(2 * S, (B2 + C2 - A2) / 2));
  m.angles[1] = static_cast<double>(std::atan2(2 * S, (C2 + A2 - B2) / 2));
  m.angles[2] = static_cast<double>(std::atan2(2 * S, (A2 + B2 - C2) / 2));
  m.theta_min = *std::min_element(m.angles.begin(), m.angles.end());
  m.theta_max = *std::max_element(m.angles.begin(), m.angles.end());

  const Long S2 = S * S;
  const Long ck2 = A2 * B2 * C2 / (16 * S2) - (A2 + B2 + C2) / 30 - S2 / 5 * (1 / A2 + 1 / B2 + 1 / C2);
  m.C_K = static_cast<double>(std::sqrt(std::max(ck2, Long{0})));
  return m;
}

ConditionFlags condition_flags(const TriangleMetrics& m, double theta0, double theta1, double sigma) {
  constexpr double pi = std::numbers::pi;
  if (!(theta0 > 0 && theta0 < pi / 3)) throw InvalidThreshold("theta0 must lie in (0, pi/3)");
  if (!(theta1 >= pi / 3 && theta1 < pi)) throw InvalidThreshold("theta1 must lie in [pi/3, pi)");
  if (!(sigma > 0)) throw InvalidThreshold("sigma must be positive");
  ConditionFlags f;
  f.min_angle_ok = m.theta_min >= theta0;
  f.max_angle_ok = m.theta_max <= theta1;
  f.regular_ok = std::isinf(sigma) || m.h_K / m.rho_K <= sigma;
  return f;
}

CanonicalForm canonicalize(const Triangle& tri) {
  const auto& v = tri.vertices();
  std::array<Long, 3> len2{dist2_l(v[1], v[2]), dist2_l(v[2], v[0]), dist2_l(v[0], v[1])};

  // Longest edge; equal lengths mean equal opposite angles, so the
  // largest-angle tie-break reduces to the lowest vertex index.
  int apex = 0;
  for (int i = 1; i < 3; ++i) {
    if (len2[static_cast<std::size_t>(i)] > len2[static_cast<std::size_t>(apex)]) apex = i;
  }
  const Point p = v[static_cast<std::size_t>(apex)];
  const Point q0 = v[static_cast<std::size_t>((apex + 1) % 3)];
  const Point q1 = v[static_cast<std::size_t>((apex + 2) % 3)];

  // Counterclockwise order puts the apex to the left of q0 -> q1.
  const Long ex = static_cast<Long>(q1.x) - q0.x, ey = static_cast<Long>(q1.y) - q0.y;
  const Long L2 = ex * ex + ey * ey;
  const Long L = std::sqrt(L2);
  const Long px = static_cast<Long>(p.x) - q0.x, py = static_cast<Long>(p.y) - q0.y;
  // Coordinates in the frame where q0 -> (-1,0), q1 -> (1,0).
  const Long along = (px * ex + py * ey) / L2;  // in [0,1]
  const Long height = (ex * py - ey * px) / L2;  // twice-area / L^2
  const Long s = 2 * along - 1;
  const Long y = 2 * height;
  const Long t = std::sqrt((1 - s) * (1 + s));

  CanonicalForm cf;
  cf.apex = apex;
  cf.s = static_cast<double>(s);
  cf.t = static_cast<double>(t);
  cf.eta = static_cast<double>(y / t);
  const Long a = std::sqrt((1 + s) / 2), b = std::sqrt((1 - s) / 2);
  const Long eta = y / t;
  cf.a = static_cast<double>(a);
  cf.b = static_cast<double>(b);
  cf.X = static_cast<double>(std::sqrt(a * a * eta * eta + b * b));
  cf.Y = static_cast<double>(std::sqrt(a * a + b * b * eta * eta));
  cf.ratio = static_cast<double>(L / 2);
  return cf;
}

Triangle canonical_triangle(const CanonicalForm& cf) {
  return Triangle({-1.0, 0.0}, {1.0, 0.0}, {cf.s, cf.eta * cf.t});
}

Triangle reconstruct(const CanonicalForm& cf) {
  return Triangle({-cf.ratio, 0.0}, {cf.ratio, 0.0}, {cf.ratio * cf.s, cf.ratio * cf.eta * cf.t});
}

bool circumradius_identity_check(const Triangle& tri) {
  const TriangleMetrics m = metrics(tri);
  const CanonicalForm cf = canonicalize(tri);
  return std::abs(cf.ratio * cf.canonical_circumradius() - m.R_K) <= 1e-12 * m.R_K;
}

Triangle needle(double h, double alpha) {
  return Triangle({0.0, 0.0}, {h, 0.0}, {h / 2, std::pow(h, alpha)});
}

}  // namespace circumlab
