#include "circumlab/quadrature.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "circumlab/errors.hpp"

namespace circumlab {

GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(static_cast<std::size_t>(n));
  gl.weights.resize(static_cast<std::size_t>(n));
  // Newton on P_n from the Chebyshev-like initial guess, on [-1,1].
  for (int k = 0; k < (n + 1) / 2; ++k) {
    long double x = std::cos(std::numbers::pi_v<long double> * (k + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    // recompute derivative at the converged node
    long double p0 = 1, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const long double w = 2 / ((1 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(k);
    const auto hi = static_cast<std::size_t>(n - 1 - k);
    gl.nodes[lo] = static_cast<double>((1 - x) / 2);
    gl.nodes[hi] = static_cast<double>((1 + x) / 2);
    gl.weights[lo] = gl.weights[hi] = static_cast<double>(w / 2);
  }
  return gl;
}

QuadratureRule make_rule(int degree) {
  if (degree < kMinRuleDegree || degree > kMaxRuleDegree) {
    throw UnsupportedDegree("quadrature degree " + std::to_string(degree) + " outside [1, 30]");
  }
  // x = u, y = v (1 - u), Jacobian (1 - u): the u-direction carries one extra degree.
  const int n = (degree + 2 + 1) / 2;
  const GaussLegendre gl = gauss_legendre(n);
  QuadratureRule rule;
  rule.degree_ = degree;
  for (int a = 0; a < n; ++a) {
    const double u = gl.nodes[static_cast<std::size_t>(a)];
    for (int b = 0; b < n; ++b) {
      const double v = gl.nodes[static_cast<std::size_t>(b)];
      const double x = u;
      const double y = v * (1 - u);
      rule.points_.push_back({1 - x - y, x, y});
      rule.weights_.push_back(gl.weights[static_cast<std::size_t>(a)] * gl.weights[static_cast<std::size_t>(b)] *
                              (1 - u));
    }
  }
  return rule;
}

std::vector<MappedPoint> QuadratureRule::map_to(const Triangle& tri) const {
  const double scale = 2 * tri.area();
  std::vector<MappedPoint> out;
  out.reserve(weights_.size());
  for (std::size_t q = 0; q < weights_.size(); ++q) {
    const auto& l = points_[q];
    out.push_back({{l[0] * tri[0].x + l[1] * tri[1].x + l[2] * tri[2].x,
                    l[0] * tri[0].y + l[1] * tri[1].y + l[2] * tri[2].y},
                   weights_[q] * scale});
  }
  return out;
}

const QuadratureRule& cached_rule(int degree) {
  static std::mutex mu;
  static std::array<std::unique_ptr<QuadratureRule>, kMaxRuleDegree + 1> cache;
  if (degree < kMinRuleDegree || degree > kMaxRuleDegree) {
    throw UnsupportedDegree("quadrature degree " + std::to_string(degree) + " outside [1, 30]");
  }
  std::lock_guard lock(mu);
  auto& slot = cache[static_cast<std::size_t>(degree)];
  if (!slot) slot = std::make_unique<QuadratureRule>(make_rule(degree));
  return *slot;
}

}  // namespace circumlab
