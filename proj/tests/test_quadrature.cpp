#include <doctest.h>

#include <cmath>
#include <numeric>

#include "circumlab/errors.hpp"
#include "circumlab/quadrature.hpp"

using namespace circumlab;

namespace {

// int_{ref} x^i y^j = i! j! / (i + j + 2)!
double monomial_moment(int i, int j) {
  return std::exp(std::lgamma(i + 1.0) + std::lgamma(j + 1.0) - std::lgamma(i + j + 3.0));
}

double apply(const QuadratureRule& rule, int i, int j) {
  double s = 0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto& l = rule.points()[q];
    s += rule.weights()[q] * std::pow(l[1], i) * std::pow(l[2], j);
  }
  return s;
}

}  // namespace

TEST_CASE("rules integrate monomials exactly up to their degree") {
  for (int degree = kMinRuleDegree; degree <= kMaxRuleDegree; ++degree) {
    const QuadratureRule& rule = cached_rule(degree);
    REQUIRE(rule.exactness_degree() == degree);
    for (int d = 0; d <= degree; ++d) {
      for (int j = 0; j <= d; ++j) {
        const double exact = monomial_moment(d - j, j);
        REQUIRE(apply(rule, d - j, j) == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("weights are positive and sum to the reference area") {
  for (int degree = kMinRuleDegree; degree <= kMaxRuleDegree; ++degree) {
    const QuadratureRule rule = make_rule(degree);
    double sum = 0;
    for (double w : rule.weights()) {
      REQUIRE(w > 0);
      sum += w;
    }
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
    for (const auto& l : rule.points()) {
      REQUIRE(l[0] + l[1] + l[2] == doctest::Approx(1.0).epsilon(1e-15));
      REQUIRE(l[0] >= 0);
      REQUIRE(l[1] >= 0);
      REQUIRE(l[2] >= 0);
    }
  }
}

TEST_CASE("unsupported degrees") {
  CHECK_THROWS_AS(make_rule(0), UnsupportedDegree);
  CHECK_THROWS_AS(make_rule(31), UnsupportedDegree);
  CHECK_THROWS_AS(cached_rule(-2), UnsupportedDegree);
}

TEST_CASE("two-point Gauss-Legendre on [0, 1]") {
  const GaussLegendre gl = gauss_legendre(2);
  CHECK(gl.nodes[0] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(gl.nodes[1] == doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(gl.weights[0] == doctest::Approx(0.5));
  CHECK(gl.weights[1] == doctest::Approx(0.5));

  for (int n = 1; n <= 16; ++n) {
    const GaussLegendre g = gauss_legendre(n);
    CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // exact for x^(2n-1)
    double s = 0;
    for (int k = 0; k < n; ++k) s += g.weights[static_cast<std::size_t>(k)] * std::pow(g.nodes[static_cast<std::size_t>(k)], 2 * n - 1);
    CHECK(s == doctest::Approx(1.0 / (2 * n)).epsilon(1e-13));
  }
}

TEST_CASE("mapped rule integrates affine functions on a general triangle") {
  const Triangle tri({0.3, -0.2}, {2.0, 0.5}, {-0.4, 1.7});
  const Point c = tri.centroid();
  for (int degree : {1, 5, 12}) {
    double area = 0, mx = 0, my = 0, xy = 0;
    for (const MappedPoint& q : cached_rule(degree).map_to(tri)) {
      area += q.w;
      mx += q.w * q.x.x;
      my += q.w * q.x.y;
      xy += q.w * q.x.x * q.x.y;
    }
    CHECK(area == doctest::Approx(tri.area()).epsilon(1e-14));
    CHECK(mx / area == doctest::Approx(c.x).epsilon(1e-14));
    CHECK(my / area == doctest::Approx(c.y).epsilon(1e-14));
    if (degree >= 2) {
      // second moment: S/12 (sum x_i y_i + 9 xbar ybar)
      double sxy = 0;
      for (int i = 0; i < 3; ++i) sxy += tri[i].x * tri[i].y;
      CHECK(xy == doctest::Approx(tri.area() / 12 * (sxy + 9 * c.x * c.y)).epsilon(1e-13));
    }
  }
}
