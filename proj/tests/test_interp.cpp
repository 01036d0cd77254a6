#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "circumlab/errors.hpp"
#include "circumlab/field.hpp"
#include "circumlab/interp.hpp"
#include "circumlab/seminorm.hpp"

using namespace circumlab;

TEST_CASE("interpolant matches the field at the apexes") {
  const Triangle t({0.2, 0.1}, {1.3, 0.4}, {0.5, 1.1});
  for (const char* name : {"sinsin", "expsum", "mono(3,1)"}) {
    const ScalarField v = lookup_field(name);
    const AffineFunction a = p1_interpolate(t, v);
    for (int i = 0; i < 3; ++i) CHECK(a(t[i]) == doctest::Approx(v.value(t[i])).epsilon(1e-13).scale(1));
    const ScalarField e = interpolation_error_field(t, v);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(e.value(t[i])) < 1e-13);
  }
}

TEST_CASE("affine fields are reproduced") {
  const Triangle t({0, 0}, {2, 0.5}, {0.3, 1});
  const InterpErrorReport r = error_report(t, lookup_field("affine(1.5,-2,0.25)"), 2.0);
  CHECK(r.err_0p < 1e-14);
  CHECK(r.err_1p < 1e-14);
  CHECK(r.semi_2p == 0);
  CHECK(r.ratio_1 == 0);
  CHECK(r.bound_satisfied);
}

TEST_CASE("x^2 on the reference triangle") {
  // I x^2 = x, |x^2 - x|_1^2 = int (2x-1)^2 = 1/6, |x^2|_2 = sqrt 2
  const InterpErrorReport r = error_report(Triangle(), lookup_field("mono(2,0)"), 2.0);
  CHECK(r.err_1p == doctest::Approx(1 / std::sqrt(6.0)).epsilon(1e-13));
  CHECK(r.semi_2p == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r.ratio_1 == doctest::Approx(1 / std::sqrt(12.0)).epsilon(1e-13));
  // |x^2 - x|_0^2 = int (x^2 - x)^2 = 4!/6! - 2 3!/5! + 2!/4!
  CHECK(r.err_0p == doctest::Approx(std::sqrt(1.0 / 30 - 0.1 + 1.0 / 12)).epsilon(1e-13));
  CHECK(r.err_full == doctest::Approx(std::hypot(r.err_0p, r.err_1p)).epsilon(1e-13));
  CHECK(r.kobayashi_bound == doctest::Approx(0.491596).epsilon(2e-6));
  CHECK(r.hypothesis_ok);
  CHECK(r.bound_satisfied);
}

TEST_CASE("Kobayashi bound holds on random triangles and fields") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::vector<ScalarField> fields = {lookup_field("sinsin"), lookup_field("expsum"), lookup_field("bubble"),
                                           lookup_field("mono(2,0)"), lookup_field("mono(1,1)"),
                                           lookup_field("mono(0,2)"), lookup_field("mono(3,1)")};
  int checked = 0;
  while (checked < 300) {
    Triangle t;
    try {
      t = Triangle({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
    } catch (const DegenerateTriangle&) {
      continue;
    }
    const ScalarField& v = fields[static_cast<std::size_t>(checked) % fields.size()];
    const InterpErrorReport r = error_report(t, v, 2.0);
    REQUIRE(r.err_1p <= r.kobayashi_bound * r.semi_2p + kBoundTolerance);
    REQUIRE(r.bound_satisfied);
    REQUIRE(r.kobayashi_bound < r.circumradius_bound);
    ++checked;
  }
}

TEST_CASE("error seminorms scale with the triangle") {
  const Triangle t({0, 0}, {1, 0.1}, {0.3, 0.6});
  const ScalarField v = lookup_field("mono(2,1)");
  const InterpErrorReport r1 = error_report(t, v, 2.0);
  // For a homogeneous cubic, v(lambda x) = lambda^3 v(x), so the error on lambda T is
  // lambda^(3 - m + 2/p) times the error on T, with m the order.
  const double lambda = 0.5;
  const InterpErrorReport r2 = error_report(t.scaled(lambda), v, 2.0);
  CHECK(r2.err_1p == doctest::Approx(std::pow(lambda, 3) * r1.err_1p).epsilon(1e-12));
  CHECK(r2.err_0p == doctest::Approx(std::pow(lambda, 4) * r1.err_0p).epsilon(1e-12));
  CHECK(r2.semi_2p == doctest::Approx(std::pow(lambda, 2) * r1.semi_2p).epsilon(1e-12));
}

TEST_CASE("needle ratios track the circumradius") {
  std::vector<double> hs;
  for (int k = 2; k <= 9; ++k) hs.push_back(std::ldexp(1.0, -k));
  const std::vector<NeedleRow> rows = needle_study(hs, 1.5, lookup_field("mono(2,0)"), 2.0);
  REQUIRE(rows.size() == hs.size());
  double previous = 0;
  for (const NeedleRow& row : rows) {
    const InterpErrorReport& r = row.report;
    CHECK(r.ratio_1 <= r.kobayashi_bound);
    CHECK(r.empirical_quotient <= 1.0);
    CHECK(r.empirical_quotient > 0.5);
    CHECK(r.bound_satisfied);
    // R_K = h^1.5/2 + h^0.5/8 decreases, the ratio follows it
    if (previous > 0) CHECK(r.ratio_1 < previous);
    previous = r.ratio_1;
  }
  // alpha > 2: R_K grows as h shrinks and so does the ratio
  const std::vector<NeedleRow> blow = needle_study(hs, 2.5, lookup_field("mono(2,0)"), 2.0);
  CHECK(blow.back().report.ratio_1 > 10 * blow.front().report.ratio_1);
  CHECK(blow.back().report.ratio_1 <= blow.back().report.kobayashi_bound);
}

TEST_CASE("p != 2 uses the circumradius form") {
  const Triangle t({0, 0}, {1, 0}, {0.5, 0.3});
  for (double p : {1.0, 3.0, kInfinity}) {
    const InterpErrorReport r = error_report(t, lookup_field("sinsin"), p);
    CHECK(r.p == p);
    CHECK(r.err_1p > 0);
    CHECK(r.bound_satisfied ==
          (r.err_1p <= kEmpiricalCircumradiusConstant * r.circumradius_bound * r.semi_2p + kBoundTolerance));
  }
}

TEST_CASE("needle study rejects invalid parameters") {
  const std::vector<double> ok{0.5, 0.25}, bad{0.5, 1.5}, zero{0.0};
  const ScalarField v = lookup_field("sinsin");
  CHECK_THROWS_AS(needle_study(ok, 1.0, v, 2.0), InvalidFamily);
  CHECK_THROWS_AS(needle_study(bad, 1.5, v, 2.0), InvalidFamily);
  CHECK_THROWS_AS(needle_study(zero, 1.5, v, 2.0), InvalidFamily);
}
