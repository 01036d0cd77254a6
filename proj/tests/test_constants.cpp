#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "circumlab/constants.hpp"
#include "circumlab/errors.hpp"
#include "circumlab/field.hpp"
#include "circumlab/seminorm.hpp"

using namespace circumlab;

namespace {

const Triangle kRef;

// Rayleigh quotient of an explicit admissible trial function: an upper bound
// that does not go through the Gram machinery.
double trial_quotient(const char* field, int num_order, int den_order, const Triangle& t = kRef) {
  const ScalarField f = lookup_field(field);
  return seminorm(f, {num_order, 2}, t) / seminorm(f, {den_order, 2}, t);
}

void check_history(const QuotientEstimate& e) {
  REQUIRE(!e.history.empty());
  CHECK(e.history.front().degree == kMinSubspaceDegree);
  CHECK(e.history.back().degree == e.degree);
  for (std::size_t k = 1; k < e.history.size(); ++k) CHECK(e.history[k].value <= e.history[k - 1].value);
  CHECK(e.value == e.history.back().value);
  CHECK(e.uncertainty >= 0);
}

}  // namespace

TEST_CASE("Babuska-Aziz root") {
  const double x = babuska_aziz_root();
  CHECK(x == doctest::Approx(0.49291).epsilon(1e-5));
  CHECK(std::abs(1 / x + std::tan(1 / x)) < 1e-12);
  CHECK(babuska_aziz_A2() == doctest::Approx(1 / x).epsilon(1e-15));
  // the largest positive root: 1/x is the first root of y + tan y beyond pi/2
  CHECK(1 / x > std::numbers::pi / 2);
  CHECK(1 / x < std::numbers::pi);
}

TEST_CASE("mean-zero quotient on the reference triangle") {
  const QuotientEstimate a1 = rayleigh_A(kRef, 1, 10);
  check_history(a1);
  CHECK(a1.value == doctest::Approx(babuska_aziz_A2()).epsilon(1e-6));
  CHECK(a1.value >= babuska_aziz_A2() * (1 - 1e-12));
  // w = y has zero mean on the edge (0,0)-(1,0)
  CHECK(a1.value <= trial_quotient("y", 1, 0));
  CHECK(trial_quotient("y", 1, 0) == doctest::Approx(std::sqrt(6.0)));

  // symmetric about the diagonal, so both edges give the same value
  const QuotientEstimate a2 = rayleigh_A(kRef, 2, 10);
  CHECK(a2.value == doctest::Approx(a1.value).epsilon(1e-10));
  CHECK(a2.kind == QuotientKind::A2Edge);
  CHECK(to_string(QuotientKind::A2Edge) == "A2-edge");
  CHECK_THROWS_AS(rayleigh_A(kRef, 3, 8), InconsistentSpec);
}

TEST_CASE("vertex-vanishing quotients on the reference triangle") {
  const QuotientEstimate b = rayleigh_B(kRef, 10);
  const QuotientEstimate d = rayleigh_D(kRef, 10);
  check_history(b);
  check_history(d);
  // xy vanishes at the apexes
  CHECK(b.value <= trial_quotient("mono(1,1)", 2, 1));
  CHECK(d.value <= trial_quotient("mono(1,1)", 2, 0));
  CHECK(trial_quotient("mono(1,1)", 2, 0) == doctest::Approx(std::sqrt(180.0)));
  CHECK(b.value == doctest::Approx(2.04615).epsilon(1e-5));
  CHECK(d.value == doctest::Approx(5.97894).epsilon(2e-5));
  // the reference value carries three digits
  CHECK(1 / d.value == doctest::Approx(0.167).epsilon(2e-3));
  CHECK(d.gram_condition > 1);
  CHECK(d.gram_condition < kMaxGramCondition);
}

TEST_CASE("upper bounds from trial functions on general triangles") {
  const Triangle t({0.1, -0.3}, {1.4, 0.2}, {0.5, 0.9});
  const QuotientEstimate a = rayleigh_A(t, 1, 8);
  check_history(a);
  // w = n . x with n the normal of edge p1->p2 has zero mean on that edge
  const Point e = t[1] - t[0];
  const double c0 = -(-e.y * t[0].x + e.x * t[0].y);
  const ScalarField w = lookup_field("affine(" + std::to_string(-e.y) + "," + std::to_string(e.x) + "," +
                                     std::to_string(c0) + ")");
  CHECK(a.value <= seminorm(w, {1, 2}, t) / seminorm(w, {0, 2}, t) * (1 + 1e-9));
}

TEST_CASE("D scales like 1/lambda^2 and B like 1/lambda") {
  const Triangle t({0, 0}, {1, 0.2}, {0.3, 0.8});
  const QuotientEstimate b = rayleigh_B(t, 8), d = rayleigh_D(t, 8);
  for (double lambda : {0.5, 3.0}) {
    CHECK(rayleigh_D(t.scaled(lambda), 8).value == doctest::Approx(d.value / (lambda * lambda)).epsilon(1e-8));
    CHECK(rayleigh_B(t.scaled(lambda), 8).value == doctest::Approx(b.value / lambda).epsilon(1e-8));
  }
}

TEST_CASE("stretched reference triangles") {
  const double alpha = 1.2, beta = std::sqrt(2 - alpha * alpha);
  const Triangle k({0, 0}, {alpha, 0}, {0, beta});
  CHECK(is_stretched_reference(k));
  CHECK(is_stretched_reference(kRef));
  CHECK_FALSE(is_stretched_reference(Triangle({0, 0}, {1, 0}, {0, 1.2})));
  CHECK(is_stretched_reference(Triangle({0, 0}, {std::sqrt(2 - 1.21), 0}, {0, 1.1})) == false);

  const AuditRecord rec = lemma_inequality_audit(k, 10);
  CHECK(rec.all_pass());
  bool saw_mean_zero = false, saw_zero = false;
  for (const LemmaCheck& c : rec.checks) {
    if (c.lemma == Lemma::MeanZeroStretched) {
      saw_mean_zero = true;
      CHECK(c.bound == doctest::Approx(1.43455).epsilon(1e-5));
    }
    if (c.lemma == Lemma::SecondOverZero) {
      saw_zero = true;
      CHECK(c.bound == doctest::Approx(2.99401).epsilon(1e-5));
    }
    CHECK(c.computed >= c.bound);
  }
  CHECK(saw_mean_zero);
  CHECK(saw_zero);
}

TEST_CASE("right-triangle lemma") {
  const Triangle t({0, 0}, {1, 0}, {0, 0.1});
  CHECK(is_axis_right_triangle(t));
  CHECK_FALSE(is_axis_right_triangle(Triangle({0, 0}, {1, 1}, {-1, 1})));
  const Lemma lemma[] = {Lemma::RightTriangle};
  const AuditRecord rec = lemma_inequality_audit(t, 10, lemma);
  REQUIRE(rec.checks.size() == 2);
  const double R = std::sqrt(1.01) / 2;
  for (const LemmaCheck& c : rec.checks) {
    if (c.quantity == QuotientKind::B) CHECK(c.bound == doctest::Approx(babuska_aziz_A2() / (2 * R)));
    if (c.quantity == QuotientKind::B) CHECK(c.bound == doctest::Approx(2.0187).epsilon(1e-4));
    if (c.quantity == QuotientKind::D) CHECK(c.bound == doctest::Approx(kReferenceD2 / (4 * R * R)));
    CHECK(c.pass);
  }
  const Triangle oblique({0, 0}, {1, 0}, {0.5, 0.4});
  CHECK_THROWS_AS(lemma_inequality_audit(oblique, 8, lemma), NotApplicable);
  const Lemma stretched[] = {Lemma::SecondOverFirst};
  CHECK_THROWS_AS(lemma_inequality_audit(oblique, 8, stretched), NotApplicable);
}

TEST_CASE("general-triangle lemmas on canonical triangles") {
  for (double s : {-0.6, 0.0, 0.6}) {
    for (double eta : {0.2, 1.0, 1.6}) {
      const double t = std::sqrt(1 - s * s);
      const Triangle tri({-1, 0}, {1, 0}, {s, eta * t});
      const Lemma lemmas[] = {Lemma::GeneralFirst, Lemma::GeneralZero};
      const AuditRecord rec = lemma_inequality_audit(tri, 8, lemmas);
      CAPTURE(s);
      CAPTURE(eta);
      CHECK(rec.all_pass());
      const double R = metrics(canonical_triangle(canonicalize(tri))).R_K;
      for (const LemmaCheck& c : rec.checks) {
        if (c.lemma == Lemma::GeneralFirst)
          CHECK(c.bound == doctest::Approx(babuska_aziz_A2() / (std::pow(2.0, 2.5) * std::sqrt(3.0) * R)));
        else
          CHECK(c.bound == doctest::Approx(kReferenceD2 / (8 * 3 * R * R)));
      }
    }
  }
}

TEST_CASE("exponent helpers") {
  const ExponentHelpers two = exponent_helpers(2);
  CHECK(two.tau == 0);
  CHECK(two.gamma == 0);
  CHECK(two.phi == doctest::Approx(2.5));
  CHECK(two.mu == doctest::Approx(3.0));
  const ExponentHelpers one = exponent_helpers(1);
  CHECK(one.tau == doctest::Approx(0.5));
  CHECK(one.phi == doctest::Approx(3.5));
  CHECK(one.mu == doctest::Approx(4.0));
  const ExponentHelpers four = exponent_helpers(4);
  CHECK(four.gamma == doctest::Approx(1.0));
  CHECK(four.phi == doctest::Approx(3.25));
  CHECK(four.mu == doctest::Approx(3.5));
  const ExponentHelpers inf = exponent_helpers(kInfinity);
  CHECK(std::isinf(inf.gamma));
  CHECK(inf.phi == 4);
  CHECK(inf.mu == 4);
  // continuity at p = 2
  CHECK(exponent_helpers(2 + 1e-12).phi == doctest::Approx(two.phi));
  CHECK_THROWS_AS(exponent_helpers(0.5), InvalidExponent);
}

TEST_CASE("lemma names") {
  CHECK(to_string(Lemma::MeanZeroStretched) == "mean-zero-stretched");
  CHECK(to_string(Lemma::GeneralZero) == "general-second-over-zero");
}

TEST_CASE("degree limits") {
  CHECK_THROWS_AS(rayleigh_B(kRef, 3), UnsupportedDegree);
  CHECK_THROWS_AS(rayleigh_D(kRef, 15), UnsupportedDegree);
  CHECK(rayleigh(QuotientKind::B, kRef, 4).history.size() == 1);
}
