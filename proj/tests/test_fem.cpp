#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "circumlab/errors.hpp"
#include "circumlab/fem.hpp"
#include "circumlab/field.hpp"

using namespace circumlab;

namespace {

const ScalarField kOne = lookup_field("one");

ScalarField sinsin() { return lookup_field("sinsin"); }

}  // namespace

TEST_CASE("uniform(1) has no free unknowns") {
  const SparseSystem sys = assemble(gen_uniform(1), kOne);
  CHECK(sys.matrix.rows() == 0);
  CHECK(sys.rhs.empty());
  const FemSolution sol = solve_cg(sys);
  CHECK(sol.nodal.size() == 4);
  for (double u : sol.nodal) CHECK(u == 0);
}

TEST_CASE("uniform(2) with f = 1") {
  const SparseSystem sys = assemble(gen_uniform(2), kOne);
  REQUIRE(sys.matrix.rows() == 1);
  CHECK(sys.matrix.at(0, 0) == doctest::Approx(4.0).epsilon(1e-15));
  // hat function volume: support area 6/8 times 1/3
  CHECK(sys.rhs[0] == doctest::Approx(0.25).epsilon(1e-15));
  const FemSolution sol = solve_cg(sys);
  const int center = sys.vertex_of_dof[0];
  CHECK(sol.nodal[static_cast<std::size_t>(center)] == doctest::Approx(1.0 / 16).epsilon(1e-14));
  CHECK(sys.mesh->vertices[static_cast<std::size_t>(center)].p == Point{0.5, 0.5});
}

TEST_CASE("stiffness rows sum to zero and the matrix is symmetric") {
  for (const Mesh& m : {gen_uniform(5), gen_crisscross_aniso(3, 1.5), gen_lens(3)}) {
    const SparseSystem sys = assemble(m, kOne);
    const CsrMatrix& k = sys.full_stiffness;
    REQUIRE(k.rows() == m.vertices.size());
    double total_load = 0;
    for (double b : sys.full_load) total_load += b;
    double area = 0;
    for (std::size_t e = 0; e < m.triangles.size(); ++e) area += m.element(e).area();
    CHECK(total_load == doctest::Approx(area).epsilon(1e-13));
    for (std::size_t i = 0; i < k.rows(); ++i) {
      double sum = 0;
      for (std::size_t p = k.row_ptr[i]; p < k.row_ptr[i + 1]; ++p) {
        sum += k.val[p];
        const auto j = static_cast<std::size_t>(k.col[p]);
        REQUIRE(k.at(j, i) == doctest::Approx(k.val[p]).epsilon(1e-14));
        if (p > k.row_ptr[i]) REQUIRE(k.col[p] > k.col[p - 1]);
      }
      REQUIRE(std::abs(sum) < 1e-12);
      REQUIRE(k.at(i, i) > 0);
    }
  }
}

TEST_CASE("CG on the identity takes one iteration") {
  const CsrMatrix id = CsrMatrix::identity(5);
  const std::vector<double> b{1, -2, 3, 0.5, 4};
  const CgResult r = solve_cg(id, b);
  CHECK(r.report.iterations == 1);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(r.x[i] == doctest::Approx(b[i]));
  const std::vector<double> zero(5, 0.0);
  const CgResult z = solve_cg(id, zero);
  CHECK(z.report.iterations == 0);
  for (double x : z.x) CHECK(x == 0);
}

TEST_CASE("CG converges and its residual matches") {
  const SparseSystem sys = assemble(gen_uniform(8), negative_laplacian(sinsin()));
  const FemSolution sol = solve_cg(sys);
  CHECK(sol.report.iterations <= 200);
  CHECK(sol.report.relative_residual <= kDefaultCgTolerance);
  CHECK(galerkin_residual(sys, sol) < 1e-9);
  CHECK(sol.report.history.size() == static_cast<std::size_t>(sol.report.iterations) + 1);
  for (std::size_t i = 0; i < sol.nodal.size(); ++i) {
    if (sys.mesh->vertices[i].boundary) CHECK(sol.nodal[i] == 0);
  }
  CHECK_THROWS_AS(solve_cg(sys, 1e-14, 2), NoConvergence);
  try {
    solve_cg(sys, 1e-14, 2);
  } catch (const NoConvergence& e) {
    CHECK(e.residual_history().size() == 3);
  }
}

TEST_CASE("f = 0 gives the zero solution") {
  const ScalarField zero = lookup_field("affine(0,0,0)");
  const FemSolution sol = solve_cg(assemble(gen_crisscross_aniso(4, 1.5), zero));
  for (double u : sol.nodal) CHECK(u == 0);
}

TEST_CASE("first-order convergence on uniform meshes") {
  const ScalarField u = sinsin();
  const QuadratureRule& rule = cached_rule(10);
  double prev = 0;
  for (int n : {8, 16, 32}) {
    const SparseSystem sys = assemble(gen_uniform(n), negative_laplacian(u));
    const FemSolution sol = solve_cg(sys);
    const H1Error e = h1_error(sol, u, rule);
    CHECK(e.full >= e.semi);
    if (prev > 0) CHECK(prev / e.semi == doctest::Approx(2.0).epsilon(0.05));
    prev = e.semi;
  }
}

TEST_CASE("Galerkin optimality and the interpolation chain") {
  const ScalarField u = sinsin();
  const QuadratureRule& rule = cached_rule(10);
  for (const Mesh& m : {gen_uniform(8), gen_crisscross_aniso(8, 1.5)}) {
    const SparseSystem sys = assemble(m, negative_laplacian(u));
    const FemSolution sol = solve_cg(sys);
    const H1Error fe = h1_error(sol, u, rule);
    const H1Error ie = interpolation_error(m, u, rule);
    CHECK(fe.semi <= ie.semi * (1 + 1e-9));
    CHECK(fe.full <= cea_chain_factor() * ie.semi * (1 + 1e-9));
    // interpolant error per element is bounded by C_K |u|_2 < R_K |u|_2
    CHECK(ie.semi <= stats(m).max_R_K * semi_22(m, u, rule));
  }
}

TEST_CASE("constants of the chain") {
  CHECK(poincare_constant_unit_square() == doctest::Approx(std::sqrt(2.0) / std::numbers::pi));
  CHECK(cea_chain_factor() == doctest::Approx(std::sqrt(1 + 2 / (std::numbers::pi * std::numbers::pi))));
  CHECK(semi_22(gen_uniform(4), lookup_field("mono(1,1)"), cached_rule(4)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("interpolation-only rows for the lens") {
  const std::vector<int> ns{2, 4};
  const CeaReport r = cea_study("lens", ns, 1.5, sinsin());
  REQUIRE(r.rows.size() == 2);
  for (const CeaRow& row : r.rows) {
    CHECK_FALSE(row.solved);
    CHECK(row.interp_semi_error > 0);
  }
  CHECK_THROWS_AS(family_meshes("hexagon", ns), InvalidFamily);
}

TEST_CASE("degenerate element is named") {
  Mesh m = gen_uniform(2);
  m.vertices[4].p = m.vertices[0].p;
  try {
    assemble(m, kOne);
    FAIL("expected DegenerateTriangle");
  } catch (const DegenerateTriangle& e) {
    CHECK(std::string(e.what()).find("element") != std::string::npos);
  }
}
