#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "circumlab/field.hpp"
#include "circumlab/mesh.hpp"
#include "circumlab/quadrature.hpp"

namespace circumlab {

/// Square matrix in compressed row layout; columns sorted within each row.
struct CsrMatrix {
  std::vector<std::size_t> row_ptr{0};
  std::vector<int> col;
  std::vector<double> val;

  std::size_t rows() const { return row_ptr.size() - 1; }
  std::size_t nonzeros() const { return val.size(); }
  /// Entry (i, j), 0 if not stored.
  double at(std::size_t i, std::size_t j) const;
  void multiply(std::span<const double> x, std::span<double> y) const;

  static CsrMatrix identity(std::size_t n);
};

inline constexpr int kLoadQuadratureDegree = 4;

/// Dirichlet problem -Laplace u = f, u = 0 on boundary vertices.
struct SparseSystem {
  std::shared_ptr<const Mesh> mesh;
  CsrMatrix matrix;                 // free block
  std::vector<double> rhs;          // free load
  std::vector<int> dof_of_vertex;   // -1 for constrained vertices
  std::vector<int> vertex_of_dof;
  CsrMatrix full_stiffness;         // before elimination, all vertices
  std::vector<double> full_load;
};

/// Exact P1 element stiffness, load by quadrature of `load_degree`, symmetric
/// elimination of boundary vertices. Element contributions are merged in
/// element order, so the result is independent of scheduling.
/// Throws DegenerateTriangle naming the element.
SparseSystem assemble(std::shared_ptr<const Mesh> mesh, const ScalarField& f, int load_degree = kLoadQuadratureDegree);
SparseSystem assemble(const Mesh& mesh, const ScalarField& f, int load_degree = kLoadQuadratureDegree);

struct SolverReport {
  int iterations = 0;
  double relative_residual = 0;
  std::vector<double> history;  // relative residual after each iteration, starting with the initial one
};

struct CgResult {
  std::vector<double> x;
  SolverReport report;
};

inline constexpr double kDefaultCgTolerance = 1e-10;

/// Jacobi-preconditioned CG from a zero initial guess until ||r|| <= rel_tol ||b||.
/// Throws NoConvergence with the residual history.
CgResult solve_cg(const CsrMatrix& a, std::span<const double> b, double rel_tol = kDefaultCgTolerance,
                  int max_iter = 10000);

struct FemSolution {
  std::shared_ptr<const Mesh> mesh;
  std::vector<double> nodal;  // per vertex, exactly zero on the boundary
  SolverReport report;
};

FemSolution solve_cg(const SparseSystem& sys, double rel_tol = kDefaultCgTolerance, int max_iter = 10000);

/// max_i |(K u - b)_i| / ||b||_2 over the free rows.
double galerkin_residual(const SparseSystem& sys, const FemSolution& sol);

struct H1Error {
  double semi = 0;  // |u - u_h|_{1,2}
  double full = 0;  // ||u - u_h||_{1,2}
};

/// Element-wise quadrature of |grad(u - u_h)|^2 and (u - u_h)^2, summed in element order.
H1Error h1_error(const FemSolution& sol, const ScalarField& exact, const QuadratureRule& rule);
/// The same for an arbitrary piecewise linear nodal vector.
H1Error h1_error(const Mesh& mesh, std::span<const double> nodal, const ScalarField& exact,
                 const QuadratureRule& rule);
/// Error of the nodal interpolant I_h u.
H1Error interpolation_error(const Mesh& mesh, const ScalarField& exact, const QuadratureRule& rule);
/// |u|_{2,2} over the mesh.
double semi_22(const Mesh& mesh, const ScalarField& exact, const QuadratureRule& rule);

/// Poincare constant diam/pi of the unit square.
double poincare_constant_unit_square();
/// sqrt(1 + C_P^2), the factor between the H1 seminorm and full norm bounds.
double cea_chain_factor();

/// -Laplace of a field with second derivatives.
ScalarField negative_laplacian(const ScalarField& u);

struct CeaRow {
  int level = 0;
  int n = 0;
  std::size_t n_triangles = 0;
  double max_R_K = 0;
  double h_max = 0;
  double max_angle = 0;
  bool solved = false;          // false for interpolation-only rows
  double h1_semi_error = 0;
  double h1_norm_error = 0;
  double interp_semi_error = 0;
  double interp_norm_error = 0;
  double semi_22_exact = 0;
  double quotient = 0;          // h1_norm_error / (max_R_K semi_22_exact), interpolation norm when not solved
  int cg_iterations = 0;
  double galerkin_residual = 0;
};

struct CeaReport {
  std::string family;
  std::string field;
  std::vector<CeaRow> rows;
};

struct CeaOptions {
  int error_degree = 10;
  int load_degree = kLoadQuadratureDegree;
  double rel_tol = kDefaultCgTolerance;
  int max_iter = 20000;
  bool solve = true;
};

/// One row per mesh; `ns` labels the rows (the generator parameter).
CeaReport cea_study(std::string family, std::span<const Mesh> meshes, std::span<const int> ns, const ScalarField& exact,
                    const CeaOptions& options = {});

/// Meshes for family "uniform", "crisscross" (uses alpha) or "lens"; throws InvalidFamily otherwise.
std::vector<Mesh> family_meshes(const std::string& family, std::span<const int> ns, double alpha = 1.5);

/// Convenience: family_meshes + cea_study. Lens rows are interpolation-only.
CeaReport cea_study(const std::string& family, std::span<const int> ns, double alpha, const ScalarField& exact,
                    const CeaOptions& options = {});

}  // namespace circumlab
