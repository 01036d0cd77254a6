#include "circumlab/fem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "circumlab/errors.hpp"

namespace circumlab {

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, static_cast<int>(j));
  return it != last && *it == static_cast<int>(j) ? val[static_cast<std::size_t>(it - col.begin())] : 0.0;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < rows(); ++i) {
    double s = 0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[static_cast<std::size_t>(col[k])];
    y[i] = s;
  }
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  CsrMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    m.col.push_back(static_cast<int>(i));
    m.val.push_back(1.0);
    m.row_ptr.push_back(i + 1);
  }
  return m;
}

namespace {

struct Triplet {
  int row, col;
  double val;
};

/// Duplicates are summed in their original order (stable sort).
CsrMatrix from_triplets(std::vector<Triplet> t, std::size_t n) {
  std::stable_sort(t.begin(), t.end(),
                   [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  CsrMatrix m;
  m.row_ptr.assign(n + 1, 0);
  for (std::size_t k = 0; k < t.size();) {
    std::size_t e = k;
    double s = 0;
    for (; e < t.size() && t[e].row == t[k].row && t[e].col == t[k].col; ++e) s += t[e].val;
    m.col.push_back(t[k].col);
    m.val.push_back(s);
    ++m.row_ptr[static_cast<std::size_t>(t[k].row) + 1];
    k = e;
  }
  for (std::size_t i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

/// Barycentric gradients and area of a counterclockwise triangle.
struct P1Element {
  std::array<Gradient, 3> grad;
  double area;
};

P1Element p1_element(const Triangle& tri) {
  P1Element e;
  e.area = tri.area();
  for (int i = 0; i < 3; ++i) {
    const Point a = tri[(i + 1) % 3], b = tri[(i + 2) % 3];
    e.grad[static_cast<std::size_t>(i)] = {(a.y - b.y) / (2 * e.area), (b.x - a.x) / (2 * e.area)};
  }
  return e;
}

Triangle element_or_throw(const Mesh& mesh, std::size_t k) {
  try {
    return mesh.element(k);
  } catch (const DegenerateTriangle& e) {
    throw DegenerateTriangle("element " + std::to_string(k) + ": " + e.what());
  }
}

double norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

SparseSystem assemble(std::shared_ptr<const Mesh> mesh_ptr, const ScalarField& f, int load_degree) {
  const Mesh& mesh = *mesh_ptr;
  const std::size_t nv = mesh.vertices.size();
  const QuadratureRule& rule = cached_rule(load_degree);

  std::vector<Triplet> triplets;
  triplets.reserve(9 * mesh.triangles.size());
  std::vector<double> load(nv, 0.0);
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    const Triangle tri = element_or_throw(mesh, k);
    const P1Element e = p1_element(tri);
    const auto& t = mesh.triangles[k];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Gradient gi = e.grad[static_cast<std::size_t>(i)], gj = e.grad[static_cast<std::size_t>(j)];
        triplets.push_back({t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)],
                            e.area * (gi.x * gj.x + gi.y * gj.y)});
      }
    }
    const auto mapped = rule.map_to(tri);
    for (std::size_t q = 0; q < mapped.size(); ++q) {
      const double fw = f.value(mapped[q].x) * mapped[q].w;
      for (int i = 0; i < 3; ++i) {
        load[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])] += fw * rule.points()[q][static_cast<std::size_t>(i)];
      }
    }
  }

  SparseSystem sys;
  sys.mesh = std::move(mesh_ptr);
  sys.full_stiffness = from_triplets(triplets, nv);
  sys.full_load = load;
  sys.dof_of_vertex.assign(nv, -1);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!mesh.vertices[v].boundary) {
      sys.dof_of_vertex[v] = static_cast<int>(sys.vertex_of_dof.size());
      sys.vertex_of_dof.push_back(static_cast<int>(v));
    }
  }
  const CsrMatrix& full = sys.full_stiffness;
  for (int v : sys.vertex_of_dof) {
    const auto row = static_cast<std::size_t>(v);
    for (std::size_t k = full.row_ptr[row]; k < full.row_ptr[row + 1]; ++k) {
      const int dof = sys.dof_of_vertex[static_cast<std::size_t>(full.col[k])];
      if (dof < 0) continue;
      sys.matrix.col.push_back(dof);
      sys.matrix.val.push_back(full.val[k]);
    }
    sys.matrix.row_ptr.push_back(sys.matrix.col.size());
    sys.rhs.push_back(load[row]);
  }
  return sys;
}

SparseSystem assemble(const Mesh& mesh, const ScalarField& f, int load_degree) {
  return assemble(std::make_shared<const Mesh>(mesh), f, load_degree);
}

CgResult solve_cg(const CsrMatrix& a, std::span<const double> b, double rel_tol, int max_iter) {
  const std::size_t n = a.rows();
  CgResult out;
  out.x.assign(n, 0.0);
  const double bnorm = norm2(b);
  out.report.history.push_back(bnorm > 0 ? 1.0 : 0.0);
  if (bnorm == 0) return out;

  std::vector<double> inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a.at(i, i);
    if (!(d > 0)) throw NoConvergence(0, out.report.history);
    inv_diag[i] = 1.0 / d;
  }
  std::vector<double> r(b.begin(), b.end()), z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0;
  for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];

  for (int it = 1; it <= max_iter; ++it) {
    a.multiply(p, ap);
    double pap = 0;
    for (std::size_t i = 0; i < n; ++i) pap += p[i] * ap[i];
    if (!(pap > 0)) throw NoConvergence(it, out.report.history);
    const double step = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      out.x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    const double rel = norm2(r) / bnorm;
    out.report.history.push_back(rel);
    out.report.iterations = it;
    out.report.relative_residual = rel;
    if (rel <= rel_tol) return out;
    double rz_new = 0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = inv_diag[i] * r[i];
      rz_new += r[i] * z[i];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw NoConvergence(max_iter, out.report.history);
}

FemSolution solve_cg(const SparseSystem& sys, double rel_tol, int max_iter) {
  CgResult cg = solve_cg(sys.matrix, sys.rhs, rel_tol, max_iter);
  FemSolution sol;
  sol.mesh = sys.mesh;
  sol.nodal.assign(sys.dof_of_vertex.size(), 0.0);
  for (std::size_t d = 0; d < sys.vertex_of_dof.size(); ++d) {
    sol.nodal[static_cast<std::size_t>(sys.vertex_of_dof[d])] = cg.x[d];
  }
  sol.report = std::move(cg.report);
  return sol;
}

double galerkin_residual(const SparseSystem& sys, const FemSolution& sol) {
  std::vector<double> u(sys.vertex_of_dof.size()), ku(u.size());
  for (std::size_t d = 0; d < u.size(); ++d) u[d] = sol.nodal[static_cast<std::size_t>(sys.vertex_of_dof[d])];
  sys.matrix.multiply(u, ku);
  double worst = 0;
  for (std::size_t d = 0; d < u.size(); ++d) worst = std::max(worst, std::abs(ku[d] - sys.rhs[d]));
  const double bnorm = norm2(sys.rhs);
  return bnorm > 0 ? worst / bnorm : worst;
}

H1Error h1_error(const Mesh& mesh, std::span<const double> nodal, const ScalarField& exact,
                 const QuadratureRule& rule) {
  double semi2 = 0, l2 = 0;
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    const Triangle tri = element_or_throw(mesh, k);
    const P1Element e = p1_element(tri);
    const auto& t = mesh.triangles[k];
    std::array<double, 3> u{};
    Gradient gh;
    for (std::size_t i = 0; i < 3; ++i) {
      u[i] = nodal[static_cast<std::size_t>(t[i])];
      gh.x += u[i] * e.grad[i].x;
      gh.y += u[i] * e.grad[i].y;
    }
    const auto mapped = rule.map_to(tri);
    for (std::size_t q = 0; q < mapped.size(); ++q) {
      const auto& lam = rule.points()[q];
      const double uh = u[0] * lam[0] + u[1] * lam[1] + u[2] * lam[2];
      const Gradient g = exact.grad(mapped[q].x);
      const double d0 = exact.value(mapped[q].x) - uh;
      semi2 += mapped[q].w * ((g.x - gh.x) * (g.x - gh.x) + (g.y - gh.y) * (g.y - gh.y));
      l2 += mapped[q].w * d0 * d0;
    }
  }
  return {std::sqrt(semi2), std::sqrt(semi2 + l2)};
}

H1Error h1_error(const FemSolution& sol, const ScalarField& exact, const QuadratureRule& rule) {
  return h1_error(*sol.mesh, sol.nodal, exact, rule);
}

H1Error interpolation_error(const Mesh& mesh, const ScalarField& exact, const QuadratureRule& rule) {
  std::vector<double> nodal(mesh.vertices.size());
  for (std::size_t v = 0; v < nodal.size(); ++v) nodal[v] = exact.value(mesh.vertices[v].p);
  return h1_error(mesh, nodal, exact, rule);
}

double semi_22(const Mesh& mesh, const ScalarField& exact, const QuadratureRule& rule) {
  double s = 0;
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k) {
    for (const auto& mp : rule.map_to(element_or_throw(mesh, k))) {
      const Hessian h = exact.hess(mp.x);
      s += mp.w * (h.xx * h.xx + 2 * h.xy * h.xy + h.yy * h.yy);
    }
  }
  return std::sqrt(s);
}

double poincare_constant_unit_square() { return std::numbers::sqrt2 / std::numbers::pi; }

double cea_chain_factor() {
  const double cp = poincare_constant_unit_square();
  return std::sqrt(1 + cp * cp);
}

ScalarField negative_laplacian(const ScalarField& u) {
  if (!u.has_hessian()) throw InconsistentSpec("field '" + u.name() + "' has no second derivatives");
  // Only values are needed for the load vector.
  return ScalarField(
      "-lap(" + u.name() + ")", [u](Point p) { return -u.laplacian(p); },
      [](Point) -> Gradient { throw InconsistentSpec("gradient of a load field is not available"); });
}

CeaReport cea_study(std::string family, std::span<const Mesh> meshes, std::span<const int> ns, const ScalarField& exact,
                    const CeaOptions& options) {
  if (ns.size() != meshes.size()) throw InconsistentSpec("one label per mesh is required");
  CeaReport report;
  report.family = std::move(family);
  report.field = exact.name();
  const QuadratureRule& rule = cached_rule(options.error_degree);
  const ScalarField f = negative_laplacian(exact);
  for (std::size_t level = 0; level < meshes.size(); ++level) {
    const Mesh& mesh = meshes[level];
    const MeshStats st = stats(mesh);
    CeaRow row;
    row.level = static_cast<int>(level);
    row.n = ns[level];
    row.n_triangles = st.n_triangles;
    row.max_R_K = st.max_R_K;
    row.h_max = st.h_max;
    row.max_angle = st.max_angle;
    const H1Error interp = interpolation_error(mesh, exact, rule);
    row.interp_semi_error = interp.semi;
    row.interp_norm_error = interp.full;
    row.semi_22_exact = semi_22(mesh, exact, rule);
    if (options.solve) {
      const SparseSystem sys = assemble(mesh, f, options.load_degree);
      const FemSolution sol = solve_cg(sys, options.rel_tol, options.max_iter);
      const H1Error err = h1_error(sol, exact, rule);
      row.solved = true;
      row.h1_semi_error = err.semi;
      row.h1_norm_error = err.full;
      row.cg_iterations = sol.report.iterations;
      row.galerkin_residual = galerkin_residual(sys, sol);
    }
    const double numerator = row.solved ? row.h1_norm_error : row.interp_norm_error;
    row.quotient = numerator / (row.max_R_K * row.semi_22_exact);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<Mesh> family_meshes(const std::string& family, std::span<const int> ns, double alpha) {
  std::vector<Mesh> meshes;
  for (int n : ns) {
    if (family == "uniform") {
      meshes.push_back(gen_uniform(n));
    } else if (family == "crisscross") {
      meshes.push_back(gen_crisscross_aniso(n, alpha));
    } else if (family == "lens") {
      meshes.push_back(gen_lens(n));
    } else {
      throw InvalidFamily("unknown mesh family '" + family + "' (expected uniform, crisscross or lens)");
    }
  }
  return meshes;
}

CeaReport cea_study(const std::string& family, std::span<const int> ns, double alpha, const ScalarField& exact,
                    const CeaOptions& options) {
  const std::vector<Mesh> meshes = family_meshes(family, ns, alpha);
  CeaOptions opts = options;
  if (family == "lens") opts.solve = false;
  return cea_study(family, meshes, ns, exact, opts);
}

}  // namespace circumlab
