#include "circumlab/interp.hpp"

#include <cmath>

#include "circumlab/errors.hpp"
#include "circumlab/seminorm.hpp"

namespace circumlab {

AffineFunction p1_interpolate(const Triangle& tri, const ScalarField& v) {
  using Long = long double;
  const Long v0 = v.value(tri[0]), v1 = v.value(tri[1]), v2 = v.value(tri[2]);
  const Long e1x = static_cast<Long>(tri[1].x) - tri[0].x, e1y = static_cast<Long>(tri[1].y) - tri[0].y;
  const Long e2x = static_cast<Long>(tri[2].x) - tri[0].x, e2y = static_cast<Long>(tri[2].y) - tri[0].y;
  const Long det = e1x * e2y - e1y * e2x;
  const Long d1 = v1 - v0, d2 = v2 - v0;
  const Long gx = (d1 * e2y - d2 * e1y) / det;
  const Long gy = (e1x * d2 - e2x * d1) / det;
  return {static_cast<double>(v0 - gx * tri[0].x - gy * tri[0].y), static_cast<double>(gx), static_cast<double>(gy)};
}

ScalarField interpolation_error_field(const Triangle& tri, const ScalarField& v) {
  const AffineFunction ih = p1_interpolate(tri, v);
  return v.minus_affine(ih.c0, ih.cx, ih.cy, v.name() + "-Ih");
}

namespace {

InterpErrorReport assemble_report(const Triangle& tri, double p, double e0, double e1, double s2) {
  InterpErrorReport r;
  r.metrics = metrics(tri);
  r.p = p;
  r.err_0p = e0;
  r.err_1p = e1;
  r.err_full = std::isinf(p) ? std::max(e0, e1) : std::pow(std::pow(e0, p) + std::pow(e1, p), 1.0 / p);
  r.semi_2p = s2;
  r.ratio_1 = s2 > 0 ? e1 / s2 : 0.0;
  r.kobayashi_bound = r.metrics.C_K;
  r.circumradius_bound = r.metrics.R_K;
  r.empirical_quotient = s2 > 0 ? e1 / (r.metrics.R_K * s2) : 0.0;
  r.hypothesis_ok = r.metrics.R_K <= 1.0;
  const double constant = p == 2.0 ? r.metrics.C_K : kEmpiricalCircumradiusConstant * r.metrics.R_K;
  r.bound_satisfied = e1 <= constant * s2 + kBoundTolerance;
  return r;
}

}  // namespace

InterpErrorReport error_report(const Triangle& tri, const ScalarField& v, double p, const QuadratureRule& rule) {
  const ScalarField err = interpolation_error_field(tri, v);
  return assemble_report(tri, p, seminorm(err, {0, p}, tri, rule), seminorm(err, {1, p}, tri, rule),
                         seminorm(v, {2, p}, tri, rule));
}

InterpErrorReport error_report(const Triangle& tri, const ScalarField& v, double p) {
  const ScalarField err = interpolation_error_field(tri, v);
  return assemble_report(tri, p, seminorm(err, {0, p}, tri), seminorm(err, {1, p}, tri), seminorm(v, {2, p}, tri));
}

std::vector<NeedleRow> needle_study(std::span<const double> h_list, double alpha, const ScalarField& v, double p) {
  if (!(alpha > 1.0)) throw InvalidFamily("needle family needs alpha > 1");
  for (double h : h_list) {
    if (!(h > 0.0 && h < 1.0)) throw InvalidFamily("needle family needs 0 < h < 1");
  }
  std::vector<NeedleRow> rows;
  rows.reserve(h_list.size());
  for (double h : h_list) rows.push_back({h, error_report(needle(h, alpha), v, p)});
  return rows;
}

}  // namespace circumlab
