#include "circumlab/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "circumlab/errors.hpp"

namespace circumlab {

namespace {

void validate(const ScalarField& f, SeminormSpec spec) {
  if (spec.order < 0 || spec.order > 2) {
    throw InconsistentSpec("seminorm order " + std::to_string(spec.order) + " not in {0,1,2}");
  }
  if (!(spec.p >= 1.0)) throw InvalidExponent("exponent p must be >= 1");
  if (spec.order == 2 && !f.has_hessian()) {
    throw InconsistentSpec("order-2 seminorm of '" + f.name() + "' needs second derivatives");
  }
}

double powp(double v, double p) {
  v = std::abs(v);
  if (p == 2.0) return v * v;
  if (p == 1.0) return v;
  return std::pow(v, p);
}

double integrand(const ScalarField& f, int order, double p, Point x) {
  switch (order) {
    case 0:
      return powp(f.value(x), p);
    case 1: {
      const Gradient g = f.grad(x);
      return powp(g.x, p) + powp(g.y, p);
    }
    default: {
      const Hessian h = f.hess(x);
      return powp(h.xx, p) + powp(h.yy, p) + 2 * powp(h.xy, p);
    }
  }
}

double sup_estimate(const ScalarField& f, int order, const Triangle& tri, int n) {
  double best = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; i + j <= n; ++j) {
      const double l1 = static_cast<double>(i) / n, l2 = static_cast<double>(j) / n;
      const double l0 = 1 - l1 - l2;
      const Point x{l0 * tri[0].x + l1 * tri[1].x + l2 * tri[2].x, l0 * tri[0].y + l1 * tri[1].y + l2 * tri[2].y};
      switch (order) {
        case 0:
          best = std::max(best, std::abs(f.value(x)));
          break;
        case 1: {
          const Gradient g = f.grad(x);
          best = std::max({best, std::abs(g.x), std::abs(g.y)});
          break;
        }
        default: {
          const Hessian h = f.hess(x);
          best = std::max({best, std::abs(h.xx), std::abs(h.yy), std::abs(h.xy)});
        }
      }
    }
  }
  return best;
}

}  // namespace

double seminorm(const ScalarField& f, SeminormSpec spec, const Triangle& tri, const QuadratureRule& rule,
                int sup_grid) {
  validate(f, spec);
  if (std::isinf(spec.p)) return sup_estimate(f, spec.order, tri, std::max(sup_grid, 1));
  double sum = 0.0;
  for (const MappedPoint& q : rule.map_to(tri)) sum += q.w * integrand(f, spec.order, spec.p, q.x);
  if (spec.p == 2.0) return std::sqrt(sum);
  return std::pow(sum, 1.0 / spec.p);
}

std::optional<int> exact_rule_degree(const ScalarField& f, SeminormSpec spec) {
  const auto deg = f.polynomial_degree();
  if (!deg || std::isinf(spec.p)) return std::nullopt;
  if (spec.p != std::floor(spec.p) || static_cast<long>(spec.p) % 2 != 0) return std::nullopt;
  const int d = static_cast<int>(spec.p) * std::max(*deg - spec.order, 0);
  if (d > kMaxRuleDegree) return std::nullopt;
  return std::max(d, kMinRuleDegree);
}

double seminorm(const ScalarField& f, SeminormSpec spec, const Triangle& tri, int sup_grid) {
  validate(f, spec);
  if (std::isinf(spec.p)) return sup_estimate(f, spec.order, tri, std::max(sup_grid, 1));
  if (auto d = exact_rule_degree(f, spec)) return seminorm(f, spec, tri, cached_rule(*d), sup_grid);
  double previous = seminorm(f, spec, tri, cached_rule(4), sup_grid);
  for (int d : {8, 16, kMaxRuleDegree}) {
    const double current = seminorm(f, spec, tri, cached_rule(d), sup_grid);
    if (std::abs(current - previous) <= 1e-8 * std::abs(current)) return current;
    previous = current;
  }
  return previous;
}

}  // namespace circumlab
