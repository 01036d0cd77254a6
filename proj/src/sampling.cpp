#include "circumlab/sampling.hpp"

#include <cmath>
#include <vector>

#include "circumlab/errors.hpp"

namespace circumlab {

double Sampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Sampler::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng_() % span);
}

Triangle Sampler::triangle() {
  for (;;) {
    const Point a{uniform(-1, 1), uniform(-1, 1)}, b{uniform(-1, 1), uniform(-1, 1)}, c{uniform(-1, 1), uniform(-1, 1)};
    try {
      return Triangle(a, b, c);
    } catch (const DegenerateTriangle&) {
    }
  }
}

Triangle Sampler::axis_right_triangle() {
  const Point corner{uniform(-1, 1), uniform(-1, 1)};
  const double a = uniform(0.05, 2.0) * (uniform(0, 1) < 0.5 ? -1 : 1);
  const double b = uniform(0.05, 2.0) * (uniform(0, 1) < 0.5 ? -1 : 1);
  return Triangle(corner, corner + Point{a, 0}, corner + Point{0, b});
}

Triangle Sampler::canonical_triangle() {
  const double s = uniform(-0.95, 0.95);
  const double t = std::sqrt(1 - s * s);
  const double eta_max = std::sqrt((3 + std::abs(s)) / (1 + std::abs(s)));
  const double eta = uniform(0.05, eta_max);
  return Triangle({-1, 0}, {1, 0}, {s, eta * t});
}

Polynomial2 Sampler::polynomial(int degree) {
  std::vector<double> c(graded_count(degree));
  for (double& x : c) x = uniform(-1, 1);
  return Polynomial2(c);
}

}  // namespace circumlab
