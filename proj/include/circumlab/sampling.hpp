#pragma once

#include <cstdint>
#include <random>

#include "circumlab/geometry.hpp"
#include "circumlab/polynomial.hpp"

namespace circumlab {

/// Seeded source of random shapes for sweeps. The mapping from seed to
/// output depends only on mt19937_64, so it is the same on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive bounds

  /// Vertices uniform in [-1, 1]^2, redrawn until non-degenerate.
  Triangle triangle();
  /// Legs parallel to the axes with lengths in [0.05, 2], random corner and quadrant.
  Triangle axis_right_triangle();
  /// (-1,0), (1,0), (s, eta t) with the baseline as longest edge.
  Triangle canonical_triangle();
  /// Graded coefficients uniform in [-1, 1], total degree `degree`.
  Polynomial2 polynomial(int degree);

 private:
  std::mt19937_64 rng_;
};

}  // namespace circumlab
