#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "circumlab/geometry.hpp"

namespace circumlab {

/// Position of the monomial x^i y^j in graded order
/// 1, x, y, x^2, xy, y^2, x^3, ... (total degree first, then descending x power).
constexpr std::size_t graded_index(int i, int j) {
  const auto d = static_cast<std::size_t>(i + j);
  return d * (d + 1) / 2 + static_cast<std::size_t>(j);
}

/// Number of monomials of total degree <= degree.
constexpr std::size_t graded_count(int degree) {
  const auto d = static_cast<std::size_t>(degree);
  return (d + 1) * (d + 2) / 2;
}

/// Dense bivariate polynomial with coefficients in graded order.
class Polynomial2 {
 public:
  Polynomial2() : Polynomial2(0) {}
  explicit Polynomial2(int degree);
  /// Coefficients in graded order; the length must be a triangular number.
  explicit Polynomial2(std::span<const double> graded_coeffs);

  static Polynomial2 monomial(int i, int j, double c = 1.0);

  int degree() const { return degree_; }
  /// Highest total degree with a nonzero coefficient (0 for the zero polynomial).
  int effective_degree() const;

  double coeff(int i, int j) const;
  double& coeff(int i, int j);
  const std::vector<double>& coefficients() const { return c_; }

  double operator()(Point p) const;
  Polynomial2 dx() const;
  Polynomial2 dy() const;

  Polynomial2& operator+=(const Polynomial2& o);
  Polynomial2& operator-=(const Polynomial2& o);
  Polynomial2& operator*=(double s);
  friend Polynomial2 operator+(Polynomial2 a, const Polynomial2& b) { return a += b; }
  friend Polynomial2 operator-(Polynomial2 a, const Polynomial2& b) { return a -= b; }
  friend Polynomial2 operator*(double s, Polynomial2 a) { return a *= s; }
  friend Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b);

 private:
  void grow(int degree);

  int degree_;
  std::vector<double> c_;
};

}  // namespace circumlab
