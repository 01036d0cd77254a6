#include "circumlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace circumlab {

Polynomial2::Polynomial2(int degree) : degree_(degree), c_(graded_count(degree), 0.0) {
  if (degree < 0) throw std::invalid_argument("negative polynomial degree");
}

Polynomial2::Polynomial2(std::span<const double> graded_coeffs) : degree_(0) {
  int d = 0;
  while (graded_count(d) < graded_coeffs.size()) ++d;
  if (graded_coeffs.empty() || graded_count(d) != graded_coeffs.size()) {
    throw std::invalid_argument("polynomial coefficient count " + std::to_string(graded_coeffs.size()) +
                                " is not (d+1)(d+2)/2 for any degree d");
  }
  degree_ = d;
  c_.assign(graded_coeffs.begin(), graded_coeffs.end());
}

Polynomial2 Polynomial2::monomial(int i, int j, double c) {
  Polynomial2 p(i + j);
  p.coeff(i, j) = c;
  return p;
}

int Polynomial2::effective_degree() const {
  for (int d = degree_; d > 0; --d) {
    for (int j = 0; j <= d; ++j) {
      if (coeff(d - j, j) != 0.0) return d;
    }
  }
  return 0;
}

double Polynomial2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > degree_) return 0.0;
  return c_[graded_index(i, j)];
}

double& Polynomial2::coeff(int i, int j) { return c_.at(graded_index(i, j)); }

double Polynomial2::operator()(Point p) const {
  // Horner in y for each power of x, then Horner in x.
  double result = 0.0;
  for (int i = degree_; i >= 0; --i) {
    double inner = 0.0;
    for (int j = degree_ - i; j >= 0; --j) inner = inner * p.y + c_[graded_index(i, j)];
    result = result * p.x + inner;
  }
  return result;
}

Polynomial2 Polynomial2::dx() const {
  Polynomial2 r(std::max(degree_ - 1, 0));
  for (int i = 1; i <= degree_; ++i) {
    for (int j = 0; i + j <= degree_; ++j) r.coeff(i - 1, j) = i * coeff(i, j);
  }
  return r;
}

Polynomial2 Polynomial2::dy() const {
  Polynomial2 r(std::max(degree_ - 1, 0));
  for (int i = 0; i <= degree_; ++i) {
    for (int j = 1; i + j <= degree_; ++j) r.coeff(i, j - 1) = j * coeff(i, j);
  }
  return r;
}

void Polynomial2::grow(int degree) {
  if (degree <= degree_) return;
  std::vector<double> c(graded_count(degree), 0.0);
  std::copy(c_.begin(), c_.end(), c.begin());  // graded order is prefix-stable
  c_ = std::move(c);
  degree_ = degree;
}

Polynomial2& Polynomial2::operator+=(const Polynomial2& o) {
  grow(o.degree_);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Polynomial2& Polynomial2::operator-=(const Polynomial2& o) {
  grow(o.degree_);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Polynomial2& Polynomial2::operator*=(double s) {
  for (double& c : c_) c *= s;
  return *this;
}

Polynomial2 operator*(const Polynomial2& a, const Polynomial2& b) {
  Polynomial2 r(a.degree_ + b.degree_);
  for (int ia = 0; ia <= a.degree_; ++ia) {
    for (int ja = 0; ia + ja <= a.degree_; ++ja) {
      const double ca = a.coeff(ia, ja);
      if (ca == 0.0) continue;
      for (int ib = 0; ib <= b.degree_; ++ib) {
        for (int jb = 0; ib + jb <= b.degree_; ++jb) r.coeff(ia + ib, ja + jb) += ca * b.coeff(ib, jb);
      }
    }
  }
  return r;
}

}  // namespace circumlab
