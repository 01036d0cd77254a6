#include "circumlab/constants.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "circumlab/errors.hpp"
#include "circumlab/polynomial.hpp"

namespace circumlab {

namespace {

// 113-bit significand: monomial Gram matrices at degree 14 have condition
// numbers far beyond what double or long double can factor.
using Quad = __float128;

Quad qsqrt(Quad a) {
  if (a <= 0) return 0;
  Quad y = std::sqrt(static_cast<double>(a));
  for (int k = 0; k < 3; ++k) y = (y + a / y) / 2;
  return y;
}

Quad qabs(Quad a) { return a < 0 ? -a : a; }

class QMatrix {
 public:
  explicit QMatrix(std::size_t n) : n_(n), a_(n * n, Quad(0)) {}
  std::size_t size() const { return n_; }
  Quad& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  Quad operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<Quad> a_;
};

/// i! j! / (i + j + 2)! = integral of xi^i eta^j over the reference triangle.
class ReferenceMoments {
 public:
  explicit ReferenceMoments(int max_total) : fact_(static_cast<std::size_t>(max_total + 3), Quad(1)) {
    for (std::size_t k = 1; k < fact_.size(); ++k) fact_[k] = fact_[k - 1] * static_cast<Quad>(k);
  }
  Quad operator()(int i, int j) const {
    return fact_[static_cast<std::size_t>(i)] * fact_[static_cast<std::size_t>(j)] /
           fact_[static_cast<std::size_t>(i + j + 2)];
  }

 private:
  std::vector<Quad> fact_;
};

struct Monomial {
  int i, j;
};

std::vector<Monomial> graded_monomials(int degree) {
  std::vector<Monomial> out;
  for (int d = 0; d <= degree; ++d) {
    for (int j = 0; j <= d; ++j) out.push_back({d - j, j});
  }
  return out;
}

// A scaled monomial c * xi^i eta^j; c == 0 marks a vanishing derivative.
struct Term {
  Quad c;
  int i, j;
};

std::array<Term, 2> gradient(Monomial m) {
  return {Term{static_cast<Quad>(m.i), m.i - 1, m.j}, Term{static_cast<Quad>(m.j), m.i, m.j - 1}};
}

std::array<std::array<Term, 2>, 2> hessian(Monomial m) {
  const Term xx{static_cast<Quad>(m.i * (m.i - 1)), m.i - 2, m.j};
  const Term xy{static_cast<Quad>(m.i * m.j), m.i - 1, m.j - 1};
  const Term yy{static_cast<Quad>(m.j * (m.j - 1)), m.i, m.j - 2};
  return {{{xx, xy}, {xy, yy}}};
}

/// Affine pullback data for x = p1 + J (xi, eta): metric G = J^{-1} J^{-T} and |det J|.
struct Pullback {
  Quad G[2][2];
  Quad det;
};

Pullback pullback(const Triangle& tri) {
  const Quad j00 = static_cast<Quad>(tri[1].x) - tri[0].x, j01 = static_cast<Quad>(tri[2].x) - tri[0].x;
  const Quad j10 = static_cast<Quad>(tri[1].y) - tri[0].y, j11 = static_cast<Quad>(tri[2].y) - tri[0].y;
  const Quad det = j00 * j11 - j01 * j10;
  // J^{-1} = [ j11 -j01; -j10 j00 ] / det
  const Quad m00 = j11 / det, m01 = -j01 / det, m10 = -j10 / det, m11 = j00 / det;
  Pullback pb;
  pb.G[0][0] = m00 * m00 + m01 * m01;
  pb.G[0][1] = pb.G[1][0] = m00 * m10 + m01 * m11;
  pb.G[1][1] = m10 * m10 + m11 * m11;
  pb.det = qabs(det);
  return pb;
}

enum class Form { L2, H1, H2 };

/// Bilinear form between all monomials of total degree <= N on the physical triangle.
QMatrix monomial_gram(Form form, int N, const Pullback& pb, const ReferenceMoments& I) {
  const auto monos = graded_monomials(N);
  QMatrix M(monos.size());
  auto integral = [&I](const Term& a, const Term& b) -> Quad {
    if (a.c == 0 || b.c == 0) return 0;
    return a.c * b.c * I(a.i + b.i, a.j + b.j);
  };
  for (std::size_t p = 0; p < monos.size(); ++p) {
    for (std::size_t q = p; q < monos.size(); ++q) {
      const Monomial a = monos[p], b = monos[q];
      Quad v = 0;
      switch (form) {
        case Form::L2:
          v = I(a.i + b.i, a.j + b.j);
          break;
        case Form::H1: {
          const auto ga = gradient(a), gb = gradient(b);
          for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) v += pb.G[k][l] * integral(ga[static_cast<std::size_t>(k)], gb[static_cast<std::size_t>(l)]);
          }
          break;
        }
        case Form::H2: {
          // <J^-T Ha J^-1, J^-T Hb J^-1>_F = tr(Ha G Hb G)
          const auto ha = hessian(a), hb = hessian(b);
          for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) {
              for (int m = 0; m < 2; ++m) {
                for (int n = 0; n < 2; ++n) {
                  const Quad g = pb.G[l][m] * pb.G[n][k];
                  if (g == 0) continue;
                  v += g * integral(ha[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)],
                                    hb[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]);
                }
              }
            }
          }
          break;
        }
      }
      M(p, q) = M(q, p) = v * pb.det;
    }
  }
  return M;
}

/// A basis function as a sparse combination of graded monomial indices.
struct BasisFunction {
  int degree;
  std::vector<std::pair<std::size_t, Quad>> terms;
};

/// Zero mean on the reference edge eta = 0 (edge 1) or xi = 0 (edge 2):
/// m - mean(m), for every non-constant monomial.
std::vector<BasisFunction> edge_mean_zero_basis(int N, int edge_index) {
  std::vector<BasisFunction> out;
  for (const Monomial m : graded_monomials(N)) {
    if (m.i + m.j == 0) continue;
    BasisFunction f{m.i + m.j, {{graded_index(m.i, m.j), Quad(1)}}};
    const int along = edge_index == 1 ? m.i : m.j;
    const int across = edge_index == 1 ? m.j : m.i;
    if (across == 0) f.terms.push_back({0, -Quad(1) / static_cast<Quad>(along + 1)});
    out.push_back(std::move(f));
  }
  return out;
}

/// Vanishing at (0,0), (1,0), (0,1): m - I_h m for every monomial of degree >= 2.
std::vector<BasisFunction> vertex_vanishing_basis(int N) {
  std::vector<BasisFunction> out;
  for (const Monomial m : graded_monomials(N)) {
    if (m.i + m.j < 2) continue;
    BasisFunction f{m.i + m.j, {{graded_index(m.i, m.j), Quad(1)}}};
    if (m.j == 0) f.terms.push_back({graded_index(1, 0), Quad(-1)});
    if (m.i == 0) f.terms.push_back({graded_index(0, 1), Quad(-1)});
    out.push_back(std::move(f));
  }
  return out;
}

QMatrix restrict_to(const QMatrix& mono, const std::vector<BasisFunction>& basis) {
  QMatrix out(basis.size());
  for (std::size_t p = 0; p < basis.size(); ++p) {
    for (std::size_t q = p; q < basis.size(); ++q) {
      Quad v = 0;
      for (const auto& [a, ca] : basis[p].terms) {
        for (const auto& [b, cb] : basis[q].terms) v += ca * cb * mono(a, b);
      }
      out(p, q) = out(q, p) = v;
    }
  }
  return out;
}

/// In-place lower Cholesky factor; returns the estimated condition (max/min pivot)^2.
double cholesky(QMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    Quad d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > 0)) throw IllConditioned("denominator Gram matrix is not numerically positive definite");
    const Quad ljj = qsqrt(d);
    a(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Quad s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / ljj;
    }
    for (std::size_t i = 0; i < j; ++i) a(i, j) = 0;
  }
  Quad lo = a(0, 0), hi = a(0, 0);
  for (std::size_t j = 1; j < n; ++j) {
    lo = std::min(lo, a(j, j));
    hi = std::max(hi, a(j, j));
  }
  const double r = static_cast<double>(hi / lo);
  return r * r;
}

/// Solves L x = b in place (L lower triangular).
void forward_solve(const QMatrix& L, std::vector<Quad>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    Quad s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * b[k];
    b[i] = s / L(i, i);
  }
}

/// L^{-1} num L^{-T}, symmetrized.
QMatrix reduce_pencil(const QMatrix& L, const QMatrix& num) {
  const std::size_t n = L.size();
  QMatrix W(n);  // W = L^{-1} num, column by column
  std::vector<Quad> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = num(r, c);
    forward_solve(L, col);
    for (std::size_t r = 0; r < n; ++r) W(r, c) = col[r];
  }
  QMatrix C(n);  // C^T = L^{-1} W^T
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) col[k] = W(r, k);
    forward_solve(L, col);
    for (std::size_t k = 0; k < n; ++k) C(k, r) = col[k];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) C(i, j) = C(j, i) = (C(i, j) + C(j, i)) / 2;
  }
  return C;
}

/// Smallest Rayleigh quotient of the leading dim x dim block: the eigenvector
/// comes from a double-precision solve, the quotient itself is evaluated in
/// Quad so it is the exact quotient of a concrete trial vector.
double smallest_quotient(const QMatrix& C, std::size_t dim) {
  Eigen::MatrixXd Cd(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      Cd(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(C(i, j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Cd);
  if (eig.info() != Eigen::Success) throw IllConditioned("symmetric eigensolver failed");
  const Eigen::VectorXd y = eig.eigenvectors().col(0);
  Quad num = 0, den = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    const Quad yi = y(static_cast<Eigen::Index>(i));
    Quad row = 0;
    for (std::size_t j = 0; j < dim; ++j) row += C(i, j) * static_cast<Quad>(y(static_cast<Eigen::Index>(j)));
    num += yi * row;
    den += yi * yi;
  }
  return static_cast<double>(num / den);
}

void check_degree(int N) {
  if (N < kMinSubspaceDegree || N > kMaxSubspaceDegree) {
    throw UnsupportedDegree("subspace degree " + std::to_string(N) + " outside [4, 14]");
  }
}

QuotientEstimate estimate(QuotientKind kind, const Triangle& tri, int N) {
  check_degree(N);
  const ReferenceMoments I(2 * N);
  const Pullback pb = pullback(tri);

  std::vector<BasisFunction> basis;
  Form num_form = Form::H1, den_form = Form::L2;
  switch (kind) {
    case QuotientKind::A1:
      basis = edge_mean_zero_basis(N, 1);
      break;
    case QuotientKind::A2Edge:
      basis = edge_mean_zero_basis(N, 2);
      break;
    case QuotientKind::B:
      basis = vertex_vanishing_basis(N);
      num_form = Form::H2;
      den_form = Form::H1;
      break;
    case QuotientKind::D:
      basis = vertex_vanishing_basis(N);
      num_form = Form::H2;
      den_form = Form::L2;
      break;
  }

  QMatrix L = restrict_to(monomial_gram(den_form, N, pb, I), basis);
  const QMatrix num = restrict_to(monomial_gram(num_form, N, pb, I), basis);
  const double condition = cholesky(L);
  if (!(condition <= kMaxGramCondition)) {
    throw IllConditioned("estimated Gram condition " + std::to_string(condition) + " exceeds threshold");
  }
  const QMatrix C = reduce_pencil(L, num);

  QuotientEstimate est;
  est.kind = kind;
  est.triangle = tri;
  est.degree = N;
  est.gram_condition = condition;
  double best = std::numeric_limits<double>::infinity();
  for (int n = kMinSubspaceDegree; n <= N; ++n) {
    const auto dim = static_cast<std::size_t>(
        std::count_if(basis.begin(), basis.end(), [n](const BasisFunction& f) { return f.degree <= n; }));
    // The previous minimizer, padded with zeros, is still admissible.
    best = std::min(best, smallest_quotient(C, dim));
    est.history.push_back({n, std::sqrt(best)});
  }
  est.value = est.history.back().value;
  est.uncertainty = est.history.size() > 1 ? est.history[est.history.size() - 2].value - est.value : 0.0;
  return est;
}

}  // namespace

std::string to_string(QuotientKind kind) {
  switch (kind) {
    case QuotientKind::A1:
      return "A1";
    case QuotientKind::A2Edge:
      return "A2-edge";
    case QuotientKind::B:
      return "B";
    case QuotientKind::D:
      return "D";
  }
  return "?";
}

double babuska_aziz_root() {
  // y = 1/x solves y + tan(y) = 0; the smallest positive root lies in (pi/2, pi).
  using Long = long double;
  Long lo = std::numbers::pi_v<Long> / 2, hi = std::numbers::pi_v<Long>;
  for (int it = 0; it < 200 && hi - lo > 1e-18L; ++it) {
    const Long mid = (lo + hi) / 2;
    if (mid + std::tan(mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(1 / ((lo + hi) / 2));
}

double babuska_aziz_A2() { return 1.0 / babuska_aziz_root(); }

QuotientEstimate rayleigh_A(const Triangle& tri, int edge_index, int N) {
  if (edge_index != 1 && edge_index != 2) throw InconsistentSpec("edge_index must be 1 or 2");
  return estimate(edge_index == 1 ? QuotientKind::A1 : QuotientKind::A2Edge, tri, N);
}

QuotientEstimate rayleigh_B(const Triangle& tri, int N) { return estimate(QuotientKind::B, tri, N); }

QuotientEstimate rayleigh_D(const Triangle& tri, int N) { return estimate(QuotientKind::D, tri, N); }

QuotientEstimate rayleigh(QuotientKind kind, const Triangle& tri, int N) { return estimate(kind, tri, N); }

ExponentHelpers exponent_helpers(double p) {
  if (!(p >= 1.0)) throw InvalidExponent("exponent p must be >= 1");
  ExponentHelpers e;
  e.p = p;
  if (std::isinf(p)) {
    e.tau = 0;
    e.gamma = std::numeric_limits<double>::infinity();
    e.phi = 4;
    e.mu = 4;
    return e;
  }
  e.tau = p <= 2 ? 1 - p / 2 : 0;
  e.gamma = p <= 2 ? 0 : p / 2 - 1;
  e.phi = p <= 2 ? 1.5 + 2 / p : 4 - 3 / p;
  e.mu = p <= 2 ? 2 + 2 / p : 4 - 2 / p;
  return e;
}

std::string to_string(Lemma lemma) {
  switch (lemma) {
    case Lemma::MeanZeroStretched:
      return "mean-zero-stretched";
    case Lemma::SecondOverFirst:
      return "second-over-first-stretched";
    case Lemma::SecondOverZero:
      return "second-over-zero-stretched";
    case Lemma::RightTriangle:
      return "right-triangle";
    case Lemma::GeneralFirst:
      return "general-second-over-first";
    case Lemma::GeneralZero:
      return "general-second-over-zero";
  }
  return "?";
}

bool AuditRecord::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
}

bool is_stretched_reference(const Triangle& tri) {
  constexpr double tol = 1e-12;
  if (tri[0].x != 0.0 || tri[0].y != 0.0 || tri[1].y != 0.0 || tri[2].x != 0.0) return false;
  const double alpha = tri[1].x, beta = tri[2].y;
  return std::abs(alpha * alpha + beta * beta - 2.0) <= tol && beta > 0 && beta <= 1.0 + tol &&
         alpha >= 1.0 - tol && alpha < std::numbers::sqrt2;
}

bool is_axis_right_triangle(const Triangle& tri) {
  const double scale = metrics(tri).h_K;
  const double tol = 1e-14 * scale;
  for (int k = 0; k < 3; ++k) {
    const Point c = tri[k], u = tri[(k + 1) % 3] - c, w = tri[(k + 2) % 3] - c;
    const bool uh_wv = std::abs(u.y) <= tol && std::abs(w.x) <= tol;
    const bool uv_wh = std::abs(u.x) <= tol && std::abs(w.y) <= tol;
    if (uh_wv || uv_wh) return true;
  }
  return false;
}

namespace {

bool applicable(Lemma lemma, const Triangle& tri) {
  switch (lemma) {
    case Lemma::MeanZeroStretched:
    case Lemma::SecondOverFirst:
    case Lemma::SecondOverZero:
      return is_stretched_reference(tri);
    case Lemma::RightTriangle:
      return is_axis_right_triangle(tri);
    case Lemma::GeneralFirst:
    case Lemma::GeneralZero:
      return true;
  }
  return false;
}

LemmaCheck check(Lemma lemma, QuotientKind kind, double computed, double bound) {
  return {lemma, kind, computed, bound, computed >= bound};
}

}  // namespace

AuditRecord lemma_inequality_audit(const Triangle& tri, int N, std::span<const Lemma> lemmas) {
  check_degree(N);
  for (Lemma l : lemmas) {
    if (!applicable(l, tri)) throw NotApplicable("triangle does not meet the hypothesis of " + to_string(l));
  }
  const double A2 = babuska_aziz_A2();
  const double D2 = kReferenceD2;
  const ExponentHelpers ex = exponent_helpers(2.0);

  // Quotients on the input triangle, computed lazily and shared between lemmas.
  std::optional<double> a1, a2, b, d;
  auto get = [&](std::optional<double>& slot, QuotientKind kind) {
    if (!slot) slot = estimate(kind, tri, N).value;
    return *slot;
  };

  AuditRecord rec;
  rec.triangle = tri;
  rec.degree = N;
  const double R = metrics(tri).R_K;
  for (Lemma l : lemmas) {
    switch (l) {
      case Lemma::MeanZeroStretched:
        rec.checks.push_back(check(l, QuotientKind::A1, get(a1, QuotientKind::A1), A2 / std::numbers::sqrt2));
        rec.checks.push_back(
            check(l, QuotientKind::A2Edge, get(a2, QuotientKind::A2Edge), A2 / std::numbers::sqrt2));
        break;
      case Lemma::SecondOverFirst:
        rec.checks.push_back(check(l, QuotientKind::B, get(b, QuotientKind::B), A2 / std::numbers::sqrt2));
        break;
      case Lemma::SecondOverZero:
        rec.checks.push_back(check(l, QuotientKind::D, get(d, QuotientKind::D), D2 / 2));
        break;
      case Lemma::RightTriangle:
        rec.checks.push_back(check(l, QuotientKind::B, get(b, QuotientKind::B), A2 / (2 * R)));
        rec.checks.push_back(check(l, QuotientKind::D, get(d, QuotientKind::D), D2 / (4 * R * R)));
        break;
      case Lemma::GeneralFirst:
      case Lemma::GeneralZero: {
        const CanonicalForm cf = canonicalize(tri);
        const Triangle canon = canonical_triangle(cf);
        const double Rc = cf.canonical_circumradius();
        if (l == Lemma::GeneralFirst) {
          const double bound = A2 / (std::pow(2.0, ex.phi) * std::sqrt(3.0) * Rc);
          rec.checks.push_back(check(l, QuotientKind::B, estimate(QuotientKind::B, canon, N).value, bound));
        } else {
          const double bound = D2 / (std::pow(2.0, ex.mu) * 3.0 * Rc * Rc);
          rec.checks.push_back(check(l, QuotientKind::D, estimate(QuotientKind::D, canon, N).value, bound));
        }
        break;
      }
    }
  }
  return rec;
}

AuditRecord lemma_inequality_audit(const Triangle& tri, int N) {
  std::vector<Lemma> lemmas;
  for (Lemma l : {Lemma::MeanZeroStretched, Lemma::SecondOverFirst, Lemma::SecondOverZero, Lemma::RightTriangle,
                  Lemma::GeneralFirst, Lemma::GeneralZero}) {
    if (applicable(l, tri)) lemmas.push_back(l);
  }
  return lemma_inequality_audit(tri, N, lemmas);
}

}  // namespace circumlab
