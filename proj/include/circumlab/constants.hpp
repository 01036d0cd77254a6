#pragma once

#include <span>
#include <string>
#include <vector>

#include "circumlab/geometry.hpp"

namespace circumlab {

/// Which constrained Sobolev quotient is minimized.
///   A1      |w|_1 / |w|_0, w with zero mean on the edge p1 -> p2
///   A2Edge  |w|_1 / |w|_0, w with zero mean on the edge p1 -> p3
///   B       |v|_2 / |v|_1, v vanishing at the three apexes
///   D       |v|_2 / |v|_0, v vanishing at the three apexes
/// (|.|_2 carries weight 2 on the mixed derivative.)
enum class QuotientKind { A1, A2Edge, B, D };

std::string to_string(QuotientKind kind);

struct HistoryPoint {
  int degree = 0;
  double value = 0;
};

/// Minimum of a Rayleigh quotient over polynomials of total degree <= N.
///
/// Each value is the quotient of an explicit trial polynomial, so it is an
/// upper bound of the infimum over the full Sobolev space; `history` is
/// non-increasing in the degree.
struct QuotientEstimate {
  QuotientKind kind = QuotientKind::A1;
  Triangle triangle;
  int degree = 0;
  double value = 0;
  std::vector<HistoryPoint> history;  // degrees kMinSubspaceDegree..degree
  double uncertainty = 0;             // last decrement of the history
  double gram_condition = 0;          // estimated condition of the denominator Gram matrix
};

inline constexpr int kMinSubspaceDegree = 4;
inline constexpr int kMaxSubspaceDegree = 14;

/// Estimated denominator Gram condition above which IllConditioned is thrown.
/// Gram matrices are factored in 113-bit arithmetic, so this leaves about
/// eight correct digits in the reduced pencil in the worst admitted case.
inline constexpr double kMaxGramCondition = 1e26;

/// Maximum positive root x of 1/x + tan(1/x) = 0 (the Babuska-Aziz constant 1/A_2).
double babuska_aziz_root();
/// A_2 = 1 / babuska_aziz_root().
double babuska_aziz_A2();
/// Reference value of D_2 on the right isosceles reference triangle: 1/0.167.
inline constexpr double kReferenceD2 = 1.0 / 0.167;

/// Throws UnsupportedDegree for N outside [4, 14], IllConditioned when the
/// Gram matrix cannot be factored reliably.
QuotientEstimate rayleigh_A(const Triangle& tri, int edge_index, int N);
QuotientEstimate rayleigh_B(const Triangle& tri, int N);
QuotientEstimate rayleigh_D(const Triangle& tri, int N);
QuotientEstimate rayleigh(QuotientKind kind, const Triangle& tri, int N);

/// Exponent bookkeeping for the general-triangle bounds. At p = infinity
/// gamma is +infinity (only gamma/p -> 1/2 is meaningful there).
struct ExponentHelpers {
  double p = 2;
  double tau = 0;
  double gamma = 0;
  double phi = 0;
  double mu = 0;
};

/// Throws InvalidExponent for p < 1.
ExponentHelpers exponent_helpers(double p);

enum class Lemma {
  MeanZeroStretched,     // A_{p1}, A_{p2} on K_{alpha,beta} >= A_p / sqrt 2
  SecondOverFirst,       // B_p(K_{alpha,beta}) >= A_p / sqrt 2
  SecondOverZero,        // D_p(K_{alpha,beta}) >= D_p / 2
  RightTriangle,         // B_p(K) >= A_p/(2R), D_p(K) >= D_p/(4R^2), axis-parallel legs
  GeneralFirst,          // B_p(K) >= A_p / (2^phi sqrt 3 R), longest edge of length 2
  GeneralZero,           // D_p(K) >= D_p / (2^mu 3 R^2)
};

std::string to_string(Lemma lemma);

struct LemmaCheck {
  Lemma lemma = Lemma::GeneralFirst;
  QuotientKind quantity = QuotientKind::B;
  double computed = 0;
  double bound = 0;
  bool pass = false;
};

struct AuditRecord {
  Triangle triangle;
  int degree = 0;
  std::vector<LemmaCheck> checks;
  bool all_pass() const;
};

/// Audits every lemma whose hypothesis the triangle meets (p = 2). The
/// general-triangle lemmas are evaluated on the canonical form of `tri`.
AuditRecord lemma_inequality_audit(const Triangle& tri, int N);
/// Audits exactly the requested lemmas; throws NotApplicable if the
/// triangle fails one's hypothesis.
AuditRecord lemma_inequality_audit(const Triangle& tri, int N, std::span<const Lemma> lemmas);

/// (0,0), (alpha,0), (0,beta) with alpha^2 + beta^2 = 2 and 0 < beta <= 1 <= alpha < sqrt 2.
bool is_stretched_reference(const Triangle& tri);
/// Right triangle whose legs are parallel to the coordinate axes.
bool is_axis_right_triangle(const Triangle& tri);

}  // namespace circumlab
