#pragma once

#include <string>
#include <vector>

#include "pavoid/bignum.hpp"
#include "pavoid/families.hpp"

namespace pavoid {

/// Exact element a + b*sqrt(5) of Q(sqrt 5). Enough for every constant of
/// the normal-limit families (the golden-ratio tilt lives here), so the
/// degeneracy gamma^2 = 0 is decided exactly rather than to rounding.
struct QSqrt5 {
  Rational a = 0;
  Rational b = 0;

  QSqrt5() = default;
  QSqrt5(Rational a_, Rational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
  QSqrt5(int a_) : a(a_) {}

  static QSqrt5 sqrt5() { return {0, 1}; }

  QSqrt5 operator-() const { return {-a, -b}; }
  friend QSqrt5 operator+(const QSqrt5& x, const QSqrt5& y) { return {x.a + y.a, x.b + y.b}; }
  friend QSqrt5 operator-(const QSqrt5& x, const QSqrt5& y) { return {x.a - y.a, x.b - y.b}; }
  friend QSqrt5 operator*(const QSqrt5& x, const QSqrt5& y) {
    return {x.a * y.a + 5 * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y);
  friend bool operator==(const QSqrt5& x, const QSqrt5& y) { return x.a == y.a && x.b == y.b; }

  bool is_zero() const { return a == 0 && b == 0; }
  int sign() const;
  double to_double() const;
  /// "1/12", "-1/2+1/2*sqrt(5)", "1/25*sqrt(5)".
  std::string str() const;
};

QSqrt5 pow(const QSqrt5& x, int e);

/// D(k, l) = sum_i (k+l-i)! / ((k-i)! (l-i)! i!).
BigInt delannoy(int k, int l);

/// E[C(X,k) C(X,l)] for X ~ Ge(1/2) on {1,2,...}, by the truncated series
/// sum_x 2^-x C(x,k) C(x,l).
long double geometric_binomial_moment(int k, int l, int terms = 400);

/// Weight of sigma_ij in the Hoeffding variance of an order-d U-statistic
/// (1-based i, j).
Rational hoeffding_coefficient(int d, int i, int j);

using Matrix = std::vector<std::vector<double>>;
using ExactMatrix = std::vector<std::vector<QSqrt5>>;

/// gamma^2 = sum_ij hoeffding_coefficient(d,i,j) sigma_ij.
double hoeffding_sigma2(int d, const Matrix& sigma);
QSqrt5 hoeffding_sigma2(int d, const ExactMatrix& sigma);

/// Inputs of the U-statistic and renewal variance formulas.
struct ProjectionSpec {
  int d = 1;
  QSqrt5 mu;
  ExactMatrix sigma;        // Cov(f_i(X), f_j(X))
  std::vector<QSqrt5> cov_with_x;  // Cov(f_i(X), X)
  QSqrt5 nu;                // E X
  QSqrt5 var_x;             // Var X
};

/// Variance of a U-statistic stopped at a renewal time. Throws DomainError
/// unless nu > 0 and the dimensions agree.
QSqrt5 renewal_gamma2(const ProjectionSpec& spec);

struct AsymptoticParams {
  FamilyKind kind = FamilyKind::PairD;
  Pattern sigma = Permutation::identity(1);
  int mean_exponent = 0;
  QSqrt5 mean_coeff;
  int var_exponent = 0;
  QSqrt5 var_coeff;
  bool degenerate = false;
  /// The renewal spec (or plain U-statistic spec for PAIR-D) behind var_coeff.
  ProjectionSpec spec;
  bool renewal = false;
};

/// Mean ~ mean_coeff n^mean_exponent, variance ~ var_coeff n^var_exponent,
/// for sigma in the canonical frame of one of PAIR-D, PAIR-B, PAIR-A,
/// TRIPLE-AAA. Throws NotAMember if sigma is outside the family and
/// DomainError for families without a normal limit.
AsymptoticParams asymptotic_params(const FamilyId& family, const Pattern& sigma);

bool has_normal_limit(FamilyKind kind);

}  // namespace pavoid
