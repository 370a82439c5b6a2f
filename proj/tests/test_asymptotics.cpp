#include <gtest/gtest.h>

#include <cmath>

#include "pavoid/asymptotics.hpp"
#include "pavoid/error.hpp"

using namespace pavoid;

namespace {

const double kP = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

namespace pavoid {
void PrintTo(const QSqrt5& x, std::ostream* os) { *os << x.str(); }
}  // namespace pavoid

namespace {

QSqrt5 q(long a, long b = 1) { return QSqrt5(Rational(a, b)); }

AsymptoticParams params(FamilyKind kind, const char* sigma) {
  return asymptotic_params(canonical_family(kind), Permutation::parse(sigma));
}

// For a single block (d = 1) the renewal variance reduces to
// Var(f(X) - (mu/nu) X) / nu; evaluate it from the law of X directly.
template <class Law>
double one_block_renewal_variance(Law law, int max_x, int ell) {
  double nu = 0, mu = 0;
  for (int x = 1; x <= max_x; ++x) {
    nu += law(x) * x;
    mu += law(x) * binomial(x, ell).convert_to<double>();
  }
  double mean = 0, second = 0;
  for (int x = 1; x <= max_x; ++x) {
    const double y = binomial(x, ell).convert_to<double>() - mu / nu * x;
    mean += law(x) * y;
    second += law(x) * y * y;
  }
  return (second - mean * mean) / nu;
}

}  // namespace

TEST(Delannoy, Values) {
  EXPECT_EQ(delannoy(1, 1), 3);
  EXPECT_EQ(delannoy(2, 2), 13);
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(delannoy(k, 0), 1);
}

TEST(Delannoy, RecurrenceAndSymmetry) {
  for (int k = 1; k <= 20; ++k) {
    for (int l = 1; l <= 20; ++l) {
      EXPECT_EQ(delannoy(k, l), delannoy(k - 1, l) + delannoy(k, l - 1) + delannoy(k - 1, l - 1));
      EXPECT_EQ(delannoy(k, l), delannoy(l, k));
    }
  }
}

TEST(Delannoy, GeometricBinomialMoments) {
  for (int k = 0; k <= 5; ++k) {
    for (int l = 0; l <= 5; ++l) {
      if (k == 0 && l == 0) continue;
      const long double expected = 2.0L * static_cast<long double>(delannoy(k, l).convert_to<double>());
      EXPECT_LT(std::fabs(geometric_binomial_moment(k, l) / expected - 1.0L), 1e-10L) << k << "," << l;
    }
  }
}

TEST(Hoeffding, SpecExamples) {
  EXPECT_DOUBLE_EQ(hoeffding_sigma2(1, Matrix{{2.5}}), 2.5);
  EXPECT_NEAR(hoeffding_sigma2(2, Matrix{{0, 0}, {0, 0.25}}), 1.0 / 12, 1e-15);
  EXPECT_EQ(hoeffding_sigma2(3, Matrix(3, std::vector<double>(3, 0.0))), 0.0);
  EXPECT_EQ(hoeffding_coefficient(2, 2, 2), Rational(1, 3));
  EXPECT_THROW(hoeffding_sigma2(2, Matrix{{1}}), DomainError);
}

TEST(Hoeffding, LinearAndTransposeInvariant) {
  RandomStream rng(1, 0);
  for (int d = 1; d <= 5; ++d) {
    Matrix a(d, std::vector<double>(d)), b = a, t = a, sum = a;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        a[i][j] = rng.normal();
        b[i][j] = rng.normal();
      }
    }
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        t[i][j] = a[j][i];
        sum[i][j] = 2 * a[i][j] + b[i][j];
      }
    }
    EXPECT_NEAR(hoeffding_sigma2(d, t), hoeffding_sigma2(d, a), 1e-12);
    EXPECT_NEAR(hoeffding_sigma2(d, sum), 2 * hoeffding_sigma2(d, a) + hoeffding_sigma2(d, b), 1e-12);
  }
}

TEST(Hoeffding, CoefficientsByHand) {
  EXPECT_EQ(hoeffding_coefficient(1, 1, 1), 1);
  EXPECT_EQ(hoeffding_coefficient(2, 1, 1), Rational(1, 3));
  EXPECT_EQ(hoeffding_coefficient(2, 1, 2), Rational(1, 6));
  // (1+3-2)! (6-1-3)! / (0! 2! 2! 0! 5!) = 2*2 / (2*2*120)
  EXPECT_EQ(hoeffding_coefficient(3, 1, 3), Rational(1, 120));
}

TEST(Renewal, DegenerateWhenProjectionIsProportionalToX) {
  for (int d = 1; d <= 4; ++d) {
    ProjectionSpec s;
    s.d = d;
    s.nu = q(3, 2);
    s.var_x = q(7, 5);
    s.mu = q(2, 3);
    const QSqrt5 ratio = s.mu / s.nu;
    s.sigma.assign(d, std::vector<QSqrt5>(d, ratio * ratio * s.var_x));
    s.cov_with_x.assign(d, ratio * s.var_x);
    EXPECT_TRUE(renewal_gamma2(s).is_zero()) << d;
  }
  ProjectionSpec bad;
  bad.d = 1;
  bad.nu = 0;
  bad.sigma = {{QSqrt5(1)}};
  bad.cov_with_x = {QSqrt5(0)};
  EXPECT_THROW(renewal_gamma2(bad), DomainError);
}

TEST(Renewal, InversionSpecs) {
  ProjectionSpec b;
  b.d = 1;
  b.mu = 2;
  b.nu = 2;
  b.var_x = 2;
  b.sigma = {{QSqrt5(2 * 13 - 4)}};
  b.cov_with_x = {QSqrt5(6)};
  EXPECT_EQ(renewal_gamma2(b), QSqrt5(6));
}

TEST(Params, PairD) {
  const auto inv = params(FamilyKind::PairD, "21");
  EXPECT_EQ(inv.mean_exponent, 2);
  EXPECT_EQ(inv.mean_coeff, q(1, 4));
  EXPECT_EQ(inv.var_exponent, 3);
  EXPECT_EQ(inv.var_coeff, q(1, 12));
  // Mean depends only on |sigma|.
  for (int m = 1; m <= 6; ++m) {
    for_each_member(canonical_family(FamilyKind::PairD), m, [&](const Permutation& s) {
      const auto p = asymptotic_params(canonical_family(FamilyKind::PairD), s);
      EXPECT_EQ(p.mean_coeff, QSqrt5(Rational(2, 1) / (Rational(BigInt(1) << m) * Rational(factorial(m)))));
      if (m >= 2) EXPECT_GT(p.var_coeff.to_double(), 0.0);
    });
  }
}

TEST(Params, PairDExactFiniteVarianceOfInversions) {
  // n21 = sum_j (j-1) [xi_j = -1], so Var = sum_{j<=n} (j-1)^2 / 4 ~ n^3 / 12.
  const double n = 1e6;
  double var = 0;
  for (double j = 1; j <= n; ++j) var += (j - 1) * (j - 1) / 4;
  EXPECT_NEAR(var / (n * n * n), params(FamilyKind::PairD, "21").var_coeff.to_double(), 1e-5);
}

TEST(Params, PairB) {
  const auto inv = params(FamilyKind::PairB, "21");
  EXPECT_EQ(inv.mean_exponent, 1);
  EXPECT_EQ(inv.mean_coeff, QSqrt5(1));
  EXPECT_EQ(inv.var_coeff, QSqrt5(6));
  EXPECT_EQ(params(FamilyKind::PairB, "2143").var_coeff, QSqrt5(6));
  EXPECT_EQ(params(FamilyKind::PairB, "3214").var_coeff, q(52, 3));
  EXPECT_EQ(params(FamilyKind::PairB, "2143").mean_coeff, params(FamilyKind::PairB, "3214").mean_coeff);
  EXPECT_EQ(params(FamilyKind::PairB, "2143").mean_coeff, q(1, 2));
}

TEST(Params, PairA) {
  const auto inv = params(FamilyKind::PairA, "21");
  EXPECT_EQ(inv.mean_coeff, q(1, 2));
  EXPECT_EQ(inv.mean_exponent, 1);
  EXPECT_EQ(inv.var_coeff, q(1, 4));
}

TEST(Params, TripleAAA) {
  const auto inv = params(FamilyKind::TripleAAA, "21");
  // Centering nu^-1 mu = (1-p)/(2-p) = (5-sqrt5)/10; mu alone is (3-sqrt5)/2.
  EXPECT_EQ(inv.spec.mu, (QSqrt5(3) - QSqrt5::sqrt5()) / QSqrt5(2));
  EXPECT_EQ(inv.mean_coeff, (QSqrt5(5) - QSqrt5::sqrt5()) / QSqrt5(10));
  EXPECT_EQ(inv.var_coeff, QSqrt5::sqrt5() / QSqrt5(25));
  EXPECT_NEAR(inv.var_coeff.to_double(), std::pow(5.0, -1.5), 1e-15);
}

TEST(Params, TripleAAAAgainstExactCompositionCounts) {
  // Inversions of a uniform member = number of 2-parts of a uniform
  // {1,2}-composition of n; C(n-k, k) compositions have k twos.
  const int n = 4000;
  BigInt total = 0, s1 = 0, s2 = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    const BigInt c = binomial(n - k, k);
    total += c;
    s1 += c * k;
    s2 += c * k * k;
  }
  const Rational mean(s1, total);
  const Rational var = Rational(s2, total) - mean * mean;
  const auto inv = params(FamilyKind::TripleAAA, "21");
  EXPECT_NEAR(to_double(mean) / n, inv.mean_coeff.to_double(), 1e-4);
  EXPECT_NEAR(to_double(var) / n, inv.var_coeff.to_double(), 1e-4);
}

TEST(Params, SingleBlockMatchesDirectRenewalVariance) {
  for (int ell = 1; ell <= 5; ++ell) {
    std::vector<int> parts{ell};
    const auto b = asymptotic_params(canonical_family(FamilyKind::PairB),
                                     decode(canonical_family(FamilyKind::PairB), Composition{parts}));
    const double direct = one_block_renewal_variance([](int x) { return std::ldexp(1.0, -x); }, 300, ell);
    EXPECT_NEAR(b.var_coeff.to_double(), direct, 1e-9 * std::max(1.0, direct)) << ell;
  }
  for (int ell = 1; ell <= 2; ++ell) {
    const auto a = asymptotic_params(canonical_family(FamilyKind::TripleAAA),
                                     decode(canonical_family(FamilyKind::TripleAAA), Composition{{ell}}));
    const double direct = one_block_renewal_variance([](int x) { return x == 1 ? kP : (x == 2 ? kP * kP : 0.0); }, 2, ell);
    EXPECT_NEAR(a.var_coeff.to_double(), direct, 1e-12) << ell;
  }
}

TEST(Params, DegeneracyExactlyAtIdentity) {
  for (FamilyKind kind : {FamilyKind::PairB, FamilyKind::PairA, FamilyKind::TripleAAA}) {
    const auto f = canonical_family(kind);
    for (int m = 1; m <= 4; ++m) {
      for_each_member(f, m, [&](const Permutation& s) {
        const auto p = asymptotic_params(f, s);
        EXPECT_EQ(p.degenerate, s.is_identity()) << kind_name(kind) << " " << s.str() << " " << p.var_coeff.str();
        EXPECT_GE(p.var_coeff.sign(), 0);
      });
    }
  }
}

TEST(Params, Errors) {
  EXPECT_THROW(params(FamilyKind::PairE, "21"), DomainError);
  EXPECT_THROW(params(FamilyKind::PairD, "132"), NotAMember);
}

TEST(QSqrt5, Arithmetic) {
  const QSqrt5 phi{Rational(1, 2), Rational(1, 2)};
  EXPECT_EQ(phi * phi, phi + QSqrt5(1));
  EXPECT_EQ(pow(phi, -1), phi - QSqrt5(1));
  EXPECT_EQ((QSqrt5(2) - QSqrt5::sqrt5()).sign(), -1);
  EXPECT_EQ(QSqrt5(q(1, 12)).str(), "1/12");
  EXPECT_EQ((QSqrt5::sqrt5() / QSqrt5(25)).str(), "1/25*sqrt(5)");
}
