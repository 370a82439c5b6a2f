#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "pavoid/counting.hpp"
#include "pavoid/error.hpp"
#include "pavoid/limit_laws.hpp"

using namespace pavoid;

namespace {

Pattern P(const char* s) { return Permutation::parse(s); }

LimitLaw law(FamilyKind kind, const char* sigma) { return limit_law(canonical_family(kind), P(sigma)); }

double fact(int k) { return std::tgamma(k + 1.0); }

// E[(n_sigma / n^e)^r] over the uniform member of length n, by enumeration.
double finite_moment(FamilyKind kind, const Pattern& sigma, int n, double e, int r) {
  const FamilyId fam = canonical_family(kind);
  const FastCounter counter(fam, sigma);
  const double scale = std::pow(static_cast<double>(n), e);
  double sum = 0;
  long members = 0;
  for_each_code(fam, n, [&](const CodedForm& code) {
    sum += std::pow(counter.count(code).convert_to<double>() / scale, r);
    ++members;
  });
  return sum / static_cast<double>(members);
}

}  // namespace

TEST(LimitLaw, Descriptors) {
  const auto inv = law(FamilyKind::PairE, "21");
  const auto* d = std::get_if<DirichletLaw>(&inv);
  ASSERT_NE(d, nullptr);
  EXPECT_FALSE(d->identity);
  EXPECT_EQ(d->i, 1);
  EXPECT_EQ(d->j, 1);
  EXPECT_EQ(d->p, 0);
  EXPECT_EQ(scaling_exponent(inv), Rational(2));

  const auto eee = law(FamilyKind::TripleEEE, "123");
  const auto* u = std::get_if<UniformLaw>(&eee);
  ASSERT_NE(u, nullptr);
  EXPECT_EQ(u->variant, UniformLaw::Variant::EeeIdentity);
  EXPECT_EQ(u->m, 3);

  const auto exc = law(FamilyKind::Single132, "12");
  ASSERT_TRUE(std::holds_alternative<ExcursionLaw>(exc));
  EXPECT_EQ(scaling_exponent(exc), Rational(3, 2));
  EXPECT_EQ(scaling_exponent(law(FamilyKind::Single132, "21")), Rational(2));
  // blocks of 2143 are 21|43: (4 + 2) / 2
  EXPECT_EQ(scaling_exponent(law(FamilyKind::Single321, "2143")), Rational(3));

  EXPECT_EQ(law_kind(law(FamilyKind::PairD, "12")), "normal");
  EXPECT_EQ(law_kind(law(FamilyKind::TripleBBB, "21")), "uniform-functional");
}

TEST(LimitLaw, Errors) {
  EXPECT_THROW(law(FamilyKind::PairE, "132"), NotAMember);
  EXPECT_THROW(law(FamilyKind::TripleCCC, "231"), NotAMember);
  EXPECT_THROW(law(FamilyKind::Trivial, "1"), DomainError);
  EXPECT_THROW(limit_moment(law(FamilyKind::Single132, "12"), 1), DomainError);
  EXPECT_THROW(limit_moment(law(FamilyKind::PairE, "312"), 1.5), DomainError);
  EXPECT_THROW(limit_moment(law(FamilyKind::TripleCCC, "321"), 0.5), DomainError);
  RandomStream rng(1);
  auto l = std::get<ExcursionLaw>(law(FamilyKind::Single132, "231"));
  l.steps = 50;
  EXPECT_THROW(sample_limit(l, rng), DomainError);
}

TEST(LimitLaw, LambdaBounds) {
  for (int k = 1; k <= 6; ++k) {
    for (const auto& s : enumerate(canonical_family(FamilyKind::Single132), k)) {
      const int lam = lambda_132(s);
      EXPECT_GE(lam, k + 1);
      EXPECT_LE(lam, 2 * k);
      const bool monotone = s == Permutation::identity(k) || s == Permutation::decreasing(k);
      EXPECT_EQ(monotone, lam == k + 1 || lam == 2 * k) << s.str();
    }
  }
}

TEST(LimitMoment, SpecExamples) {
  EXPECT_EQ(limit_moment_exact(law(FamilyKind::PairE, "21"), 1), QSqrt5(Rational(1, 12)));
  EXPECT_EQ(limit_moment_exact(law(FamilyKind::TripleCCC, "21"), 1), QSqrt5(Rational(1, 6)));
  EXPECT_EQ(limit_moment_exact(law(FamilyKind::TripleEEE, "21"), 2), QSqrt5(Rational(1, 30)));
  // pi_{1,1,1} = 213 and pi_{2,1,0} = 312
  EXPECT_EQ(limit_moment_exact(law(FamilyKind::PairE, "213"), 2), QSqrt5(Rational(2, 5040)));
  EXPECT_EQ(limit_moment_exact(law(FamilyKind::PairE, "312"), 2), QSqrt5(Rational(3, 5040)));
}

TEST(LimitMoment, FirstMomentFormulas) {
  const FamilyId e = canonical_family(FamilyKind::PairE);
  for (int n = 2; n <= 5; ++n) {
    for (const auto& s : enumerate(e, n)) {
      const auto l = limit_law(e, s);
      const auto& d = std::get<DirichletLaw>(l);
      const Rational expected = d.identity ? Rational(4 * n + 2, factorial(n + 2))
                                           : Rational(2, factorial(d.i + d.j + d.p + 2));
      EXPECT_EQ(limit_moment_exact(l, 1), QSqrt5(expected)) << s.str();
    }
  }
  for (int m = 1; m <= 6; ++m) {
    for (auto kind : {FamilyKind::TripleCCC, FamilyKind::TripleBBB, FamilyKind::TripleEEE}) {
      for (const auto& s : enumerate(canonical_family(kind), m)) {
        const auto l = limit_law(canonical_family(kind), s);
        const bool ident = s == Permutation::identity(m);
        Rational expected;
        if (kind == FamilyKind::TripleBBB) expected = Rational(1, factorial(m));
        else expected = Rational(ident && m > 1 ? 2 : 1, factorial(m + 1));
        if (ident && m == 1) expected = 1;
        EXPECT_EQ(limit_moment_exact(l, 1), QSqrt5(expected)) << kind_name(kind) << " " << s.str();
      }
    }
  }
}

TEST(LimitMoment, GammaFormsAgreeWithIntegers) {
  const auto e = law(FamilyKind::PairE, "21");
  const auto c = law(FamilyKind::TripleCCC, "21");
  const auto q = law(FamilyKind::TripleEEE, "21");
  for (int r = 1; r <= 5; ++r) {
    EXPECT_NEAR(limit_moment(e, r), 2 * fact(r) * fact(r) / fact(2 * r + 2), 1e-15);
    EXPECT_NEAR(limit_moment(c, r), 1.0 / (std::pow(2.0, r) * (2 * r + 1)), 1e-15);
    EXPECT_NEAR(limit_moment(q, r), fact(r) * fact(r) / fact(2 * r + 1), 1e-15);
  }
}

TEST(LimitMoment, NonIntegerOrdersByQuadrature) {
  using boost::math::quadrature::gauss_kronrod;
  for (double r : {0.5, 1.5, 2.25}) {
    const double ccc = gauss_kronrod<double, 61>::integrate([r](double u) { return std::pow(u * u / 2, r); }, 0.0, 1.0);
    const double eee = gauss_kronrod<double, 61>::integrate([r](double u) { return std::pow(u * (1 - u), r); }, 0.0, 1.0);
    EXPECT_NEAR(limit_moment(law(FamilyKind::TripleCCC, "21"), r), ccc, 1e-10);
    EXPECT_NEAR(limit_moment(law(FamilyKind::TripleEEE, "21"), r), eee, 1e-10);
    // XY under Dir(1,1,1): density 2 on the simplex.
    const double pe = gauss_kronrod<double, 61>::integrate(
        [r](double x) {
          return gauss_kronrod<double, 61>::integrate([&](double y) { return 2 * std::pow(x * y, r); }, 0.0, 1.0 - x);
        },
        0.0, 1.0);
    EXPECT_NEAR(limit_moment(law(FamilyKind::PairE, "21"), r), pe, 1e-9);
  }
}

TEST(LimitMoment, NormalLaw) {
  const auto l = law(FamilyKind::PairD, "12");
  const auto& n = std::get<NormalLaw>(l);
  EXPECT_EQ(limit_moment_exact(l, 1), QSqrt5(0));
  EXPECT_EQ(limit_moment_exact(l, 2), n.var_coeff);
  EXPECT_EQ(limit_moment_exact(l, 4), n.var_coeff * n.var_coeff * QSqrt5(3));
}

// Finite-n enumeration averages approach the limit moments.
TEST(LimitMoment, MatchesLargeNEnumeration) {
  struct Case {
    FamilyKind kind;
    const char* sigma;
    int n;
  };
  const Case cases[] = {
      {FamilyKind::TripleCCC, "21", 1500},  {FamilyKind::TripleCCC, "123", 1500}, {FamilyKind::TripleCCC, "3214", 1500},
      {FamilyKind::TripleBBB, "21", 1500},  {FamilyKind::TripleBBB, "3124", 1500}, {FamilyKind::TripleBBB, "123", 1500},
      {FamilyKind::TripleEEE, "21", 1500},  {FamilyKind::TripleEEE, "123", 1500}, {FamilyKind::TripleEEE, "3412", 1500},
      {FamilyKind::PairE, "21", 120},      {FamilyKind::PairE, "213", 120},     {FamilyKind::PairE, "12", 120},
  };
  for (const auto& c : cases) {
    const auto l = law(c.kind, c.sigma);
    const double e = to_double(scaling_exponent(l));
    for (int r = 1; r <= 2; ++r) {
      const double limit = limit_moment(l, r);
      const double finite = finite_moment(c.kind, P(c.sigma), c.n, e, r);
      EXPECT_NEAR(finite / limit, 1.0, 0.05) << kind_name(c.kind) << " " << c.sigma << " r=" << r;
    }
  }
}

TEST(ExactExpectationE, SpecExamples) {
  EXPECT_EQ(exact_expectation_E(1, 1, 0, 4), Rational(15, 7));
  EXPECT_EQ(exact_expectation_E(2, 2, 2, 3), Rational(0));
  EXPECT_THROW(exact_expectation_E(0, 1, 0, 4), DomainError);
}

TEST(ExactExpectationE, EqualsEnumerationAverage) {
  const FamilyId e = canonical_family(FamilyKind::PairE);
  for (int n = 1; n <= 10; ++n) {
    const auto members = enumerate(e, n);
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; i + j <= 4; ++j) {
        for (int p = 0; i + j + p <= 4; ++p) {
          std::vector<int> v;
          for (int a = 1; a <= i; ++a) v.push_back(j + a);
          for (int a = 1; a <= j; ++a) v.push_back(a);
          for (int a = 1; a <= p; ++a) v.push_back(i + j + a);
          const Pattern sigma(std::move(v));
          BigInt total = 0;
          for (const auto& pi : members) total += occurrences(sigma, pi);
          EXPECT_EQ(exact_expectation_E(i, j, p, n), Rational(total, static_cast<long>(members.size())));
          const Rational scaled = exact_expectation_E(i, j, p, n) * Rational(static_cast<long>(members.size()));
          EXPECT_EQ(denominator(scaled), 1);
        }
      }
    }
  }
}

TEST(ExactExpectationE, ScaledLimit) {
  for (int s = 2; s <= 4; ++s) {
    const double scaled = to_double(exact_expectation_E(1, s - 1, 0, 1000)) / std::pow(1000.0, s);
    EXPECT_NEAR(scaled / (2.0 / fact(s + 2)), 1.0, 0.02);
  }
}

TEST(InversionDensity, Quadrature) {
  EXPECT_EQ(inversion_density_E(0.25), 0.0);
  EXPECT_EQ(inversion_density_E(0.3), 0.0);
  EXPECT_EQ(inversion_density_E(-0.1), 0.0);
  EXPECT_NEAR(inversion_density_E_moment(0), 1.0, 1e-8);
  EXPECT_NEAR(inversion_density_E_moment(1), 1.0 / 12, 1e-8);
  EXPECT_NEAR(inversion_density_E_moment(2), 1.0 / 90, 1e-8);
  for (int r = 3; r <= 5; ++r) EXPECT_NEAR(inversion_density_E_moment(r), limit_moment(law(FamilyKind::PairE, "21"), r), 1e-10);
  // closed form against the naive expression away from 0
  for (double x : {0.01, 0.1, 0.2, 0.249}) {
    const double s = std::sqrt(1 - 4 * x);
    EXPECT_NEAR(inversion_density_E(x), 2 * std::log(1 + s) - 2 * std::log(1 - s), 1e-9);
  }
}

TEST(SampleLimit, MonteCarloMoments) {
  RandomStream rng(7);
  const auto check = [&](const LimitLaw& l, int draws) {
    const LimitSampler draw(l);
    double s = 0, s2 = 0;
    for (int k = 0; k < draws; ++k) {
      const double w = draw(rng);
      s += w;
      s2 += w * w;
    }
    const double mean = s / draws;
    const double se = std::sqrt((s2 / draws - mean * mean) / draws);
    EXPECT_LE(std::abs(mean - limit_moment(l, 1)), 3 * se + 1e-15) << law_kind(l);
    EXPECT_NEAR(s2 / draws, limit_moment(l, 2), 0.02 * limit_moment(l, 2) + 1e-15) << law_kind(l);
  };
  check(law(FamilyKind::PairE, "21"), 1000000);
  check(law(FamilyKind::TripleEEE, "21"), 200000);
  check(law(FamilyKind::TripleCCC, "1234"), 200000);
  check(law(FamilyKind::TripleBBB, "2134"), 200000);
  check(law(FamilyKind::PairE, "1234"), 200000);

  // Normal control: empirical variance within 1%.
  const auto n = law(FamilyKind::PairD, "123");
  const double v = std::get<NormalLaw>(n).var_coeff.to_double();
  ASSERT_GT(v, 0.0);
  const LimitSampler normal(n);
  double s2 = 0;
  const int draws = 400000;
  for (int k = 0; k < draws; ++k) s2 += std::pow(normal(rng), 2);
  EXPECT_NEAR(s2 / draws / v, 1.0, 0.01);
}

TEST(SampleLimit, DirichletMonomials) {
  RandomStream rng(11);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int p = 0; p <= 3; ++p) {
        const LimitSampler draw(DirichletLaw{false, i, j, p});
        const double expected = 2 * fact(i) * fact(j) * fact(p) / fact(i + j + p + 2) / (fact(i) * fact(j) * fact(p));
        double s = 0, s2 = 0;
        const int draws = 20000;
        for (int k = 0; k < draws; ++k) {
          const double w = draw(rng);
          s += w;
          s2 += w * w;
        }
        const double mean = s / draws;
        const double se = std::sqrt((s2 / draws - mean * mean) / draws);
        EXPECT_LE(std::abs(mean - expected), 4 * se) << i << j << p;
      }
    }
  }
}

TEST(SampleLimit, Excursion) {
  RandomStream rng(3);
  const auto h = discretized_excursion(500, rng);
  ASSERT_EQ(h.size(), 1001u);
  EXPECT_EQ(h.front(), 0.0);
  EXPECT_EQ(h.back(), 0.0);
  for (double x : h) EXPECT_GE(x, 0.0);

  // Total area over all Dyck paths of semilength N is 4^N - C(2N+1, N), so
  // the mean height sum is (N+1) 4^N / C(2N,N) - (2N+1). As N grows the
  // scaled value is sqrt(pi)/2 - 1/sqrt(N) + O(N^-3/2).
  auto area = std::get<ExcursionLaw>(law(FamilyKind::Single132, "12"));
  area.steps = 1000;
  const double N = area.steps;
  const double log_ratio = N * std::log(4.0) - (std::lgamma(2 * N + 1) - 2 * std::lgamma(N + 1));
  const double mean_sum = (N + 1) * std::exp(log_ratio) - (2 * N + 1);
  const double discrete = std::sqrt(2.0) * mean_sum / std::pow(2 * N, 1.5);
  EXPECT_NEAR(discrete, std::sqrt(M_PI) / 2 - 1 / std::sqrt(N), 1 / N);
  const LimitSampler draw(area);
  double s = 0, s2 = 0;
  const int draws = 4000;
  for (int k = 0; k < draws; ++k) {
    const double w = draw(rng);
    s += w;
    s2 += w * w;
  }
  const double mean = s / draws;
  const double se = std::sqrt((s2 / draws - mean * mean) / draws);
  EXPECT_LE(std::abs(mean - discrete), 4 * se);

  EXPECT_DOUBLE_EQ(sample_limit(law(FamilyKind::Single132, "321"), rng), 1.0 / 6);

  // 321-avoiders: sigma = 21 gives int e; sigma = 1 gives 1.
  auto one = std::get<ExcursionLaw>(law(FamilyKind::Single321, "1"));
  one.steps = 100;
  EXPECT_NEAR(sample_limit(one, rng), 1.0, 1e-12);
  auto inv = std::get<ExcursionLaw>(law(FamilyKind::Single321, "21"));
  inv.steps = 1000;
  RandomStream a(5), b(5);
  EXPECT_NEAR(sample_limit(inv, a), sample_limit(area, b) / std::sqrt(2.0), 1e-12);
}
