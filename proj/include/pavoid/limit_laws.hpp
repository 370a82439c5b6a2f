#pragma once

#include <array>
#include <string>
#include <variant>

#include "pavoid/asymptotics.hpp"
#include "pavoid/bignum.hpp"
#include "pavoid/families.hpp"
#include "pavoid/random.hpp"

namespace pavoid {

/// (n_sigma - mean_coeff n^e) / n^(e - 1/2) -> N(0, var_coeff).
struct NormalLaw {
  QSqrt5 mean_coeff;
  int mean_exponent = 0;
  QSqrt5 var_coeff;
  int var_exponent = 0;
  bool degenerate = false;
};

/// {132,321}: n^-(i+j+p) n_sigma -> X^i Y^j Z^p / (i! j! p!) for sigma = pi_{i,j,p},
/// or n^-i n_sigma -> ((X+Z)^i + (Y+Z)^i - Z^i) / i! for sigma = iota_i,
/// with (X,Y,Z) ~ Dir(1,1,1).
struct DirichletLaw {
  bool identity = false;
  int i = 0;
  int j = 0;
  int p = 0;
};

/// Polynomial functionals of U ~ U(0,1) for the three-pattern grid families.
struct UniformLaw {
  enum class Variant { CccGrid, CccIdentity, BbbGrid, BbbIdentity, EeeGrid, EeeIdentity };
  Variant variant = Variant::CccGrid;
  int k = 0;
  int m = 0;
};

/// Single-pattern classes: n_sigma / n^exponent converges to a functional of a
/// Brownian excursion. Only the exponent is known in closed form.
struct ExcursionLaw {
  FamilyKind family = FamilyKind::Single132;
  Pattern sigma = Permutation::identity(1);
  Rational exponent;        // lambda(sigma)/2 or (m + blocks)/2
  int steps = 10000;        // N; the discretized excursion has 2N steps
};

using LimitLaw = std::variant<NormalLaw, DirichletLaw, UniformLaw, ExcursionLaw>;

std::string law_kind(const LimitLaw& law);
std::string variant_name(UniformLaw::Variant v);

/// lambda(sigma) = |sigma| + descents, the final position counting as one.
int lambda_132(const Pattern& sigma);

/// Descriptor for sigma (canonical frame). Throws NotAMember for sigma
/// outside the family, DomainError for TRIVIAL/UNRESTRICTED.
LimitLaw limit_law(const FamilyId& family, const Pattern& sigma);

/// Power of n that scales n_sigma to the limit variable W; for NormalLaw the
/// mean exponent.
Rational scaling_exponent(const LimitLaw& law);

/// E[W^r] exactly for integer r >= 1 (Dirichlet, uniform and normal laws;
/// for a normal law W is the centered limit N(0, var_coeff)).
QSqrt5 limit_moment_exact(const LimitLaw& law, int r);

/// E[W^r] as a double. Non-integer r > 0 is accepted only for the three
/// inversion laws with Gamma-form moments: E-grid (1,1,0), CCC-grid (2,2),
/// EEE-grid (1,2). Throws DomainError otherwise.
double limit_moment(const LimitLaw& law, double r);

/// E n_sigma over the uniform {132,321}-avoider of length n, for
/// sigma = pi_{i,j,p}: C(n+2, i+j+p+2) / (C(n,2) + 1).
Rational exact_expectation_E(int i, int j, int p, int n);

/// Density of the limit of n^-2 inversions in {132,321}-avoiders.
double inversion_density_E(double x);

/// int x^r density(x) dx over (0, 1/4) by tanh-sinh quadrature.
double inversion_density_E_moment(int r);

/// One draw of W. Excursion laws: SINGLE-132 supports sigma = 12
/// (sqrt2 * excursion area) and decreasing sigma (1/k!, deterministic);
/// SINGLE-321 returns the nested excursion integral without its unknown
/// constant factor. Other excursion functionals throw DomainError.
double sample_limit(const LimitLaw& law, RandomStream& rng);

/// sample_limit with the functional's coefficients prepared once.
class LimitSampler {
 public:
  explicit LimitSampler(LimitLaw law);
  double operator()(RandomStream& rng) const;
  const LimitLaw& law() const { return law_; }

 private:
  LimitLaw law_;
  std::vector<double> coeffs_;                // polynomial in U, or monomial weights
  std::vector<std::array<int, 3>> monomials_;  // Dirichlet functionals
  double scale_ = 0.0;                          // normal: standard deviation
};

/// Heights e(j / 2N), j = 0..2N, of a discretized standard excursion:
/// a uniform Dyck path of semilength N scaled by 1 / sqrt(2N).
std::vector<double> discretized_excursion(int N, RandomStream& rng);

}  // namespace pavoid
