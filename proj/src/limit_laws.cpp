#include "pavoid/limit_laws.hpp"

#include <array>
#include <cmath>
#include <map>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "pavoid/catalan.hpp"
#include "pavoid/error.hpp"

namespace pavoid {

namespace {

// Polynomials in (X, Y, Z) and in U with exact coefficients.
using Monomial = std::array<int, 3>;
using Poly3 = std::map<Monomial, Rational>;
using Poly1 = std::vector<Rational>;

Poly3 mul(const Poly3& a, const Poly3& b) {
  Poly3 out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      out[{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}] += ca * cb;
    }
  }
  return out;
}

Poly3 add(Poly3 a, const Poly3& b, const Rational& scale) {
  for (const auto& [m, c] : b) a[m] += scale * c;
  return a;
}

Poly3 pow(const Poly3& a, int e) {
  Poly3 out{{{0, 0, 0}, Rational(1)}};
  for (int i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

Poly1 mul(const Poly1& a, const Poly1& b) {
  Poly1 out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly1 pow(const Poly1& a, int e) {
  Poly1 out{Rational(1)};
  for (int i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

Rational inv_factorial(int k) { return Rational(1, factorial(k)); }

Poly3 dirichlet_poly(const DirichletLaw& d) {
  if (!d.identity) {
    return {{{d.i, d.j, d.p}, inv_factorial(d.i) * inv_factorial(d.j) * inv_factorial(d.p)}};
  }
  const Poly3 xz{{{1, 0, 0}, 1}, {{0, 0, 1}, 1}};
  const Poly3 yz{{{0, 1, 0}, 1}, {{0, 0, 1}, 1}};
  const Poly3 z{{{0, 0, 1}, 1}};
  Poly3 w = add(pow(xz, d.i), pow(yz, d.i), 1);
  w = add(w, pow(z, d.i), -1);
  for (auto& [m, c] : w) c *= inv_factorial(d.i);
  return w;
}

// E X^a Y^b Z^c = 2 a! b! c! / (a+b+c+2)! under Dir(1,1,1).
Rational dirichlet_expectation(const Poly3& w) {
  Rational sum = 0;
  for (const auto& [m, c] : w) {
    if (c == 0) continue;
    sum += c * Rational(2 * factorial(m[0]) * factorial(m[1]) * factorial(m[2]), factorial(m[0] + m[1] + m[2] + 2));
  }
  return sum;
}

Poly1 u_power(int k) {
  Poly1 p(static_cast<std::size_t>(k) + 1);
  p[static_cast<std::size_t>(k)] = 1;
  return p;
}

Poly1 one_minus_u_power(int k) { return pow(Poly1{Rational(1), Rational(-1)}, k); }

Poly1 uniform_poly(const UniformLaw& u) {
  const int k = u.k;
  const int m = u.m;
  using V = UniformLaw::Variant;
  Poly1 p;
  switch (u.variant) {
    case V::CccGrid:
    case V::EeeGrid:
      p = mul(u_power(k), one_minus_u_power(m - k));
      for (auto& c : p) c *= inv_factorial(k) * inv_factorial(m - k);
      return p;
    case V::CccIdentity:
      p = mul(Poly1{Rational(1), Rational(m - 1)}, one_minus_u_power(m - 1));
      for (auto& c : p) c *= inv_factorial(m);
      return p;
    case V::BbbGrid:
      p = mul(u_power(k - 1), one_minus_u_power(m - k));
      for (auto& c : p) c *= inv_factorial(k - 1) * inv_factorial(m - k);
      return p;
    case V::BbbIdentity: return Poly1{inv_factorial(m)};
    case V::EeeIdentity: {
      Poly1 a = u_power(m);
      const Poly1 b = one_minus_u_power(m);
      for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
      for (auto& c : a) c *= inv_factorial(m);
      return a;
    }
  }
  throw DomainError("unknown uniform law variant");
}

Rational uniform_expectation(const Poly1& p) {
  Rational sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += p[i] / Rational(static_cast<long>(i) + 1);
  return sum;
}

bool is_decreasing(const Pattern& s) { return s == Permutation::decreasing(s.size()); }

}  // namespace

std::string variant_name(UniformLaw::Variant v) {
  switch (v) {
    case UniformLaw::Variant::CccGrid: return "CCC-grid";
    case UniformLaw::Variant::CccIdentity: return "CCC-identity";
    case UniformLaw::Variant::BbbGrid: return "BBB-grid";
    case UniformLaw::Variant::BbbIdentity: return "BBB-identity";
    case UniformLaw::Variant::EeeGrid: return "EEE-grid";
    case UniformLaw::Variant::EeeIdentity: return "EEE-identity";
  }
  return "?";
}

std::string law_kind(const LimitLaw& law) {
  switch (law.index()) {
    case 0: return "normal";
    case 1: return "dirichlet-functional";
    case 2: return "uniform-functional";
    default: return "excursion-functional";
  }
}

int lambda_132(const Pattern& sigma) { return sigma.size() + descents_with_final(sigma); }

LimitLaw limit_law(const FamilyId& family, const Pattern& sigma) {
  if (family.kind == FamilyKind::Trivial || family.kind == FamilyKind::Unrestricted) {
    throw DomainError(kind_name(family.kind) + " family has no limit law descriptor");
  }
  if (!is_member(family, sigma)) {
    throw NotAMember(sigma.str() + " is not in the " + kind_name(family.kind) + " family");
  }
  const int m = sigma.size();
  switch (family.kind) {
    case FamilyKind::Single132: {
      ExcursionLaw e;
      e.family = family.kind;
      e.sigma = sigma;
      e.exponent = Rational(lambda_132(sigma), 2);
      return e;
    }
    case FamilyKind::Single321: {
      ExcursionLaw e;
      e.family = family.kind;
      e.sigma = sigma;
      e.exponent = Rational(m + static_cast<int>(blocks(sigma).count()), 2);
      return e;
    }
    case FamilyKind::PairD:
    case FamilyKind::PairB:
    case FamilyKind::PairA:
    case FamilyKind::TripleAAA: {
      const auto a = asymptotic_params(family, sigma);
      return NormalLaw{a.mean_coeff, a.mean_exponent, a.var_coeff, a.var_exponent, a.degenerate};
    }
    case FamilyKind::PairE: {
      const auto g = std::get<GridForm>(encode(family, sigma));
      if (g.identity) return DirichletLaw{true, m, 0, 0};
      return DirichletLaw{false, g.k, g.l, g.m};
    }
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE: {
      const auto g = std::get<GridForm>(encode(family, sigma));
      using V = UniformLaw::Variant;
      V v;
      if (family.kind == FamilyKind::TripleCCC) v = g.k >= 2 ? V::CccGrid : V::CccIdentity;
      else if (family.kind == FamilyKind::TripleBBB) v = g.k >= 2 ? V::BbbGrid : V::BbbIdentity;
      else v = g.l >= 1 ? V::EeeGrid : V::EeeIdentity;
      return UniformLaw{v, g.k, m};
    }
    default: break;
  }
  throw DomainError("no limit law for " + kind_name(family.kind));
}

Rational scaling_exponent(const LimitLaw& law) {
  return std::visit(
      [](const auto& l) -> Rational {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, NormalLaw>) return l.mean_exponent;
        else if constexpr (std::is_same_v<T, DirichletLaw>) return l.identity ? l.i : l.i + l.j + l.p;
        else if constexpr (std::is_same_v<T, UniformLaw>) {
          return l.variant == UniformLaw::Variant::BbbGrid ? l.m - 1 : l.m;
        } else {
          return l.exponent;
        }
      },
      law);
}

QSqrt5 limit_moment_exact(const LimitLaw& law, int r) {
  if (r < 1) throw DomainError("moment order must be >= 1");
  if (const auto* n = std::get_if<NormalLaw>(&law)) {
    if (r % 2 == 1) return QSqrt5(0);
    BigInt double_fact = 1;
    for (int k = r - 1; k > 1; k -= 2) double_fact *= k;
    return pow(n->var_coeff, r / 2) * QSqrt5(Rational(double_fact));
  }
  if (const auto* d = std::get_if<DirichletLaw>(&law)) return dirichlet_expectation(pow(dirichlet_poly(*d), r));
  if (const auto* u = std::get_if<UniformLaw>(&law)) return uniform_expectation(pow(uniform_poly(*u), r));
  throw DomainError("closed-form moments of excursion functionals are not available");
}

double limit_moment(const LimitLaw& law, double r) {
  if (!(r > 0)) throw DomainError("moment order must be positive");
  const bool integer = std::floor(r) == r && r < 1e6;
  if (integer) return limit_moment_exact(law, static_cast<int>(r)).to_double();
  if (const auto* d = std::get_if<DirichletLaw>(&law); d && !d->identity && d->i == 1 && d->j == 1 && d->p == 0) {
    return 2.0 * std::exp(2.0 * std::lgamma(r + 1.0) - std::lgamma(2.0 * r + 3.0));
  }
  if (const auto* u = std::get_if<UniformLaw>(&law)) {
    if (u->variant == UniformLaw::Variant::CccGrid && u->k == 2 && u->m == 2) {
      return 1.0 / (std::pow(2.0, r) * (2.0 * r + 1.0));
    }
    if (u->variant == UniformLaw::Variant::EeeGrid && u->k == 1 && u->m == 2) {
      return std::exp(2.0 * std::lgamma(r + 1.0) - std::lgamma(2.0 * r + 2.0));
    }
  }
  throw DomainError("non-integer moment orders are supported only for the inversion laws");
}

Rational exact_expectation_E(int i, int j, int p, int n) {
  if (i < 1 || j < 1 || p < 0) throw DomainError("exact_expectation_E needs i, j >= 1 and p >= 0");
  if (n < 1) throw DomainError("n must be >= 1");
  return Rational(binomial(n + 2, i + j + p + 2), binomial(n, 2) + 1);
}

double inversion_density_E(double x) {
  if (!(x > 0.0) || !(x < 0.25)) return 0.0;
  // 2 log((1+s)/(1-s)) with 1 - s = 4x / (1+s), avoiding cancellation near x = 0.
  const double s = std::sqrt(1.0 - 4.0 * x);
  return 2.0 * (2.0 * std::log1p(s) - std::log(4.0 * x));
}

double inversion_density_E_moment(int r) {
  if (r < 0) throw DomainError("moment order must be >= 0");
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate([r](double x) { return std::pow(x, r) * inversion_density_E(x); }, 0.0, 0.25);
}

std::vector<double> discretized_excursion(int N, RandomStream& rng) {
  if (N < 1) throw DomainError("excursion needs N >= 1");
  const DyckPath path = random_dyck_path(N, rng);
  std::vector<double> h(path.steps.size() + 1, 0.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(path.steps.size()));
  int level = 0;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    level += path.steps[i] ? 1 : -1;
    h[i + 1] = level * scale;
  }
  return h;
}

LimitSampler::LimitSampler(LimitLaw law) : law_(std::move(law)) {
  if (const auto* n = std::get_if<NormalLaw>(&law_)) {
    scale_ = std::sqrt(n->var_coeff.to_double());
  } else if (const auto* d = std::get_if<DirichletLaw>(&law_)) {
    for (const auto& [m, c] : dirichlet_poly(*d)) {
      if (c == 0) continue;
      monomials_.push_back(m);
      coeffs_.push_back(to_double(c));
    }
  } else if (const auto* u = std::get_if<UniformLaw>(&law_)) {
    for (const auto& c : uniform_poly(*u)) coeffs_.push_back(to_double(c));
  } else {
    const auto& e = std::get<ExcursionLaw>(law_);
    if (e.family == FamilyKind::Single132 && !is_decreasing(e.sigma) && e.sigma != Permutation::parse("12")) {
      throw DomainError("excursion functional for " + e.sigma.str() + " is not supported");
    }
  }
}

double LimitSampler::operator()(RandomStream& rng) const {
  if (std::holds_alternative<NormalLaw>(law_)) return scale_ * rng.normal();
  if (std::holds_alternative<DirichletLaw>(law_)) {
    const double e1 = rng.exponential();
    const double e2 = rng.exponential();
    const double e3 = rng.exponential();
    const double s = e1 + e2 + e3;
    const std::array<double, 3> xyz{e1 / s, e2 / s, e3 / s};
    double w = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      double term = coeffs_[t];
      for (int a = 0; a < 3; ++a) {
        for (int k = 0; k < monomials_[t][a]; ++k) term *= xyz[a];
      }
      w += term;
    }
    return w;
  }
  if (std::holds_alternative<UniformLaw>(law_)) {
    const double u = rng.uniform01();
    double w = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) w = w * u + coeffs_[i];
    return w;
  }

  const auto& e = std::get<ExcursionLaw>(law_);
  if (e.family == FamilyKind::Single132 && is_decreasing(e.sigma)) return to_double(inv_factorial(e.sigma.size()));
  const auto h = discretized_excursion(e.steps, rng);
  const double dt = 1.0 / static_cast<double>(h.size() - 1);
  if (e.family == FamilyKind::Single132) {
    double area = 0.0;
    for (std::size_t i = 1; i < h.size(); ++i) area += 0.5 * (h[i - 1] + h[i]) * dt;
    return std::sqrt(2.0) * area;
  }
  // Nested integral over t_1 < ... < t_l of prod e(t_i)^(m_i - 1).
  std::vector<double> inner(h.size(), 1.0);
  for (int len : blocks(e.sigma).lengths()) {
    std::vector<double> outer(h.size(), 0.0);
    for (std::size_t i = 1; i < h.size(); ++i) {
      const double a = inner[i - 1] * std::pow(h[i - 1], len - 1);
      const double b = inner[i] * std::pow(h[i], len - 1);
      outer[i] = outer[i - 1] + 0.5 * (a + b) * dt;
    }
    inner = std::move(outer);
  }
  return inner.back();
}

double sample_limit(const LimitLaw& law, RandomStream& rng) { return LimitSampler(law)(rng); }

}  // namespace pavoid
