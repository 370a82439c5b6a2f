#include "pavoid/asymptotics.hpp"

#include <cmath>

#include "pavoid/error.hpp"

namespace pavoid {

namespace {

Rational pow2(int e) {
  return e >= 0 ? Rational(BigInt(1) << e) : Rational(1, BigInt(1) << -e);
}

std::string rational_coeff(const Rational& q) { return to_string(q); }

}  // namespace

QSqrt5 operator/(const QSqrt5& x, const QSqrt5& y) {
  const Rational norm = y.a * y.a - 5 * y.b * y.b;
  if (norm == 0) throw DomainError("division by zero in Q(sqrt 5)");
  const QSqrt5 conj{y.a, -y.b};
  const QSqrt5 num = x * conj;
  return {num.a / norm, num.b / norm};
}

int QSqrt5::sign() const {
  // sign(a + b sqrt5): compare a^2 with 5 b^2 when the signs differ.
  const int sa = a.sign();
  const int sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational lhs = a * a;
  const Rational rhs = 5 * b * b;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

double QSqrt5::to_double() const {
  const long double r = static_cast<long double>(pavoid::to_double(a)) +
                        static_cast<long double>(pavoid::to_double(b)) * std::sqrt(5.0L);
  return static_cast<double>(r);
}

std::string QSqrt5::str() const {
  if (b == 0) return rational_coeff(a);
  std::string out;
  if (a != 0) out = rational_coeff(a);
  std::string bs = rational_coeff(b);
  if (!out.empty() && b > 0) out += '+';
  if (b == 1) bs.clear();
  else if (b == -1) bs = "-";
  else bs += '*';
  return out + bs + "sqrt(5)";
}

QSqrt5 pow(const QSqrt5& x, int e) {
  if (e < 0) return QSqrt5(1) / pow(x, -e);
  QSqrt5 r(1);
  QSqrt5 base = x;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

BigInt delannoy(int k, int l) {
  if (k < 0 || l < 0) throw DomainError("Delannoy numbers need k, l >= 0");
  BigInt sum = 0;
  for (int i = 0; i <= std::min(k, l); ++i) {
    sum += factorial(k + l - i) / (factorial(k - i) * factorial(l - i) * factorial(i));
  }
  return sum;
}

long double geometric_binomial_moment(int k, int l, int terms) {
  long double sum = 0.0L;
  for (int x = 1; x <= terms; ++x) {
    const long double w = std::ldexp(1.0L, -x);
    sum += w * static_cast<long double>(binomial(x, k).convert_to<double>()) *
           static_cast<long double>(binomial(x, l).convert_to<double>());
  }
  return sum;
}

Rational hoeffding_coefficient(int d, int i, int j) {
  if (d < 1 || i < 1 || j < 1 || i > d || j > d) throw DomainError("hoeffding_coefficient: index out of range");
  const BigInt num = factorial(i + j - 2) * factorial(2 * d - i - j);
  const BigInt den = factorial(i - 1) * factorial(j - 1) * factorial(d - i) * factorial(d - j) * factorial(2 * d - 1);
  return Rational(num, den);
}

double hoeffding_sigma2(int d, const Matrix& sigma) {
  if (d < 1 || sigma.size() != static_cast<std::size_t>(d)) throw DomainError("hoeffding_sigma2: dimension mismatch");
  double total = 0.0;
  for (int i = 1; i <= d; ++i) {
    if (sigma[static_cast<std::size_t>(i - 1)].size() != static_cast<std::size_t>(d)) {
      throw DomainError("hoeffding_sigma2: dimension mismatch");
    }
    for (int j = 1; j <= d; ++j) {
      total += to_double(hoeffding_coefficient(d, i, j)) * sigma[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
  }
  return total;
}

QSqrt5 hoeffding_sigma2(int d, const ExactMatrix& sigma) {
  if (d < 1 || sigma.size() != static_cast<std::size_t>(d)) throw DomainError("hoeffding_sigma2: dimension mismatch");
  QSqrt5 total;
  for (int i = 1; i <= d; ++i) {
    if (sigma[static_cast<std::size_t>(i - 1)].size() != static_cast<std::size_t>(d)) {
      throw DomainError("hoeffding_sigma2: dimension mismatch");
    }
    for (int j = 1; j <= d; ++j) {
      total = total + QSqrt5(hoeffding_coefficient(d, i, j)) * sigma[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
    }
  }
  return total;
}

QSqrt5 renewal_gamma2(const ProjectionSpec& spec) {
  const int d = spec.d;
  if (spec.nu.sign() <= 0) throw DomainError("renewal variance needs E X > 0");
  if (spec.cov_with_x.size() != static_cast<std::size_t>(d)) throw DomainError("renewal_gamma2: dimension mismatch");
  const QSqrt5 g2 = hoeffding_sigma2(d, spec.sigma);
  QSqrt5 cov_sum;
  for (const auto& c : spec.cov_with_x) cov_sum = cov_sum + c;
  const Rational fd1(factorial(d - 1));
  const Rational fd(factorial(d));
  return pow(spec.nu, 1 - 2 * d) * g2 -
         QSqrt5(Rational(2) / (fd1 * fd)) * pow(spec.nu, -2 * d) * spec.mu * cov_sum +
         QSqrt5(Rational(1) / (fd1 * fd1)) * pow(spec.nu, -2 * d - 1) * spec.mu * spec.mu * spec.var_x;
}

bool has_normal_limit(FamilyKind kind) {
  return kind == FamilyKind::PairD || kind == FamilyKind::PairB || kind == FamilyKind::PairA ||
         kind == FamilyKind::TripleAAA;
}

namespace {

ExactMatrix square(int d) { return ExactMatrix(static_cast<std::size_t>(d), std::vector<QSqrt5>(static_cast<std::size_t>(d))); }

ProjectionSpec pair_d_spec(const SignCode& eta) {
  const int m = eta.length();
  ProjectionSpec s;
  s.d = m;
  s.mu = pow2(1 - m);
  s.sigma = square(m);
  for (int i = 2; i <= m; ++i) {
    for (int j = 2; j <= m; ++j) {
      const int sign = eta.signs[static_cast<std::size_t>(i - 2)] * eta.signs[static_cast<std::size_t>(j - 2)];
      s.sigma[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = pow2(2 - 2 * m) * sign;
    }
  }
  s.cov_with_x.assign(static_cast<std::size_t>(m), QSqrt5());
  s.nu = 1;
  s.var_x = 0;
  return s;
}

ProjectionSpec pair_b_spec(const std::vector<int>& ell) {
  const int b = static_cast<int>(ell.size());
  ProjectionSpec s;
  s.d = b;
  s.nu = 2;
  s.var_x = 2;
  s.mu = pow2(b);
  s.sigma = square(b);
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      s.sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          pow2(2 * b - 1) * Rational(delannoy(ell[static_cast<std::size_t>(i)], ell[static_cast<std::size_t>(j)])) - pow2(2 * b);
    }
    s.cov_with_x.push_back(Rational(2 * ell[static_cast<std::size_t>(i)] - 1) * pow2(b));
  }
  return s;
}

ProjectionSpec pair_a_spec(const std::vector<int>& ell) {
  const int b = static_cast<int>(ell.size());
  int b1 = 0;
  for (int x : ell) b1 += x == 1;
  ProjectionSpec s;
  s.d = b;
  s.nu = 2;
  s.var_x = 2;
  s.mu = pow2(b1);
  s.sigma = square(b);
  for (int i = 0; i < b; ++i) {
    const int li = ell[static_cast<std::size_t>(i)];
    for (int j = 0; j < b; ++j) {
      const int lj = ell[static_cast<std::size_t>(j)];
      Rational v;
      if (li >= 2 && lj >= 2) v = pow2(2 * b1) * Rational(delannoy(li - 1, lj - 1)) - pow2(2 * b1);
      else if (li >= 2) v = pow2(2 * b1) * (li - 1);
      else if (lj >= 2) v = pow2(2 * b1) * (lj - 1);
      else v = pow2(2 * b1 - 1);
      s.sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
    s.cov_with_x.push_back(li >= 2 ? QSqrt5(pow2(b1 + 1) * (li - 1)) : QSqrt5(pow2(b1)));
  }
  return s;
}

ProjectionSpec triple_aaa_spec(const std::vector<int>& ell) {
  const int b = static_cast<int>(ell.size());
  int b1 = 0;
  for (int x : ell) b1 += x == 1;
  const int b2 = b - b1;
  const QSqrt5 p{Rational(-1, 2), Rational(1, 2)};
  const QSqrt5 two_p = QSqrt5(2) - p;
  const QSqrt5 one_p = QSqrt5(1) - p;
  const QSqrt5 var = QSqrt5(2) * p - QSqrt5(1);
  // f_i(X) = c_i * (X or X - 1); both have covariance Var X with X.
  std::vector<QSqrt5> c;
  for (int x : ell) c.push_back(x == 1 ? pow(two_p, b1 - 1) * pow(one_p, b2) : pow(two_p, b1) * pow(one_p, b2 - 1));
  ProjectionSpec s;
  s.d = b;
  s.nu = two_p;
  s.var_x = var;
  s.mu = pow(two_p, b1) * pow(one_p, b2);
  s.sigma = square(b);
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      s.sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)] * var;
    }
    s.cov_with_x.push_back(c[static_cast<std::size_t>(i)] * var);
  }
  return s;
}

}  // namespace

AsymptoticParams asymptotic_params(const FamilyId& family, const Pattern& sigma) {
  if (!has_normal_limit(family.kind)) {
    throw DomainError(kind_name(family.kind) + " has no normal limit law");
  }
  const CodedForm code = encode(family, sigma);
  AsymptoticParams out;
  out.kind = family.kind;
  out.sigma = sigma;
  if (family.kind == FamilyKind::PairD) {
    const int m = sigma.size();
    out.spec = pair_d_spec(std::get<SignCode>(code));
    out.renewal = false;
    out.mean_exponent = m;
    out.mean_coeff = out.spec.mu / QSqrt5(Rational(factorial(m)));
    out.var_coeff = hoeffding_sigma2(m, out.spec.sigma);
  } else {
    const auto& ell = std::get<Composition>(code).parts;
    const int b = static_cast<int>(ell.size());
    if (family.kind == FamilyKind::PairB) out.spec = pair_b_spec(ell);
    else if (family.kind == FamilyKind::PairA) out.spec = pair_a_spec(ell);
    else out.spec = triple_aaa_spec(ell);
    out.renewal = true;
    out.mean_exponent = b;
    out.mean_coeff = pow(out.spec.nu, -b) * out.spec.mu / QSqrt5(Rational(factorial(b)));
    out.var_coeff = renewal_gamma2(out.spec);
  }
  out.var_exponent = 2 * out.mean_exponent - 1;
  if (out.var_coeff.sign() < 0) throw DomainError("internal: negative limit variance for " + sigma.str());
  out.degenerate = out.var_coeff.is_zero();
  return out;
}

}  // namespace pavoid
