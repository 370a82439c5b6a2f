#include "pavoid/bignum.hpp"

#include <limits>

#include "pavoid/error.hpp"

namespace pavoid {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw DomainError("binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

BigInt factorial(std::int64_t n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt catalan(std::int64_t n) { return binomial(2 * n, n) / (n + 1); }

BigInt fibonacci(std::int64_t n) {
  if (n < 0) throw DomainError("fibonacci of a negative index");
  BigInt a = 0, b = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    BigInt t = a + b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace pavoid
