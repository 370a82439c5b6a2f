#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pavoid {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Binomial coefficient in 64 bits. Throws DomainError on overflow.
std::uint64_t binomial_u64(std::int64_t n, std::int64_t k);

BigInt factorial(std::int64_t n);

/// n-th Catalan number.
BigInt catalan(std::int64_t n);

/// Fibonacci number with F(0) = 0, F(1) = 1.
BigInt fibonacci(std::int64_t n);

double to_double(const Rational& q);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& q);

}  // namespace pavoid
