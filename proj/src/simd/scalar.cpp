#include <algorithm>
#include <cmath>

#include "pavoid/simd/kernels.hpp"

namespace pavoid::simd::scalar {

std::uint64_t inversions_quadratic(std::span<const std::int32_t> v) {
  std::uint64_t count = 0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::int32_t a = v[i];
    for (std::size_t j = i + 1; j < n; ++j) count += static_cast<std::uint64_t>(a > v[j]);
  }
  return count;
}

PowerSums power_sums(std::span<const double> x, double shift) {
  PowerSums s;
  for (double xi : x) {
    const double d = xi - shift;
    const double d2 = d * d;
    s.s1 += d;
    s.s2 += d2;
    s.s3 += d2 * d;
    s.s4 += d2 * d2;
  }
  return s;
}

double ks_uniform_sorted(std::span<const double> sorted) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double x = sorted[i];
    const double above = static_cast<double>(i + 1) / n - x;
    const double below = x - static_cast<double>(i) / n;
    d = std::max(d, std::max(above, below));
  }
  return d;
}

double chi_square(std::span<const double> observed, std::span<const double> expected) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

}  // namespace pavoid::simd::scalar
