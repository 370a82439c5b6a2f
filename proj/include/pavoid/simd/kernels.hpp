#pragma once

// Hot loops of the verification harness, in a portable scalar version and
// an AVX2 version. The dispatching entry points pick the best level the CPU
// supports once; PAVOID_SIMD=scalar|avx2 or set_level() overrides it.
//
// Integer kernels (inversions, KS) give bit-identical results at every
// level. The floating-point reductions (power sums, chi-square) sum in a
// different order per level, so they agree to rounding only.

#include <cstdint>
#include <span>
#include <string>

namespace pavoid::simd {

enum class Level { Scalar, Avx2 };

std::string level_name(Level level);
bool level_supported(Level level);
/// Best level available on this CPU.
Level detect_level();
/// Level used by the dispatching functions below.
Level active_level();
/// Throws DomainError if the CPU lacks the level.
void set_level(Level level);

/// Sums of (x - shift)^k for k = 1..4.
struct PowerSums {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  double s4 = 0.0;
};

/// #{i < j : v[i] > v[j]} by all-pairs comparison; O(n^2 / lanes).
std::uint64_t inversions_quadratic(std::span<const std::int32_t> v);
PowerSums power_sums(std::span<const double> x, double shift);
/// Kolmogorov distance between the empirical law of the sorted sample and U(0,1).
double ks_uniform_sorted(std::span<const double> sorted);
/// Sum of (observed - expected)^2 / expected.
double chi_square(std::span<const double> observed, std::span<const double> expected);

namespace scalar {
std::uint64_t inversions_quadratic(std::span<const std::int32_t> v);
PowerSums power_sums(std::span<const double> x, double shift);
double ks_uniform_sorted(std::span<const double> sorted);
double chi_square(std::span<const double> observed, std::span<const double> expected);
}  // namespace scalar

namespace avx2 {
std::uint64_t inversions_quadratic(std::span<const std::int32_t> v);
PowerSums power_sums(std::span<const double> x, double shift);
double ks_uniform_sorted(std::span<const double> sorted);
double chi_square(std::span<const double> observed, std::span<const double> expected);
}  // namespace avx2

}  // namespace pavoid::simd
