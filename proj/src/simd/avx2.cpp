// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "pavoid/simd/kernels.hpp"

namespace pavoid::simd::avx2 {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

std::uint64_t inversions_quadratic(std::span<const std::int32_t> v) {
  std::uint64_t count = 0;
  const std::size_t n = v.size();
  const std::int32_t* p = v.data();
  for (std::size_t i = 0; i < n; ++i) {
    const __m256i a = _mm256_set1_epi32(p[i]);
    std::size_t j = i + 1;
    for (; j + 8 <= n; j += 8) {
      const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + j));
      const int mask = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(a, b)));
      count += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(mask)));
    }
    for (; j < n; ++j) count += static_cast<std::uint64_t>(p[i] > p[j]);
  }
  return count;
}

PowerSums power_sums(std::span<const double> x, double shift) {
  const std::size_t n = x.size();
  const double* p = x.data();
  const __m256d c = _mm256_set1_pd(shift);
  __m256d a1 = _mm256_setzero_pd();
  __m256d a2 = _mm256_setzero_pd();
  __m256d a3 = _mm256_setzero_pd();
  __m256d a4 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(p + i), c);
    const __m256d d2 = _mm256_mul_pd(d, d);
    a1 = _mm256_add_pd(a1, d);
    a2 = _mm256_add_pd(a2, d2);
    a3 = _mm256_add_pd(a3, _mm256_mul_pd(d2, d));
    a4 = _mm256_add_pd(a4, _mm256_mul_pd(d2, d2));
  }
  PowerSums s{hsum(a1), hsum(a2), hsum(a3), hsum(a4)};
  for (; i < n; ++i) {
    const double d = p[i] - shift;
    const double d2 = d * d;
    s.s1 += d;
    s.s2 += d2;
    s.s3 += d2 * d;
    s.s4 += d2 * d2;
  }
  return s;
}

double ks_uniform_sorted(std::span<const double> sorted) {
  // Each lane computes the same expressions as the scalar loop, and max is
  // exact, so the result is bit-identical to scalar::ks_uniform_sorted.
  const std::size_t n = sorted.size();
  const double nd = static_cast<double>(n);
  const double* p = sorted.data();
  const __m256d vn = _mm256_set1_pd(nd);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(p + i);
    const __m256d above = _mm256_sub_pd(_mm256_div_pd(_mm256_add_pd(idx, one), vn), x);
    const __m256d below = _mm256_sub_pd(x, _mm256_div_pd(idx, vn));
    best = _mm256_max_pd(best, _mm256_max_pd(above, below));
    idx = _mm256_add_pd(idx, step);
  }
  double d = hmax(best);
  for (; i < n; ++i) {
    const double x = p[i];
    d = std::max(d, std::max(static_cast<double>(i + 1) / nd - x, x - static_cast<double>(i) / nd));
  }
  return d;
}

double chi_square(std::span<const double> observed, std::span<const double> expected) {
  const std::size_t n = observed.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d o = _mm256_loadu_pd(observed.data() + i);
    const __m256d e = _mm256_loadu_pd(expected.data() + i);
    const __m256d diff = _mm256_sub_pd(o, e);
    acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(diff, diff), e));
  }
  double stat = hsum(acc);
  for (; i < n; ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

}  // namespace pavoid::simd::avx2
