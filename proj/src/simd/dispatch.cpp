#include <atomic>
#include <cstdlib>
#include <string_view>

#include "pavoid/error.hpp"
#include "pavoid/simd/kernels.hpp"

namespace pavoid::simd {

namespace {

Level initial_level() {
  if (const char* env = std::getenv("PAVOID_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Level::Scalar;
    if (v == "avx2" && level_supported(Level::Avx2)) return Level::Avx2;
  }
  return detect_level();
}

std::atomic<Level>& current() {
  static std::atomic<Level> level{initial_level()};
  return level;
}

}  // namespace

std::string level_name(Level level) { return level == Level::Avx2 ? "avx2" : "scalar"; }

bool level_supported(Level level) {
  if (level == Level::Scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Level detect_level() { return level_supported(Level::Avx2) ? Level::Avx2 : Level::Scalar; }

Level active_level() { return current().load(std::memory_order_relaxed); }

void set_level(Level level) {
  if (!level_supported(level)) throw DomainError("SIMD level " + level_name(level) + " not supported on this CPU");
  current().store(level, std::memory_order_relaxed);
}

std::uint64_t inversions_quadratic(std::span<const std::int32_t> v) {
  return active_level() == Level::Avx2 ? avx2::inversions_quadratic(v) : scalar::inversions_quadratic(v);
}

PowerSums power_sums(std::span<const double> x, double shift) {
  return active_level() == Level::Avx2 ? avx2::power_sums(x, shift) : scalar::power_sums(x, shift);
}

double ks_uniform_sorted(std::span<const double> sorted) {
  return active_level() == Level::Avx2 ? avx2::ks_uniform_sorted(sorted) : scalar::ks_uniform_sorted(sorted);
}

double chi_square(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw DomainError("chi_square: size mismatch");
  return active_level() == Level::Avx2 ? avx2::chi_square(observed, expected) : scalar::chi_square(observed, expected);
}

}  // namespace pavoid::simd
