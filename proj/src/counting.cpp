#include "pavoid/counting.hpp"

#include <algorithm>
#include <limits>
#include <type_traits>

#include "pavoid/error.hpp"
#include "pavoid/simd/kernels.hpp"

namespace pavoid {

namespace {

using u128 = unsigned __int128;

constexpr std::size_t kQuadraticInversionLimit = 1024;

std::uint64_t fenwick_inversions(std::span<const int> values) {
  // values are a permutation of 1..n here, or at least distinct in 1..max.
  const int n = *std::max_element(values.begin(), values.end());
  std::vector<std::uint32_t> tree(static_cast<std::size_t>(n) + 1, 0);
  std::uint64_t inv = 0;
  std::uint64_t seen = 0;
  for (int v : values) {
    std::uint64_t not_greater = 0;
    for (int i = v; i > 0; i -= i & -i) not_greater += tree[static_cast<std::size_t>(i)];
    inv += seen - not_greater;
    for (int i = v; i <= n; i += i & -i) ++tree[static_cast<std::size_t>(i)];
    ++seen;
  }
  return inv;
}

// C(n, k) in the count type. The u128 path throws on overflow.
template <class T>
T binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return T(0);
  if constexpr (std::is_same_v<T, BigInt>) {
    return binomial(n, k);
  } else {
    k = std::min(k, n - k);
    u128 r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
      u128 next;
      if (__builtin_mul_overflow(r, static_cast<u128>(n - i), &next)) {
        throw DomainError("occurrence count exceeds 128-bit range");
      }
      r = next / static_cast<u128>(i + 1);
    }
    return r;
  }
}

template <class T>
T mul(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return a * b;
  } else {
    u128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw DomainError("occurrence count exceeds 128-bit range");
    return r;
  }
}

template <class T>
T add(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return a + b;
  } else {
    u128 r;
    if (__builtin_add_overflow(a, b, &r)) throw DomainError("occurrence count exceeds 128-bit range");
    return r;
  }
}

template <class T>
T from_big(const BigInt& x) {
  if constexpr (std::is_same_v<T, BigInt>) {
    return x;
  } else {
    if (x > BigInt(std::numeric_limits<std::uint64_t>::max())) {
      throw DomainError("occurrence count exceeds 64-bit range");
    }
    return static_cast<u128>(x.convert_to<std::uint64_t>());
  }
}

// Embeddings of a run of sigma-blocks into one PAIR-A block of length L.
// The run is either k blocks of length 1 (an increasing segment, which also
// equals (1) = beta_1 when k = 1) or one block (k, 1, ..., k-1), k >= 2.
template <class T>
T pair_a_segment(std::span<const int> run, int L) {
  const int k = static_cast<int>(run.size());
  const bool all_ones = std::all_of(run.begin(), run.end(), [](int x) { return x == 1; });
  if (all_ones) {
    T r = binom<T>(L - 1, k);
    if (k == 1) r = add<T>(r, T(1));
    return r;
  }
  if (k == 1) return binom<T>(L - 1, run[0] - 1);
  return T(0);
}

}  // namespace

std::uint64_t count_inversions(std::span<const int> values) {
  if (values.size() < 2) return 0;
  if (values.size() <= kQuadraticInversionLimit) {
    std::vector<std::int32_t> v(values.begin(), values.end());
    return simd::inversions_quadratic(v);
  }
  return fenwick_inversions(values);
}

BigInt segment_embeddings(const Pattern& tau, int L) {
  if (L < 1) return 0;
  const int k = tau.size();
  BigInt r = 0;
  if (tau.is_identity()) r += binomial(L - 1, k);
  bool beta = tau.at(1) == k;
  for (int i = 2; beta && i <= k; ++i) beta = tau.at(i) == i - 1;
  if (beta) r += binomial(L - 1, k - 1);
  return r;
}

FastCounter::FastCounter(FamilyId family, Pattern sigma) : family_(std::move(family)), sigma_(std::move(sigma)) {
  if (family_.kind == FamilyKind::Trivial || family_.kind == FamilyKind::Unrestricted) {
    throw DomainError(kind_name(family_.kind) + " family has no coded form to count on");
  }
  member_ = is_member(family_, sigma_);
  if (!member_) return;
  const CodedForm code = encode(family_, sigma_);
  switch (family_.kind) {
    case FamilyKind::PairD: sigma_signs_ = std::get<SignCode>(code).signs; break;
    case FamilyKind::PairB:
    case FamilyKind::PairA:
    case FamilyKind::TripleAAA: sigma_parts_ = std::get<Composition>(code).parts; break;
    case FamilyKind::PairE:
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE: sigma_grid_ = std::get<GridForm>(code); break;
    default: break;
  }
}

template <class T>
T FastCounter::count_impl(const CodedForm& code) const {
  validate_code(family_, code);
  const int n = coded_length(code);
  const int m = sigma_.size();
  if (!member_ || m > n) return T(0);

  switch (family_.kind) {
    case FamilyKind::Single132:
    case FamilyKind::Single321: {
      const Permutation pi = decode(family_, code);
      if (m == 1) return T(n);
      if (m == 2) {
        const std::uint64_t inv = count_inversions(pi.values());
        if (sigma_.at(1) == 2) return T(inv);
        return binom<T>(n, 2) - T(inv);
      }
      return from_big<T>(occurrences(sigma_, pi));
    }

    case FamilyKind::PairD: {
      // Positions 2..m of an occurrence carry the signs of sigma; the first
      // position is unconstrained. dp[t] = ways to place sigma_1..sigma_t.
      const auto& xi = std::get<SignCode>(code).signs;
      std::vector<T> dp(static_cast<std::size_t>(m) + 1, T(0));
      dp[0] = T(1);
      for (int pos = 1; pos <= n; ++pos) {
        for (int t = std::min(m, pos); t >= 1; --t) {
          const bool fits = t == 1 || (pos >= 2 && xi[static_cast<std::size_t>(pos - 2)] ==
                                                     sigma_signs_[static_cast<std::size_t>(t - 2)]);
          if (fits) dp[static_cast<std::size_t>(t)] = add<T>(dp[static_cast<std::size_t>(t)], dp[static_cast<std::size_t>(t - 1)]);
        }
      }
      return dp[static_cast<std::size_t>(m)];
    }

    case FamilyKind::PairB:
    case FamilyKind::TripleAAA: {
      // Distinct sigma-blocks go to distinct pi-blocks, in order.
      const auto& L = std::get<Composition>(code).parts;
      const std::size_t b = sigma_parts_.size();
      std::vector<T> dp(b + 1, T(0));
      dp[0] = T(1);
      for (int len : L) {
        for (std::size_t t = b; t >= 1; --t) {
          dp[t] = add<T>(dp[t], mul<T>(dp[t - 1], binom<T>(len, sigma_parts_[t - 1])));
        }
      }
      return dp[b];
    }

    case FamilyKind::PairA: {
      // A pi-block hosts a consecutive run of sigma-blocks (possibly empty).
      const auto& L = std::get<Composition>(code).parts;
      const std::size_t b = sigma_parts_.size();
      std::vector<T> dp(b + 1, T(0));
      dp[0] = T(1);
      for (int len : L) {
        std::vector<T> next = dp;
        for (std::size_t t = 0; t < b; ++t) {
          if (dp[t] == T(0)) continue;
          for (std::size_t u = t + 1; u <= b; ++u) {
            const T w = pair_a_segment<T>(std::span<const int>(sigma_parts_).subspan(t, u - t), len);
            if (w == T(0)) {
              if (sigma_parts_[u - 1] != 1) break;
              continue;
            }
            next[u] = add<T>(next[u], mul<T>(dp[t], w));
          }
        }
        dp = std::move(next);
      }
      return dp[b];
    }

    case FamilyKind::PairE: {
      const auto& g = std::get<GridForm>(code);
      const auto& s = sigma_grid_;
      if (!s.identity) {
        if (g.identity) return T(0);
        return mul<T>(mul<T>(binom<T>(g.k, s.k), binom<T>(g.l, s.l)), binom<T>(g.m, s.m));
      }
      if (g.identity) return binom<T>(n, m);
      return add<T>(binom<T>(g.k + g.m, m), binom<T>(g.l + g.m, m)) - binom<T>(g.m, m);
    }

    case FamilyKind::TripleCCC: {
      const int K = std::get<GridForm>(code).k;
      const int k = sigma_grid_.k;
      const int l = sigma_grid_.l;
      if (k >= 2) return mul<T>(binom<T>(K, k), binom<T>(n - K, l));
      return add<T>(mul<T>(T(K), binom<T>(n - K, l)), binom<T>(n - K, l + 1));
    }

    case FamilyKind::TripleBBB: {
      const int K = std::get<GridForm>(code).k;
      const int k = sigma_grid_.k;
      const int l = sigma_grid_.l;
      if (k >= 2) return mul<T>(binom<T>(K - 1, k - 1), binom<T>(n - K, l));
      return add<T>(binom<T>(n - 1, l + 1), binom<T>(n - K, l));
    }

    case FamilyKind::TripleEEE: {
      const int K = std::get<GridForm>(code).k;
      const int k = sigma_grid_.k;
      const int l = sigma_grid_.l;
      if (l >= 1) return mul<T>(binom<T>(K, k), binom<T>(n - K, l));
      return add<T>(binom<T>(K, k), binom<T>(n - K, k));
    }

    case FamilyKind::Trivial:
    case FamilyKind::Unrestricted: break;
  }
  throw DomainError("no fast counter for " + kind_name(family_.kind));
}

BigInt FastCounter::count(const CodedForm& code) const { return count_impl<BigInt>(code); }

std::uint64_t FastCounter::count_u64(const CodedForm& code) const {
  const u128 r = count_impl<u128>(code);
  if (r > std::numeric_limits<std::uint64_t>::max()) throw DomainError("occurrence count exceeds 64-bit range");
  return static_cast<std::uint64_t>(r);
}

BigInt fast_count(const FamilyId& family, const Pattern& sigma, const CodedForm& code) {
  return FastCounter(family, sigma).count(code);
}

}  // namespace pavoid
