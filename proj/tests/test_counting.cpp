#include <gtest/gtest.h>

#include <numeric>

#include "pavoid/counting.hpp"
#include "pavoid/simd/kernels.hpp"

using namespace pavoid;

namespace {

std::vector<Pattern> patterns_up_to(int m) {
  std::vector<Pattern> out;
  for (int k = 1; k <= m; ++k) {
    for (auto& p : all_permutations(k)) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(SegmentEmbeddings, MatchesBruteForce) {
  for (int L = 1; L <= 8; ++L) {
    std::vector<int> v{L};
    for (int i = 1; i < L; ++i) v.push_back(i);
    const Permutation block(v);
    for (const auto& tau : patterns_up_to(4)) {
      ASSERT_EQ(segment_embeddings(tau, L), occurrences(tau, block)) << tau.str() << " L=" << L;
    }
  }
}

TEST(FastCount, SpecExamples) {
  const auto e = canonical_family(FamilyKind::PairE);
  const auto s21 = Permutation::parse("21");
  for (int K = 1; K <= 5; ++K) {
    for (int L = 1; K + L <= 8; ++L) {
      EXPECT_EQ(fast_count(e, s21, GridForm{8, K, L, 8 - K - L, false}), K * L);
    }
  }
  const auto bbb = canonical_family(FamilyKind::TripleBBB);
  for (int K = 1; K <= 9; ++K) EXPECT_EQ(fast_count(bbb, s21, GridForm{9, K, 9 - K, 0, false}), K - 1);
}

TEST(FastCount, NonMemberSigmaCountsZero) {
  const auto d = canonical_family(FamilyKind::PairD);
  EXPECT_EQ(fast_count(d, Permutation::parse("132"), SignCode{{1, -1, 1}}), 0);
}

TEST(FastCount, AgreesWithOccurrencesExhaustively) {
  const auto sigmas = patterns_up_to(4);
  for (FamilyKind kind : nontrivial_kinds()) {
    const auto f = canonical_family(kind);
    for (const auto& sigma : sigmas) {
      const FastCounter counter(f, sigma);
      for (int n = 1; n <= 8; ++n) {
        for_each_code(f, n, [&](const CodedForm& c) {
          const auto pi = decode(f, c);
          const BigInt expected = occurrences(sigma, pi);
          ASSERT_EQ(counter.count(c), expected) << kind_name(kind) << " sigma=" << sigma.str() << " pi=" << pi.str();
          ASSERT_EQ(BigInt(counter.count_u64(c)), expected);
        });
      }
    }
  }
}

TEST(FastCount, PairALongerPatterns) {
  const auto a = canonical_family(FamilyKind::PairA);
  for (const char* s : {"21", "312", "3124", "41235", "2131", "1"}) {
    Pattern sigma = Permutation::identity(1);
    try {
      sigma = Permutation::parse(s);
    } catch (const std::exception&) {
      continue;
    }
    for (int n = 1; n <= 9; ++n) {
      for_each_code(a, n, [&](const CodedForm& c) {
        ASSERT_EQ(fast_count(a, sigma, c), occurrences(sigma, decode(a, c)));
      });
    }
  }
}

TEST(FastCount, LargeInputsUseOverflowChecks) {
  const auto d = canonical_family(FamilyKind::PairD);
  SignCode code;
  code.signs.assign(4999, 1);
  const FastCounter c(d, Permutation::parse("12"));
  EXPECT_EQ(c.count_u64(code), 5000ull * 4999 / 2);
  EXPECT_EQ(c.count(code), binomial(5000, 2));
}

TEST(Inversions, FenwickAndQuadraticAgree) {
  RandomStream rng(9, 9);
  for (int n : {1, 2, 7, 100, 1024, 1025, 3000}) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    for (std::size_t i = v.size() - 1; i > 0; --i) std::swap(v[i], v[static_cast<std::size_t>(rng.bounded(i + 1))]);
    std::vector<std::int32_t> w(v.begin(), v.end());
    EXPECT_EQ(count_inversions(v), simd::scalar::inversions_quadratic(w)) << n;
  }
}
