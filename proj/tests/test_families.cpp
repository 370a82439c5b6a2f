#include <gtest/gtest.h>

#include <map>
#include <set>

#include "pavoid/catalan.hpp"
#include "pavoid/error.hpp"
#include "pavoid/families.hpp"

using namespace pavoid;

namespace {

std::vector<Permutation> brute_force_members(const std::vector<Pattern>& forbidden, int n) {
  std::vector<Permutation> out;
  for (const auto& pi : all_permutations(n)) {
    if (avoids(pi, forbidden)) out.push_back(pi);
  }
  return out;
}

std::set<Permutation> as_set(const std::vector<Permutation>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Normalize, SpecExamples) {
  const auto d = normalize("213,231");
  EXPECT_EQ(d.kind, FamilyKind::PairD);
  EXPECT_EQ(d.canonical_name(), "132,312");
  EXPECT_EQ(normalize("123,321").kind, FamilyKind::Trivial);
  const auto id = normalize("132,312");
  EXPECT_EQ(id.kind, FamilyKind::PairD);
  EXPECT_TRUE(id.symmetry == SymmetryElement{});
}

TEST(Normalize, RejectsWrongLengths) {
  EXPECT_THROW(normalize("12"), DomainError);
  EXPECT_THROW(normalize("1234,132"), DomainError);
  EXPECT_EQ(normalize("").kind, FamilyKind::Unrestricted);
}

TEST(Normalize, EveryThreePatternSetResolvesConsistently) {
  // Enumerate all nonempty subsets of S_3 and check the classification and
  // the witnessing symmetry.
  const auto s3 = all_permutations(3);
  std::map<FamilyKind, int> classes;
  for (unsigned mask = 1; mask < 64; ++mask) {
    std::vector<Pattern> set;
    for (int i = 0; i < 6; ++i) {
      if (mask & (1U << i)) set.push_back(s3[static_cast<std::size_t>(i)]);
    }
    const auto f = normalize(set);
    ++classes[f.kind];
    if (f.kind == FamilyKind::Trivial) continue;
    std::vector<Pattern> image;
    for (const auto& p : set) image.push_back(apply_symmetry(p, f.symmetry));
    std::sort(image.begin(), image.end());
    EXPECT_EQ(image, f.canonical);
    // The inverse symmetry brings the canonical set back.
    std::vector<Pattern> back;
    for (const auto& p : f.canonical) back.push_back(apply_symmetry(p, inverse(f.symmetry)));
    std::sort(back.begin(), back.end());
    EXPECT_EQ(back, f.original);
    // Cardinalities agree with the original (uncanonicalized) set.
    for (int n = 1; n <= 6; ++n) {
      EXPECT_EQ(cardinality(f, n), BigInt(brute_force_members(set, n).size())) << family_name(set);
    }
  }
  EXPECT_EQ(classes[FamilyKind::Single132] + classes[FamilyKind::Single321], 6);
  EXPECT_EQ(classes[FamilyKind::Single321], 2);
}

TEST(Cardinality, SpecExamples) {
  EXPECT_EQ(cardinality(canonical_family(FamilyKind::PairD), 4), 8);
  EXPECT_EQ(cardinality(canonical_family(FamilyKind::TripleAAA), 5), 8);
  EXPECT_EQ(cardinality(canonical_family(FamilyKind::PairE), 4), 7);
  EXPECT_EQ(cardinality(canonical_family(FamilyKind::Single132), 4), 14);
}

TEST(Cardinality, MatchesBruteForceFiltering) {
  for (FamilyKind kind : nontrivial_kinds()) {
    const auto f = canonical_family(kind);
    for (int n = 1; n <= 8; ++n) {
      EXPECT_EQ(cardinality(f, n), BigInt(brute_force_members(f.canonical, n).size())) << kind_name(kind) << " n=" << n;
    }
  }
}

TEST(Members, CharacterizationAgreesWithAvoidance) {
  for (FamilyKind kind : nontrivial_kinds()) {
    const auto f = canonical_family(kind);
    for (int n = 1; n <= 8; ++n) {
      for (const auto& pi : all_permutations(n)) {
        ASSERT_EQ(is_member(f, pi), avoids(pi, f.canonical)) << kind_name(kind) << " " << pi.str();
      }
    }
  }
}

TEST(Members, SpecExamples) {
  const auto b = canonical_family(FamilyKind::PairB);
  EXPECT_TRUE(is_member(b, Permutation::parse("21435")));
  // 132 avoids 231 and 312 and its blocks 1, 32 are decreasing: a member.
  EXPECT_TRUE(is_member(b, Permutation::parse("132")));
  EXPECT_TRUE(avoids(Permutation::parse("132"), b.canonical));
  EXPECT_FALSE(is_member(b, Permutation::parse("231")));
  EXPECT_FALSE(is_member(b, Permutation::parse("1342")));
  EXPECT_FALSE(is_member(canonical_family(FamilyKind::PairE), Permutation::parse("3142")));
}

TEST(Codes, SpecExamples) {
  const auto d = canonical_family(FamilyKind::PairD);
  EXPECT_EQ(std::get<SignCode>(encode(d, Permutation::parse("231"))).signs, (std::vector<std::int8_t>{1, -1}));
  EXPECT_EQ(decode(d, SignCode{{1, -1}}), Permutation::parse("231"));

  const auto b = canonical_family(FamilyKind::PairB);
  EXPECT_EQ(std::get<Composition>(encode(b, Permutation::parse("21435"))).parts, (std::vector<int>{2, 2, 1}));

  const auto e = canonical_family(FamilyKind::PairE);
  EXPECT_EQ(std::get<GridForm>(encode(e, Permutation::parse("2134"))), (GridForm{4, 1, 1, 2, false}));

  const auto aaa = canonical_family(FamilyKind::TripleAAA);
  EXPECT_EQ(decode(aaa, Composition{{2, 1, 2}}), Permutation::parse("21354"));

  const auto eee = canonical_family(FamilyKind::TripleEEE);
  EXPECT_EQ(decode(eee, GridForm{5, 2, 3, 0, false}), Permutation::parse("45123"));
}

TEST(Codes, NotAMemberAndMalformedCodes) {
  const auto d = canonical_family(FamilyKind::PairD);
  EXPECT_THROW(encode(d, Permutation::parse("132")), NotAMember);
  EXPECT_THROW(decode(d, SignCode{{1, 0}}), DomainError);
  EXPECT_THROW(decode(d, Composition{{1, 2}}), DomainError);
  const auto aaa = canonical_family(FamilyKind::TripleAAA);
  EXPECT_THROW(decode(aaa, Composition{{3}}), DomainError);
  const auto e = canonical_family(FamilyKind::PairE);
  EXPECT_THROW(decode(e, GridForm{4, 0, 2, 2, false}), DomainError);
  EXPECT_THROW(decode(e, GridForm{4, 1, 2, 2, false}), DomainError);
  const auto ccc = canonical_family(FamilyKind::TripleCCC);
  EXPECT_THROW(decode(ccc, GridForm{4, 5, -1, 0, false}), DomainError);
  EXPECT_THROW(encode(normalize("123,321"), Permutation::parse("12")), DomainError);
}

TEST(Codes, BijectionRoundTrips) {
  for (FamilyKind kind : nontrivial_kinds()) {
    const auto f = canonical_family(kind);
    for (int n = 1; n <= 10; ++n) {
      std::size_t codes = 0;
      std::set<Permutation> seen;
      for_each_code(f, n, [&](const CodedForm& c) {
        ++codes;
        const auto pi = decode(f, c);
        ASSERT_EQ(pi.size(), n);
        ASSERT_TRUE(is_member(f, pi));
        ASSERT_EQ(encode(f, pi), c) << kind_name(kind);
        seen.insert(pi);
      });
      EXPECT_EQ(BigInt(codes), cardinality(f, n)) << kind_name(kind) << " n=" << n;
      EXPECT_EQ(seen.size(), codes);
    }
  }
}

TEST(Enumerate, SpecExamples) {
  const auto d = canonical_family(FamilyKind::PairD);
  EXPECT_EQ(enumerate(d, 3).size(), 4u);
  const auto ccc = canonical_family(FamilyKind::TripleCCC);
  EXPECT_EQ(as_set(enumerate(ccc, 3)), (std::set<Permutation>{Permutation::parse("123"), Permutation::parse("213"),
                                                                Permutation::parse("321")}));
  for (FamilyKind kind : nontrivial_kinds()) {
    EXPECT_EQ(enumerate(canonical_family(kind), 1), std::vector<Permutation>{Permutation::identity(1)});
  }
}

TEST(Enumerate, AgreesWithExtensionOracle) {
  for (FamilyKind kind : nontrivial_kinds()) {
    const auto f = canonical_family(kind);
    for (int n = 1; n <= 8; ++n) {
      EXPECT_EQ(as_set(enumerate(f, n)), as_set(enumerate_by_extension(f.canonical, n))) << kind_name(kind);
    }
  }
  const auto trivial = normalize("123,321");
  EXPECT_EQ(cardinality(trivial, 4), 4);
  EXPECT_EQ(cardinality(trivial, 5), 0);
  EXPECT_TRUE(enumerate(trivial, 6).empty());
}

TEST(Sample, DeterministicForSeed) {
  for (FamilyKind kind : nontrivial_kinds()) {
    const auto f = canonical_family(kind);
    RandomStream a(42, 7);
    RandomStream b(42, 7);
    for (int i = 0; i < 50; ++i) {
      const auto p = sample(f, 30, a);
      ASSERT_EQ(p, sample(f, 30, b));
      ASSERT_TRUE(is_member(f, p));
    }
  }
}

TEST(Sample, SmallCaseFrequencies) {
  // AAA and PAIR-E at n = 2: both members with probability 1/2.
  for (FamilyKind kind : {FamilyKind::TripleAAA, FamilyKind::PairE}) {
    const auto f = canonical_family(kind);
    RandomStream rng(2024, 1);
    const int draws = 200000;
    int ones = 0;
    for (int i = 0; i < draws; ++i) ones += sample(f, 2, rng) == Permutation::parse("21");
    const double se = std::sqrt(0.25 / draws);
    EXPECT_NEAR(static_cast<double>(ones) / draws, 0.5, 3 * se) << kind_name(kind);
  }
}

TEST(Sample, FibonacciCompositionsAtLargeLength) {
  const auto aaa = canonical_family(FamilyKind::TripleAAA);
  RandomStream rng(5, 0);
  for (int n : {199, 200, 201, 250, 1000}) {
    const auto c = std::get<Composition>(sample_code(aaa, n, rng));
    EXPECT_EQ(c.total(), n);
    for (int p : c.parts) EXPECT_TRUE(p == 1 || p == 2);
  }
}

TEST(Sample, TrivialAndUnrestricted) {
  RandomStream rng(1, 0);
  const auto u = normalize("");
  const auto p = sample(u, 9, rng);
  EXPECT_EQ(p.size(), 9);
  const auto t = normalize("123,321");
  EXPECT_TRUE(is_member(t, sample(t, 4, rng)));
  EXPECT_THROW(sample(t, 5, rng), DomainError);
}

TEST(Catalan, DyckBijections) {
  for (int n = 1; n <= 9; ++n) {
    std::set<Permutation> a321;
    std::set<Permutation> a132;
    for_each_dyck_path(n, [&](const DyckPath& p) {
      ASSERT_TRUE(is_dyck_path(p));
      const auto x = dyck_to_321_avoider(p);
      const auto y = dyck_to_132_avoider(p);
      ASSERT_EQ(avoider_321_to_dyck(x), p);
      ASSERT_EQ(avoider_132_to_dyck(y), p);
      a321.insert(x);
      a132.insert(y);
    });
    EXPECT_EQ(BigInt(a321.size()), catalan(n));
    EXPECT_EQ(BigInt(a132.size()), catalan(n));
  }
  RandomStream rng(3, 3);
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(is_dyck_path(random_dyck_path(57, rng)));
}
