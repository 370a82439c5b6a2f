#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pavoid/bignum.hpp"
#include "pavoid/coded_form.hpp"
#include "pavoid/families.hpp"
#include "pavoid/permutation.hpp"

namespace pavoid {

/// Inversions of a sequence of distinct integers. Quadratic SIMD kernel for
/// short inputs, Fenwick tree above that.
std::uint64_t count_inversions(std::span<const int> values);

/// Embeddings of the pattern tau into one PAIR-A block (L, 1, 2, ..., L-1).
/// Only increasing tau and tau = (k, 1, ..., k-1) embed.
BigInt segment_embeddings(const Pattern& tau, int L);

/// Exact occurrences of a fixed sigma in family members given by their codes.
///
/// Works in the family's canonical frame: sigma and the codes are canonical.
/// Runs in time polynomial in n and |sigma|, except for the single-pattern
/// families with |sigma| >= 3, which decode and fall back to the generic
/// depth-first counter. A sigma that is not itself a member counts 0.
class FastCounter {
 public:
  FastCounter(FamilyId family, Pattern sigma);

  BigInt count(const CodedForm& code) const;
  /// Same value in 64 bits; throws DomainError if it could overflow.
  std::uint64_t count_u64(const CodedForm& code) const;

  const FamilyId& family() const { return family_; }
  const Pattern& sigma() const { return sigma_; }
  bool sigma_is_member() const { return member_; }

 private:
  template <class T>
  T count_impl(const CodedForm& code) const;

  FamilyId family_;
  Pattern sigma_;
  bool member_ = false;
  std::vector<int> sigma_parts_;        // composition families: sigma's block lengths
  std::vector<std::int8_t> sigma_signs_;  // PAIR-D: eta_2..eta_m
  GridForm sigma_grid_;                 // grid families
};

BigInt fast_count(const FamilyId& family, const Pattern& sigma, const CodedForm& code);

}  // namespace pavoid
