#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pavoid/bignum.hpp"

namespace pavoid {

/// A permutation of [1..n] in one-line notation, n >= 1.
///
/// Construction validates the bijection invariant, so every operation may
/// assume it. Values are immutable after construction.
class Permutation {
 public:
  /// Throws DomainError unless `values` is a bijection on [1..values.size()].
  explicit Permutation(std::vector<int> values);
  Permutation(std::initializer_list<int> values);

  static Permutation identity(int n);
  /// n (n-1) ... 1
  static Permutation decreasing(int n);

  /// Parses "2 3 1" (space or comma separated) or the compact form "231" (n <= 9).
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(values_.size()); }
  /// 1-based value at 1-based position i.
  int at(int i) const { return values_[static_cast<std::size_t>(i - 1)]; }
  int operator[](std::size_t i) const { return values_[i]; }
  std::span<const int> values() const { return values_; }

  bool is_identity() const;

  /// Space-separated one-line notation.
  std::string str() const;
  /// Digits without separators for n <= 9, otherwise str().
  std::string compact() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

using Pattern = Permutation;

/// Relative order of an arbitrary sequence of distinct integers.
Permutation standardize(std::span<const int> values);

/// All permutations of [1..m] in lexicographic order.
std::vector<Permutation> all_permutations(int m);

/// Number of occurrences of `sigma` in `pi`: index tuples i1 < ... < im whose
/// values are order-isomorphic to sigma. Zero when |sigma| > |pi|.
///
/// Depth-first enumeration over positions; a partial match is extended only
/// by values consistent with sigma's relative order against every value
/// already chosen. Exact for any lengths; meant for small inputs.
BigInt occurrences(const Pattern& sigma, const Permutation& pi);

/// Same count in 64 bits, for callers that know it cannot overflow.
std::uint64_t occurrences_u64(const Pattern& sigma, const Permutation& pi);

/// True iff pi has at least one occurrence of sigma.
bool contains(const Permutation& pi, const Pattern& sigma);

/// True iff pi contains no pattern of `forbidden`.
bool avoids(const Permutation& pi, std::span<const Pattern> forbidden);

Permutation inverse(const Permutation& pi);
/// pi_n ... pi_1
Permutation reverse(const Permutation& pi);
/// (n+1-pi_1) ... (n+1-pi_n)
Permutation complement(const Permutation& pi);

/// sigma * tau: tau acts on [m+1 .. m+n] after sigma.
Permutation compose(const Pattern& sigma, const Pattern& tau);
Permutation compose(std::span<const Permutation> factors);

/// Unique decomposition into indecomposable blocks.
struct BlockDecomposition {
  std::vector<Permutation> blocks;

  std::vector<int> lengths() const;
  std::size_t count() const { return blocks.size(); }
};

BlockDecomposition blocks(const Permutation& pi);

/// Block lengths only, without materializing the blocks.
std::vector<int> block_lengths(std::span<const int> values);

bool is_indecomposable(const Permutation& pi);

/// Number of descents, counting position |sigma| as a descent by convention.
int descents_with_final(const Pattern& sigma);

}  // namespace pavoid
