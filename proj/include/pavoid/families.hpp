#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pavoid/bignum.hpp"
#include "pavoid/coded_form.hpp"
#include "pavoid/permutation.hpp"
#include "pavoid/random.hpp"
#include "pavoid/symmetry.hpp"

namespace pavoid {

enum class FamilyKind {
  Single132,
  Single321,
  PairD,      // {132,312}
  PairB,      // {231,312}
  PairA,      // {231,321}
  PairE,      // {132,321}
  TripleAAA,  // {231,312,321}
  TripleCCC,  // {132,231,312}
  TripleBBB,  // {132,231,321}
  TripleEEE,  // {132,213,321}
  Trivial,
  Unrestricted,
};

/// "PAIR-D", "SINGLE-132", ...
std::string kind_name(FamilyKind kind);
FamilyKind parse_kind(std::string_view name);

/// The ten nonequivalent families with a canonical representative.
const std::vector<FamilyKind>& nontrivial_kinds();

/// Comma-joined sorted compact patterns, e.g. "132,312".
std::string family_name(std::span<const Pattern> patterns);
std::vector<Pattern> parse_pattern_set(std::string_view text);

/// A forbidden set resolved to its canonical representative.
///
/// `symmetry` maps the user's set onto `canonical`; applying its inverse to
/// `canonical` gives `original` back. Every family operation below works in
/// the canonical frame; use to_canonical / from_canonical to move
/// permutations between frames.
struct FamilyId {
  FamilyKind kind = FamilyKind::Unrestricted;
  std::vector<Pattern> canonical;
  SymmetryElement symmetry;
  std::vector<Pattern> original;

  std::string canonical_name() const { return family_name(canonical); }
  std::string original_name() const { return family_name(original); }

  Permutation to_canonical(const Permutation& pi) const { return apply_symmetry(pi, symmetry); }
  Permutation from_canonical(const Permutation& pi) const {
    return apply_symmetry(pi, pavoid::inverse(symmetry));
  }
};

/// Resolves a set of length-3 patterns. An empty set is UNRESTRICTED.
/// Throws DomainError for patterns of other lengths.
FamilyId normalize(std::span<const Pattern> forbidden);
FamilyId normalize(std::string_view family_text);

/// The canonical family of a kind (identity symmetry).
FamilyId canonical_family(FamilyKind kind);

/// Exact |S_n(T)|.
BigInt cardinality(const FamilyId& family, int n);

/// Structural membership test in the canonical frame. Agrees with
/// avoids(pi, family.canonical).
bool is_member(const FamilyId& family, const Permutation& pi);

/// Unique code of a canonical-frame member. Throws NotAMember otherwise,
/// DomainError for TRIVIAL and UNRESTRICTED (no coded form).
CodedForm encode(const FamilyId& family, const Permutation& pi);

/// Inverse of encode. Throws DomainError on a malformed code.
Permutation decode(const FamilyId& family, const CodedForm& code);

/// Throws DomainError unless `code` is a well-formed code of this family.
void validate_code(const FamilyId& family, const CodedForm& code);

/// Visits every valid code of length n exactly once.
void for_each_code(const FamilyId& family, int n, const std::function<void(const CodedForm&)>& visit);

/// Visits every member of S_n(canonical) exactly once.
void for_each_member(const FamilyId& family, int n, const std::function<void(const Permutation&)>& visit);
std::vector<Permutation> enumerate(const FamilyId& family, int n);

/// Uniform code of a uniform member of S_n(canonical).
CodedForm sample_code(const FamilyId& family, int n, RandomStream& rng);

/// Uniform member of S_n(canonical).
Permutation sample(const FamilyId& family, int n, RandomStream& rng);

/// Independent enumerator: grows S_n(T) from S_{n-1}(T) by appending a last
/// entry and rejecting new occurrences. Works for any forbidden set.
std::vector<Permutation> enumerate_by_extension(std::span<const Pattern> forbidden, int n);

}  // namespace pavoid
