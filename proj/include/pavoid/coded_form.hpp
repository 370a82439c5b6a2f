#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace pavoid {

/// Signs xi_2..xi_n of a {132,312}-avoider: +1 where the entry is a
/// left-to-right maximum, -1 where it is a left-to-right minimum.
struct SignCode {
  std::vector<std::int8_t> signs;

  int length() const { return static_cast<int>(signs.size()) + 1; }
  friend bool operator==(const SignCode&, const SignCode&) = default;
};

/// Block lengths of a block-characterized family member.
struct Composition {
  std::vector<int> parts;

  int total() const;
  friend bool operator==(const Composition&, const Composition&) = default;
};

/// Grid parameters of the polynomial-size families.
///
/// {132,321}: (k, l, m) with k, l >= 1, m >= 0, or `identity`.
/// Three-pattern grid families: k in [1..n], l = n - k, m = 0.
struct GridForm {
  int n = 0;
  int k = 0;
  int l = 0;
  int m = 0;
  bool identity = false;

  friend bool operator==(const GridForm&, const GridForm&) = default;
};

/// Dyck path of semilength n; `steps[i]` is 1 for an up-step.
struct DyckPath {
  std::vector<std::uint8_t> steps;

  int semilength() const { return static_cast<int>(steps.size() / 2); }
  friend bool operator==(const DyckPath&, const DyckPath&) = default;
};

using CodedForm = std::variant<SignCode, Composition, GridForm, DyckPath>;

/// Length of the permutation a code describes.
int coded_length(const CodedForm& code);

}  // namespace pavoid
