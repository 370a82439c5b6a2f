#pragma once

#include <array>
#include <string>
#include <string_view>

#include "pavoid/permutation.hpp"

namespace pavoid {

/// An element of the order-8 group generated by inverse, reversal and
/// complement, acting on permutation diagrams.
///
/// Applying the element means: take the inverse if `inverse` is set, then
/// reverse if `reverse` is set, then complement if `complement` is set.
/// Every element has exactly one such normal form.
struct SymmetryElement {
  bool inverse = false;
  bool reverse = false;
  bool complement = false;

  static SymmetryElement identity() { return {}; }

  /// Names like "identity", "reverse", "inverse+complement".
  std::string name() const;
  static SymmetryElement parse(std::string_view name);

  friend bool operator==(const SymmetryElement&, const SymmetryElement&) = default;
};

/// The eight group elements, identity first.
const std::array<SymmetryElement, 8>& symmetry_group();

Permutation apply_symmetry(const Permutation& pi, SymmetryElement g);

/// (g o h): apply h first, then g.
SymmetryElement compose(SymmetryElement g, SymmetryElement h);

SymmetryElement inverse(SymmetryElement g);

}  // namespace pavoid
