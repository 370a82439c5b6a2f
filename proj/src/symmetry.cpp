#include "pavoid/symmetry.hpp"

#include <utility>

#include "pavoid/error.hpp"

namespace pavoid {

namespace {

// Action on a diagram point (position, value) in an n x n grid.
std::pair<int, int> act(SymmetryElement g, std::pair<int, int> p, int n) {
  if (g.inverse) std::swap(p.first, p.second);
  if (g.reverse) p.first = n + 1 - p.first;
  if (g.complement) p.second = n + 1 - p.second;
  return p;
}

// (1,2) in a 4x4 grid has a trivial stabilizer, so its image identifies the element.
constexpr int kProbeN = 4;
constexpr std::pair<int, int> kProbe{1, 2};

SymmetryElement from_probe_image(std::pair<int, int> image) {
  for (const auto& g : symmetry_group()) {
    if (act(g, kProbe, kProbeN) == image) return g;
  }
  throw DomainError("internal: symmetry probe image not found");
}

}  // namespace

const std::array<SymmetryElement, 8>& symmetry_group() {
  static const std::array<SymmetryElement, 8> group = {
      SymmetryElement{false, false, false}, SymmetryElement{false, true, false},
      SymmetryElement{false, false, true},  SymmetryElement{false, true, true},
      SymmetryElement{true, false, false},  SymmetryElement{true, true, false},
      SymmetryElement{true, false, true},   SymmetryElement{true, true, true},
  };
  return group;
}

std::string SymmetryElement::name() const {
  std::string out;
  auto add = [&](const char* part) {
    if (!out.empty()) out += '+';
    out += part;
  };
  if (inverse) add("inverse");
  if (reverse) add("reverse");
  if (complement) add("complement");
  return out.empty() ? "identity" : out;
}

SymmetryElement SymmetryElement::parse(std::string_view name) {
  for (const auto& g : symmetry_group()) {
    if (g.name() == name) return g;
  }
  throw ParseError("unknown symmetry element '" + std::string(name) + "'");
}

Permutation apply_symmetry(const Permutation& pi, SymmetryElement g) {
  Permutation out = g.inverse ? inverse(pi) : pi;
  if (g.reverse) out = reverse(out);
  if (g.complement) out = complement(out);
  return out;
}

SymmetryElement compose(SymmetryElement g, SymmetryElement h) {
  return from_probe_image(act(g, act(h, kProbe, kProbeN), kProbeN));
}

SymmetryElement inverse(SymmetryElement g) {
  for (const auto& h : symmetry_group()) {
    if (compose(g, h) == SymmetryElement::identity()) return h;
  }
  throw DomainError("internal: symmetry inverse not found");
}

}  // namespace pavoid
