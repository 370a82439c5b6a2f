#include "pavoid/families.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <mutex>
#include <numeric>

#include "pavoid/catalan.hpp"
#include "pavoid/error.hpp"

namespace pavoid {

namespace {

struct KindInfo {
  FamilyKind kind;
  const char* name;
  std::vector<const char*> patterns;
};

const std::vector<KindInfo>& kind_table() {
  static const std::vector<KindInfo> table = {
      {FamilyKind::Single132, "SINGLE-132", {"132"}},
      {FamilyKind::Single321, "SINGLE-321", {"321"}},
      {FamilyKind::PairD, "PAIR-D", {"132", "312"}},
      {FamilyKind::PairB, "PAIR-B", {"231", "312"}},
      {FamilyKind::PairA, "PAIR-A", {"231", "321"}},
      {FamilyKind::PairE, "PAIR-E", {"132", "321"}},
      {FamilyKind::TripleAAA, "TRIPLE-AAA", {"231", "312", "321"}},
      {FamilyKind::TripleCCC, "TRIPLE-CCC", {"132", "231", "312"}},
      {FamilyKind::TripleBBB, "TRIPLE-BBB", {"132", "231", "321"}},
      {FamilyKind::TripleEEE, "TRIPLE-EEE", {"132", "213", "321"}},
      {FamilyKind::Trivial, "TRIVIAL", {}},
      {FamilyKind::Unrestricted, "UNRESTRICTED", {}},
  };
  return table;
}

const KindInfo& info(FamilyKind kind) {
  for (const auto& k : kind_table()) {
    if (k.kind == kind) return k;
  }
  throw DomainError("unknown family kind");
}

std::vector<Pattern> sorted_unique(std::vector<Pattern> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<Pattern> canonical_patterns(FamilyKind kind) {
  std::vector<Pattern> out;
  for (const char* p : info(kind).patterns) out.push_back(Permutation::parse(p));
  return out;
}

std::vector<Pattern> apply_to_set(std::span<const Pattern> set, SymmetryElement g) {
  std::vector<Pattern> out;
  for (const auto& p : set) out.push_back(apply_symmetry(p, g));
  return sorted_unique(std::move(out));
}

bool is_trivial_set(std::span<const Pattern> set) {
  const Pattern inc = Permutation::identity(3);
  const Pattern dec = Permutation::decreasing(3);
  const bool both = std::find(set.begin(), set.end(), inc) != set.end() &&
                    std::find(set.begin(), set.end(), dec) != set.end();
  return both || set.size() >= 4;
}

// ---------------------------------------------------------------------------
// Structural templates.

// pi_{k,l,m} = (l+1..l+k, 1..l, k+l+1..k+l+m)
Permutation grid_e_perm(int k, int l, int m) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(k + l + m));
  for (int i = 1; i <= k; ++i) v.push_back(l + i);
  for (int i = 1; i <= l; ++i) v.push_back(i);
  for (int i = 1; i <= m; ++i) v.push_back(k + l + i);
  return Permutation(std::move(v));
}

// (k..1, k+1..n)
Permutation grid_ccc_perm(int n, int k) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = k; i >= 1; --i) v.push_back(i);
  for (int i = k + 1; i <= n; ++i) v.push_back(i);
  return Permutation(std::move(v));
}

// (k, 1..k-1, k+1..n)
Permutation grid_bbb_perm(int n, int k) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  v.push_back(k);
  for (int i = 1; i < k; ++i) v.push_back(i);
  for (int i = k + 1; i <= n; ++i) v.push_back(i);
  return Permutation(std::move(v));
}

// (n-k+1..n, 1..n-k)
Permutation grid_eee_perm(int n, int k) {
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = n - k + 1; i <= n; ++i) v.push_back(i);
  for (int i = 1; i <= n - k; ++i) v.push_back(i);
  return Permutation(std::move(v));
}

bool equals(const Permutation& pi, const Permutation& other) { return pi == other; }

Permutation decode_sign_code(const SignCode& code) {
  const int n = code.length();
  int minus = 0;
  for (auto s : code.signs) {
    if (s != 1 && s != -1) throw DomainError("sign code entries must be +1 or -1");
    if (s < 0) ++minus;
  }
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  v.push_back(minus + 1);
  int next_min = minus;
  int next_max = minus + 2;
  for (auto s : code.signs) v.push_back(s < 0 ? next_min-- : next_max++);
  return Permutation(std::move(v));
}

std::optional<SignCode> encode_sign_code(const Permutation& pi) {
  SignCode code;
  code.signs.reserve(static_cast<std::size_t>(pi.size() - 1));
  int lo = pi.at(1);
  int hi = pi.at(1);
  for (int i = 2; i <= pi.size(); ++i) {
    const int v = pi.at(i);
    if (v > hi) {
      hi = v;
      code.signs.push_back(1);
    } else if (v < lo) {
      lo = v;
      code.signs.push_back(-1);
    } else {
      return std::nullopt;
    }
  }
  return code;
}

// Block shapes of the composition families.
enum class BlockShape { Decreasing, HeadThenIncreasing, DecreasingUpToTwo };

BlockShape shape_of(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::PairB: return BlockShape::Decreasing;
    case FamilyKind::PairA: return BlockShape::HeadThenIncreasing;
    case FamilyKind::TripleAAA: return BlockShape::DecreasingUpToTwo;
    default: throw DomainError("not a composition family");
  }
}

bool block_matches(std::span<const int> values, int start, int len, BlockShape shape) {
  // values[start..start+len) must be the block shape over [start+1 .. start+len].
  if (shape == BlockShape::DecreasingUpToTwo && len > 2) return false;
  if (shape == BlockShape::HeadThenIncreasing) {
    if (values[static_cast<std::size_t>(start)] != start + len) return false;
    for (int i = 1; i < len; ++i) {
      if (values[static_cast<std::size_t>(start + i)] != start + i) return false;
    }
    return true;
  }
  for (int i = 0; i < len; ++i) {
    if (values[static_cast<std::size_t>(start + i)] != start + len - i) return false;
  }
  return true;
}

Permutation decode_composition(const Composition& code, BlockShape shape) {
  std::vector<int> v;
  int offset = 0;
  for (int len : code.parts) {
    if (len < 1) throw DomainError("composition parts must be >= 1");
    if (shape == BlockShape::DecreasingUpToTwo && len > 2) {
      throw DomainError("parts must be 1 or 2 for TRIPLE-AAA");
    }
    if (shape == BlockShape::HeadThenIncreasing) {
      v.push_back(offset + len);
      for (int i = 1; i < len; ++i) v.push_back(offset + i);
    } else {
      for (int i = len; i >= 1; --i) v.push_back(offset + i);
    }
    offset += len;
  }
  if (v.empty()) throw DomainError("empty composition");
  return Permutation(std::move(v));
}

std::optional<Composition> encode_composition(const Permutation& pi, BlockShape shape) {
  Composition code;
  code.parts = block_lengths(pi.values());
  int start = 0;
  for (int len : code.parts) {
    if (!block_matches(pi.values(), start, len, shape)) return std::nullopt;
    start += len;
  }
  return code;
}

std::optional<GridForm> encode_grid_e(const Permutation& pi) {
  const int n = pi.size();
  GridForm g;
  g.n = n;
  if (pi.is_identity()) {
    g.identity = true;
    return g;
  }
  const int l = pi.at(1) - 1;
  if (l < 1) return std::nullopt;
  int k = 1;
  while (k < n && pi.at(k + 1) == pi.at(k) + 1) ++k;
  if (k + l > n) return std::nullopt;
  g.k = k;
  g.l = l;
  g.m = n - k - l;
  if (!equals(pi, grid_e_perm(g.k, g.l, g.m))) return std::nullopt;
  return g;
}

std::optional<GridForm> encode_grid_single(const Permutation& pi, FamilyKind kind) {
  const int n = pi.size();
  GridForm g;
  g.n = n;
  switch (kind) {
    case FamilyKind::TripleCCC:
      g.k = pi.at(1);
      if (!equals(pi, grid_ccc_perm(n, g.k))) return std::nullopt;
      break;
    case FamilyKind::TripleBBB:
      g.k = pi.at(1);
      if (!equals(pi, grid_bbb_perm(n, g.k))) return std::nullopt;
      break;
    case FamilyKind::TripleEEE:
      g.k = n - pi.at(1) + 1;
      if (!equals(pi, grid_eee_perm(n, g.k))) return std::nullopt;
      break;
    default: throw DomainError("not a single-index grid family");
  }
  g.l = n - g.k;
  return g;
}

std::optional<CodedForm> try_encode(const FamilyId& family, const Permutation& pi) {
  switch (family.kind) {
    case FamilyKind::Single132:
      if (!avoids_132_structurally(pi)) return std::nullopt;
      return CodedForm{avoider_132_to_dyck(pi)};
    case FamilyKind::Single321:
      if (!avoids_321_structurally(pi)) return std::nullopt;
      return CodedForm{avoider_321_to_dyck(pi)};
    case FamilyKind::PairD:
      if (auto c = encode_sign_code(pi)) return CodedForm{*c};
      return std::nullopt;
    case FamilyKind::PairB:
    case FamilyKind::PairA:
    case FamilyKind::TripleAAA:
      if (auto c = encode_composition(pi, shape_of(family.kind))) return CodedForm{*c};
      return std::nullopt;
    case FamilyKind::PairE:
      if (auto c = encode_grid_e(pi)) return CodedForm{*c};
      return std::nullopt;
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE:
      if (auto c = encode_grid_single(pi, family.kind)) return CodedForm{*c};
      return std::nullopt;
    case FamilyKind::Trivial:
    case FamilyKind::Unrestricted:
      throw DomainError(kind_name(family.kind) + " family has no coded form");
  }
  throw DomainError("unknown family kind");
}

template <class T>
const T& expect_code(const CodedForm& code, const char* what) {
  if (const T* p = std::get_if<T>(&code)) return *p;
  throw DomainError(std::string("expected a ") + what + " code");
}

// ---------------------------------------------------------------------------
// Exact sequential sampling of {1,2}-compositions.
//
// With r units left, the next part is 1 with probability F_r / F_{r+1}. A
// 64-bit word is compared against the first base-2^64 digit of that ratio;
// further digits are generated only on a tie, so the draw is exact.

constexpr int kFibTable = 200;

struct FibonacciThresholds {
  std::vector<BigInt> fib;            // F_0 .. F_{kFibTable+1}
  std::vector<std::uint64_t> digit;   // first digit of F_r / F_{r+1}, r <= kFibTable
  std::vector<bool> exact;            // ratio has no digits beyond the first
  std::uint64_t limit_digit = 0;      // common first digit for r >= kFibTable
};

std::pair<BigInt, BigInt> fib_pair(std::int64_t r) {
  // Fast doubling: returns (F_r, F_{r+1}).
  if (r == 0) return {0, 1};
  auto [a, b] = fib_pair(r / 2);
  BigInt c = a * (2 * b - a);
  BigInt d = a * a + b * b;
  if (r % 2 == 0) return {c, d};
  return {d, c + d};
}

const FibonacciThresholds& fib_thresholds() {
  static const FibonacciThresholds table = [] {
    FibonacciThresholds t;
    t.fib.resize(kFibTable + 3);
    t.fib[0] = 0;
    t.fib[1] = 1;
    for (int i = 2; i < kFibTable + 3; ++i) t.fib[static_cast<std::size_t>(i)] = t.fib[static_cast<std::size_t>(i - 1)] + t.fib[static_cast<std::size_t>(i - 2)];
    t.digit.resize(kFibTable + 2);
    t.exact.resize(kFibTable + 2);
    const BigInt base = BigInt(1) << 64;
    for (int r = 1; r <= kFibTable + 1; ++r) {
      const BigInt num = t.fib[static_cast<std::size_t>(r)] * base;
      const BigInt& den = t.fib[static_cast<std::size_t>(r + 1)];
      const BigInt q = num / den;
      // r = 1 gives ratio 1 (digit 2^64): every word is below it.
      t.digit[static_cast<std::size_t>(r)] = q >= base ? UINT64_MAX : q.convert_to<std::uint64_t>();
      t.exact[static_cast<std::size_t>(r)] = (num % den) == 0;
    }
    // Successive ratios bracket the limit and shrink around it, so equal
    // first digits at kFibTable and kFibTable+1 fix the digit for all larger r.
    if (t.digit[kFibTable] != t.digit[kFibTable + 1]) {
      throw DomainError("internal: Fibonacci ratio digit not settled");
    }
    t.limit_digit = t.digit[kFibTable];
    return t;
  }();
  return table;
}

// True iff 0.w1 w2 w3 ... (base 2^64, w1 = first) < num / den, with num < den.
bool below_ratio(std::uint64_t first, BigInt num, const BigInt& den, RandomStream& rng) {
  std::uint64_t w = first;
  for (;;) {
    num <<= 64;
    const BigInt q = num / den;
    num %= den;
    const auto qd = q.convert_to<std::uint64_t>();
    if (w < qd) return true;
    if (w > qd) return false;
    if (num == 0) return false;
    w = rng.next_u64();
  }
}

bool next_part_is_one(int remaining, RandomStream& rng) {
  if (remaining == 1) return true;
  const auto& t = fib_thresholds();
  const std::uint64_t w = rng.next_u64();
  const bool tabulated = remaining <= kFibTable;
  const std::uint64_t d = tabulated ? t.digit[static_cast<std::size_t>(remaining)] : t.limit_digit;
  if (w != d) return w < d;
  if (tabulated) {
    if (t.exact[static_cast<std::size_t>(remaining)]) return false;
    return below_ratio(w, t.fib[static_cast<std::size_t>(remaining)], t.fib[static_cast<std::size_t>(remaining + 1)], rng);
  }
  auto [fr, fr1] = fib_pair(remaining);
  return below_ratio(w, fr, fr1, rng);
}

Composition sample_one_two_composition(int n, RandomStream& rng) {
  Composition c;
  int r = n;
  while (r > 0) {
    const int part = next_part_is_one(r, rng) ? 1 : 2;
    c.parts.push_back(part);
    r -= part;
  }
  return c;
}

Composition sample_free_composition(int n, RandomStream& rng) {
  // Boundary after position i < n iff a fair bit is set; boundary at n forced.
  Composition c;
  int len = 0;
  for (int i = 1; i < n; ++i) {
    ++len;
    if (rng.bit()) {
      c.parts.push_back(len);
      len = 0;
    }
  }
  c.parts.push_back(len + 1);
  return c;
}

GridForm grid_e_from_index(int n, std::uint64_t index) {
  GridForm g;
  g.n = n;
  if (index == 0) {
    g.identity = true;
    return g;
  }
  const std::uint64_t t = index - 1;
  // Pairs are ordered by s = k + l, then k; a(a-1)/2 pairs have s <= a.
  auto a = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(t))) / 2.0);
  while (a * (a - 1) / 2 > t) --a;
  while ((a + 1) * a / 2 <= t) ++a;
  const auto s = static_cast<int>(a + 1);
  g.k = static_cast<int>(t - a * (a - 1) / 2) + 1;
  g.l = s - g.k;
  g.m = n - s;
  return g;
}

void require_length(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
}

}  // namespace

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

int coded_length(const CodedForm& code) {
  return std::visit(
      [](const auto& c) -> int {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, SignCode>) return c.length();
        else if constexpr (std::is_same_v<T, Composition>) return c.total();
        else if constexpr (std::is_same_v<T, GridForm>) return c.n;
        else return c.semilength();
      },
      code);
}

std::string kind_name(FamilyKind kind) { return info(kind).name; }

FamilyKind parse_kind(std::string_view name) {
  for (const auto& k : kind_table()) {
    if (name == k.name) return k.kind;
  }
  throw ParseError("unknown family kind '" + std::string(name) + "'");
}

const std::vector<FamilyKind>& nontrivial_kinds() {
  static const std::vector<FamilyKind> kinds = {
      FamilyKind::Single132, FamilyKind::Single321, FamilyKind::PairD,     FamilyKind::PairB,
      FamilyKind::PairA,     FamilyKind::PairE,     FamilyKind::TripleAAA, FamilyKind::TripleCCC,
      FamilyKind::TripleBBB, FamilyKind::TripleEEE,
  };
  return kinds;
}

std::string family_name(std::span<const Pattern> patterns) {
  std::vector<Pattern> sorted(patterns.begin(), patterns.end());
  sorted = sorted_unique(std::move(sorted));
  std::string out;
  for (const auto& p : sorted) {
    if (!out.empty()) out += ',';
    out += p.compact();
  }
  return out;
}

std::vector<Pattern> parse_pattern_set(std::string_view text) {
  std::vector<Pattern> out;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) out.push_back(Permutation::parse(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '{' || c == '}') {
      continue;
    } else {
      token += c;
    }
  }
  flush();
  return sorted_unique(std::move(out));
}

FamilyId canonical_family(FamilyKind kind) {
  if (kind == FamilyKind::Trivial) throw DomainError("TRIVIAL has no single canonical set");
  FamilyId f;
  f.kind = kind;
  f.canonical = canonical_patterns(kind);
  f.original = f.canonical;
  return f;
}

FamilyId normalize(std::span<const Pattern> forbidden) {
  for (const auto& p : forbidden) {
    if (p.size() != 3) throw DomainError("forbidden patterns must have length 3, got '" + p.compact() + "'");
  }
  FamilyId f;
  f.original = sorted_unique(std::vector<Pattern>(forbidden.begin(), forbidden.end()));
  if (f.original.empty()) {
    f.kind = FamilyKind::Unrestricted;
    return f;
  }
  if (is_trivial_set(f.original)) {
    f.kind = FamilyKind::Trivial;
    f.canonical = f.original;
    return f;
  }
  for (FamilyKind kind : nontrivial_kinds()) {
    const auto target = canonical_patterns(kind);
    if (target.size() != f.original.size()) continue;
    for (const auto& g : symmetry_group()) {
      if (apply_to_set(f.original, g) == target) {
        f.kind = kind;
        f.canonical = target;
        f.symmetry = g;
        return f;
      }
    }
  }
  throw DomainError("internal: no canonical representative for {" + family_name(f.original) + "}");
}

FamilyId normalize(std::string_view family_text) {
  const auto patterns = parse_pattern_set(family_text);
  return normalize(patterns);
}

BigInt cardinality(const FamilyId& family, int n) {
  require_length(n);
  switch (family.kind) {
    case FamilyKind::Single132:
    case FamilyKind::Single321: return catalan(n);
    case FamilyKind::PairD:
    case FamilyKind::PairB:
    case FamilyKind::PairA: return BigInt(1) << (n - 1);
    case FamilyKind::PairE: return binomial(n, 2) + 1;
    case FamilyKind::TripleAAA: return fibonacci(n + 1);
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE: return n;
    case FamilyKind::Trivial: return enumerate_by_extension(family.canonical, n).size();
    case FamilyKind::Unrestricted: return factorial(n);
  }
  throw DomainError("unknown family kind");
}

bool is_member(const FamilyId& family, const Permutation& pi) {
  switch (family.kind) {
    case FamilyKind::Trivial: return avoids(pi, family.canonical);
    case FamilyKind::Unrestricted: return true;
    default: return try_encode(family, pi).has_value();
  }
}

CodedForm encode(const FamilyId& family, const Permutation& pi) {
  if (auto code = try_encode(family, pi)) return *code;
  throw NotAMember(pi.str() + " is not in the " + kind_name(family.kind) + " family {" +
                   family.canonical_name() + "}");
}

Permutation decode(const FamilyId& family, const CodedForm& code) {
  switch (family.kind) {
    case FamilyKind::Single132: return dyck_to_132_avoider(expect_code<DyckPath>(code, "Dyck path"));
    case FamilyKind::Single321: return dyck_to_321_avoider(expect_code<DyckPath>(code, "Dyck path"));
    case FamilyKind::PairD: return decode_sign_code(expect_code<SignCode>(code, "sign"));
    case FamilyKind::PairB:
    case FamilyKind::PairA:
    case FamilyKind::TripleAAA:
      return decode_composition(expect_code<Composition>(code, "composition"), shape_of(family.kind));
    case FamilyKind::PairE:
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE: {
      validate_code(family, code);
      const auto& g = std::get<GridForm>(code);
      if (family.kind == FamilyKind::PairE) return g.identity ? Permutation::identity(g.n) : grid_e_perm(g.k, g.l, g.m);
      if (family.kind == FamilyKind::TripleCCC) return grid_ccc_perm(g.n, g.k);
      if (family.kind == FamilyKind::TripleBBB) return grid_bbb_perm(g.n, g.k);
      return grid_eee_perm(g.n, g.k);
    }
    case FamilyKind::Trivial:
    case FamilyKind::Unrestricted: break;
  }
  throw DomainError(kind_name(family.kind) + " family has no coded form");
}

void validate_code(const FamilyId& family, const CodedForm& code) {
  switch (family.kind) {
    case FamilyKind::Single132:
    case FamilyKind::Single321:
      if (!is_dyck_path(expect_code<DyckPath>(code, "Dyck path"))) throw DomainError("malformed Dyck path");
      return;
    case FamilyKind::PairD:
      for (auto s : expect_code<SignCode>(code, "sign").signs) {
        if (s != 1 && s != -1) throw DomainError("sign code entries must be +1 or -1");
      }
      return;
    case FamilyKind::PairB:
    case FamilyKind::PairA:
    case FamilyKind::TripleAAA: {
      const auto& c = expect_code<Composition>(code, "composition");
      if (c.parts.empty()) throw DomainError("empty composition");
      for (int p : c.parts) {
        if (p < 1) throw DomainError("composition parts must be >= 1");
        if (family.kind == FamilyKind::TripleAAA && p > 2) throw DomainError("parts must be 1 or 2 for TRIPLE-AAA");
      }
      return;
    }
    case FamilyKind::PairE: {
      const auto& g = expect_code<GridForm>(code, "grid");
      if (g.n < 1) throw DomainError("grid form needs n >= 1");
      if (g.identity) return;
      if (g.k < 1 || g.l < 1 || g.m < 0 || g.k + g.l + g.m != g.n) {
        throw DomainError("PAIR-E grid form needs k, l >= 1, m >= 0, k + l + m = n");
      }
      return;
    }
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE: {
      const auto& g = expect_code<GridForm>(code, "grid");
      if (g.identity || g.n < 1 || g.k < 1 || g.k > g.n || g.m != 0 || g.l != g.n - g.k) {
        throw DomainError("grid form needs 1 <= k <= n and l = n - k");
      }
      return;
    }
    case FamilyKind::Trivial:
    case FamilyKind::Unrestricted: break;
  }
  throw DomainError(kind_name(family.kind) + " family has no coded form");
}

void for_each_code(const FamilyId& family, int n, const std::function<void(const CodedForm&)>& visit) {
  require_length(n);
  switch (family.kind) {
    case FamilyKind::Single132:
    case FamilyKind::Single321:
      for_each_dyck_path(n, [&](const DyckPath& p) { visit(CodedForm{p}); });
      return;
    case FamilyKind::PairD: {
      if (n > 62) throw BudgetExceeded("exhaustive enumeration of 2^(n-1) codes");
      SignCode code;
      code.signs.resize(static_cast<std::size_t>(n - 1));
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        for (int j = 0; j < n - 1; ++j) code.signs[static_cast<std::size_t>(j)] = ((mask >> j) & 1U) ? -1 : 1;
        visit(CodedForm{code});
      }
      return;
    }
    case FamilyKind::PairB:
    case FamilyKind::PairA: {
      if (n > 62) throw BudgetExceeded("exhaustive enumeration of 2^(n-1) codes");
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
        Composition c;
        int len = 0;
        for (int i = 1; i < n; ++i) {
          ++len;
          if ((mask >> (i - 1)) & 1U) {
            c.parts.push_back(len);
            len = 0;
          }
        }
        c.parts.push_back(len + 1);
        visit(CodedForm{c});
      }
      return;
    }
    case FamilyKind::TripleAAA: {
      Composition c;
      std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
          visit(CodedForm{c});
          return;
        }
        for (int part = 1; part <= std::min(2, remaining); ++part) {
          c.parts.push_back(part);
          rec(remaining - part);
          c.parts.pop_back();
        }
      };
      rec(n);
      return;
    }
    case FamilyKind::PairE: {
      const std::uint64_t total = binomial_u64(n, 2) + 1;
      for (std::uint64_t i = 0; i < total; ++i) visit(CodedForm{grid_e_from_index(n, i)});
      return;
    }
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE:
      for (int k = 1; k <= n; ++k) visit(CodedForm{GridForm{n, k, n - k, 0, false}});
      return;
    case FamilyKind::Trivial:
    case FamilyKind::Unrestricted: break;
  }
  throw DomainError(kind_name(family.kind) + " family has no coded form");
}

void for_each_member(const FamilyId& family, int n, const std::function<void(const Permutation&)>& visit) {
  require_length(n);
  if (family.kind == FamilyKind::Trivial) {
    for (const auto& p : enumerate_by_extension(family.canonical, n)) visit(p);
    return;
  }
  if (family.kind == FamilyKind::Unrestricted) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
      visit(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return;
  }
  for_each_code(family, n, [&](const CodedForm& c) { visit(decode(family, c)); });
}

std::vector<Permutation> enumerate(const FamilyId& family, int n) {
  std::vector<Permutation> out;
  for_each_member(family, n, [&](const Permutation& p) { out.push_back(p); });
  return out;
}

CodedForm sample_code(const FamilyId& family, int n, RandomStream& rng) {
  require_length(n);
  switch (family.kind) {
    case FamilyKind::Single132:
    case FamilyKind::Single321: return random_dyck_path(n, rng);
    case FamilyKind::PairD: {
      SignCode code;
      code.signs.resize(static_cast<std::size_t>(n - 1));
      for (auto& s : code.signs) s = rng.bit() ? -1 : 1;
      return code;
    }
    case FamilyKind::PairB:
    case FamilyKind::PairA: return sample_free_composition(n, rng);
    case FamilyKind::TripleAAA: return sample_one_two_composition(n, rng);
    case FamilyKind::PairE: return grid_e_from_index(n, rng.bounded(binomial_u64(n, 2) + 1));
    case FamilyKind::TripleCCC:
    case FamilyKind::TripleBBB:
    case FamilyKind::TripleEEE: {
      const int k = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
      return GridForm{n, k, n - k, 0, false};
    }
    case FamilyKind::Trivial:
    case FamilyKind::Unrestricted: break;
  }
  throw DomainError(kind_name(family.kind) + " family has no coded form");
}

Permutation sample(const FamilyId& family, int n, RandomStream& rng) {
  require_length(n);
  if (family.kind == FamilyKind::Unrestricted) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    for (std::size_t i = v.size() - 1; i > 0; --i) std::swap(v[i], v[static_cast<std::size_t>(rng.bounded(i + 1))]);
    return Permutation(std::move(v));
  }
  if (family.kind == FamilyKind::Trivial) {
    const auto members = enumerate_by_extension(family.canonical, n);
    if (members.empty()) throw DomainError("S_" + std::to_string(n) + "(" + family.canonical_name() + ") is empty");
    return members[static_cast<std::size_t>(rng.bounded(members.size()))];
  }
  return decode(family, sample_code(family, n, rng));
}

std::vector<Permutation> enumerate_by_extension(std::span<const Pattern> forbidden, int n) {
  require_length(n);
  constexpr int kMaxLength = 64;
  std::vector<Permutation> level;
  const Permutation one = Permutation::identity(1);
  if (avoids(one, forbidden)) level.push_back(one);
  for (int len = 2; len <= n && !level.empty(); ++len) {
    if (len > kMaxLength && level.size() > 2) {
      throw BudgetExceeded("extension enumeration beyond length " + std::to_string(kMaxLength));
    }
    std::vector<Permutation> next;
    for (const auto& p : level) {
      for (int v = 1; v <= len; ++v) {
        std::vector<int> vals;
        vals.reserve(static_cast<std::size_t>(len));
        for (int x : p.values()) vals.push_back(x >= v ? x + 1 : x);
        vals.push_back(v);
        Permutation candidate(std::move(vals));
        if (avoids(candidate, forbidden)) next.push_back(std::move(candidate));
      }
    }
    level = std::move(next);
  }
  if (n > 1 && level.empty()) return {};
  return level;
}

}  // namespace pavoid
