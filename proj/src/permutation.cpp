#include "pavoid/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "pavoid/error.hpp"

namespace pavoid {

namespace {

void validate(const std::vector<int>& v) {
  if (v.empty()) throw DomainError("permutation must have length >= 1");
  const int n = static_cast<int>(v.size());
  std::vector<char> seen(v.size() + 1, 0);
  for (int x : v) {
    if (x < 1 || x > n) {
      throw DomainError("permutation value " + std::to_string(x) + " outside [1.." +
                        std::to_string(n) + "]");
    }
    if (seen[static_cast<std::size_t>(x)]) {
      throw DomainError("permutation value " + std::to_string(x) + " repeated");
    }
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

// For each pattern position j > 0, the earlier positions holding the nearest
// smaller and nearest larger pattern values (-1 if none). A candidate value
// for position j is order-consistent with a partial match iff it lies
// strictly between the values chosen at those two positions.
struct OrderBounds {
  std::vector<int> below;
  std::vector<int> above;
};

OrderBounds order_bounds(std::span<const int> sigma) {
  const std::size_t m = sigma.size();
  OrderBounds b{std::vector<int>(m, -1), std::vector<int>(m, -1)};
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      if (sigma[k] < sigma[j]) {
        if (b.below[j] < 0 || sigma[k] > sigma[static_cast<std::size_t>(b.below[j])]) {
          b.below[j] = static_cast<int>(k);
        }
      } else if (b.above[j] < 0 || sigma[k] < sigma[static_cast<std::size_t>(b.above[j])]) {
        b.above[j] = static_cast<int>(k);
      }
    }
  }
  return b;
}

class Matcher {
 public:
  Matcher(std::span<const int> sigma, std::span<const int> pi)
      : sigma_(sigma), pi_(pi), bounds_(order_bounds(sigma)), chosen_(sigma.size()) {}

  // Counts completions; stops early once `limit` matches are found.
  std::uint64_t count(std::uint64_t limit) {
    limit_ = limit;
    found_ = 0;
    extend(0, 0);
    return found_;
  }

 private:
  bool consistent(std::size_t j, int v) const {
    const int lo = bounds_.below[j];
    const int hi = bounds_.above[j];
    if (lo >= 0 && v < chosen_[static_cast<std::size_t>(lo)]) return false;
    if (hi >= 0 && v > chosen_[static_cast<std::size_t>(hi)]) return false;
    return true;
  }

  void extend(std::size_t j, std::size_t start) {
    const std::size_t m = sigma_.size();
    const std::size_t n = pi_.size();
    // Leave room for the remaining pattern positions.
    const std::size_t last = n - (m - j);
    if (j + 1 == m) {
      for (std::size_t p = start; p <= last; ++p) {
        if (consistent(j, pi_[p]) && ++found_ >= limit_) return;
      }
      return;
    }
    for (std::size_t p = start; p <= last; ++p) {
      const int v = pi_[p];
      if (!consistent(j, v)) continue;
      chosen_[j] = v;
      extend(j + 1, p + 1);
      if (found_ >= limit_) return;
    }
  }

  std::span<const int> sigma_;
  std::span<const int> pi_;
  OrderBounds bounds_;
  std::vector<int> chosen_;
  std::uint64_t limit_ = 0;
  std::uint64_t found_ = 0;
};

}  // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) { validate(values_); }

Permutation::Permutation(std::initializer_list<int> values) : values_(values) { validate(values_); }

Permutation Permutation::identity(int n) {
  if (n < 1) throw DomainError("permutation must have length >= 1");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::decreasing(int n) {
  if (n < 1) throw DomainError("permutation must have length >= 1");
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> v;
  bool separated = false;
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t') separated = true;
  }
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty permutation");
  if (!separated) {
    for (char c : s) {
      if (c < '1' || c > '9') throw ParseError("invalid character in permutation '" + std::string(text) + "'");
      v.push_back(c - '0');
    }
  } else {
    int cur = 0;
    bool in_number = false;
    for (char c : s) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        cur = cur * 10 + (c - '0');
        in_number = true;
        if (cur > 100000000) throw ParseError("permutation value too large");
      } else if (c == ' ' || c == ',' || c == '\t') {
        if (in_number) v.push_back(cur);
        cur = 0;
        in_number = false;
      } else {
        throw ParseError("invalid character in permutation '" + std::string(text) + "'");
      }
    }
    if (in_number) v.push_back(cur);
  }
  try {
    return Permutation(std::move(v));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid permutation '") + std::string(text) + "': " + e.what());
  }
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::string Permutation::str() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values_[i]);
  }
  return out;
}

std::string Permutation::compact() const {
  if (values_.size() > 9) return str();
  std::string out;
  for (int x : values_) out += static_cast<char>('0' + x);
  return out;
}

Permutation standardize(std::span<const int> values) {
  std::vector<int> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
  });
  std::vector<int> out(values.size());
  for (std::size_t r = 0; r < idx.size(); ++r) out[static_cast<std::size_t>(idx[r])] = static_cast<int>(r) + 1;
  return Permutation(std::move(out));
}

std::vector<Permutation> all_permutations(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

std::uint64_t occurrences_u64(const Pattern& sigma, const Permutation& pi) {
  if (sigma.size() > pi.size()) return 0;
  Matcher matcher(sigma.values(), pi.values());
  return matcher.count(UINT64_MAX);
}

BigInt occurrences(const Pattern& sigma, const Permutation& pi) { return occurrences_u64(sigma, pi); }

bool contains(const Permutation& pi, const Pattern& sigma) {
  if (sigma.size() > pi.size()) return false;
  Matcher matcher(sigma.values(), pi.values());
  return matcher.count(1) > 0;
}

bool avoids(const Permutation& pi, std::span<const Pattern> forbidden) {
  return std::none_of(forbidden.begin(), forbidden.end(),
                      [&](const Pattern& tau) { return contains(pi, tau); });
}

Permutation inverse(const Permutation& pi) {
  std::vector<int> v(static_cast<std::size_t>(pi.size()));
  for (int i = 1; i <= pi.size(); ++i) v[static_cast<std::size_t>(pi.at(i) - 1)] = i;
  return Permutation(std::move(v));
}

Permutation reverse(const Permutation& pi) {
  std::vector<int> v(pi.values().rbegin(), pi.values().rend());
  return Permutation(std::move(v));
}

Permutation complement(const Permutation& pi) {
  std::vector<int> v(pi.values().begin(), pi.values().end());
  for (int& x : v) x = pi.size() + 1 - x;
  return Permutation(std::move(v));
}

Permutation compose(const Pattern& sigma, const Pattern& tau) {
  std::vector<int> v(sigma.values().begin(), sigma.values().end());
  for (int x : tau.values()) v.push_back(x + sigma.size());
  return Permutation(std::move(v));
}

Permutation compose(std::span<const Permutation> factors) {
  if (factors.empty()) throw DomainError("compose() needs at least one factor");
  std::vector<int> v;
  int offset = 0;
  for (const Permutation& f : factors) {
    for (int x : f.values()) v.push_back(x + offset);
    offset += f.size();
  }
  return Permutation(std::move(v));
}

std::vector<int> BlockDecomposition::lengths() const {
  std::vector<int> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(b.size());
  return out;
}

std::vector<int> block_lengths(std::span<const int> values) {
  std::vector<int> out;
  int running_max = 0;
  int start = 0;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    running_max = std::max(running_max, values[static_cast<std::size_t>(i)]);
    if (running_max == i + 1) {
      out.push_back(i + 1 - start);
      start = i + 1;
    }
  }
  return out;
}

BlockDecomposition blocks(const Permutation& pi) {
  BlockDecomposition d;
  int start = 0;
  for (int len : block_lengths(pi.values())) {
    std::vector<int> v(pi.values().begin() + start, pi.values().begin() + start + len);
    for (int& x : v) x -= start;
    d.blocks.emplace_back(std::move(v));
    start += len;
  }
  return d;
}

bool is_indecomposable(const Permutation& pi) { return block_lengths(pi.values()).size() == 1; }

int descents_with_final(const Pattern& sigma) {
  int d = 1;
  for (int i = 1; i < sigma.size(); ++i) {
    if (sigma.at(i) > sigma.at(i + 1)) ++d;
  }
  return d;
}

}  // namespace pavoid
