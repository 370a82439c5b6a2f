#include "pavoid/catalan.hpp"

#include <vector>

#include "pavoid/error.hpp"

namespace pavoid {

bool is_dyck_path(const DyckPath& path) {
  if (path.steps.size() % 2 != 0 || path.steps.empty()) return false;
  int height = 0;
  for (auto s : path.steps) {
    if (s > 1) return false;
    height += s ? 1 : -1;
    if (height < 0) return false;
  }
  return height == 0;
}

DyckPath random_dyck_path(int n, RandomStream& rng) {
  if (n < 1) throw DomainError("Dyck path semilength must be >= 1");
  const std::size_t len = 2 * static_cast<std::size_t>(n) + 1;
  std::vector<std::uint8_t> seq(len, 0);
  for (int i = 0; i < n; ++i) seq[static_cast<std::size_t>(i)] = 1;
  for (std::size_t i = len - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.bounded(i + 1));
    std::swap(seq[i], seq[j]);
  }
  // First index of the minimum prefix sum.
  long height = 0;
  long lowest = 0;
  std::size_t cut = 0;
  for (std::size_t i = 0; i < len; ++i) {
    height += seq[i] ? 1 : -1;
    if (height < lowest) {
      lowest = height;
      cut = i + 1;
    }
  }
  DyckPath path;
  path.steps.reserve(len - 1);
  for (std::size_t t = 0; t + 1 < len; ++t) path.steps.push_back(seq[(cut + t) % len]);
  return path;
}

namespace {

void dyck_rec(DyckPath& path, int ups_left, int downs_left, const std::function<void(const DyckPath&)>& visit) {
  if (ups_left == 0 && downs_left == 0) {
    visit(path);
    return;
  }
  if (ups_left > 0) {
    path.steps.push_back(1);
    dyck_rec(path, ups_left - 1, downs_left, visit);
    path.steps.pop_back();
  }
  if (downs_left > ups_left) {
    path.steps.push_back(0);
    dyck_rec(path, ups_left, downs_left - 1, visit);
    path.steps.pop_back();
  }
}

void require_dyck(const DyckPath& path) {
  if (!is_dyck_path(path)) throw DomainError("malformed Dyck path");
}

}  // namespace

void for_each_dyck_path(int n, const std::function<void(const DyckPath&)>& visit) {
  DyckPath path;
  path.steps.reserve(2 * static_cast<std::size_t>(n));
  dyck_rec(path, n, n, visit);
}

Permutation dyck_to_321_avoider(const DyckPath& path) {
  require_dyck(path);
  const int n = path.semilength();
  std::vector<int> values(static_cast<std::size_t>(n), 0);
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  int ups = 0;
  int prev_max = 0;
  int pos = 0;
  for (auto s : path.steps) {
    if (s) {
      ++ups;
      continue;
    }
    if (ups > prev_max) {
      values[static_cast<std::size_t>(pos)] = ups;
      used[static_cast<std::size_t>(ups)] = 1;
      prev_max = ups;
    }
    ++pos;
  }
  int next = 1;
  for (auto& v : values) {
    if (v != 0) continue;
    while (used[static_cast<std::size_t>(next)]) ++next;
    v = next++;
  }
  return Permutation(std::move(values));
}

bool avoids_321_structurally(const Permutation& pi) {
  int running_max = 0;
  int last_other = 0;
  for (int v : pi.values()) {
    if (v > running_max) {
      running_max = v;
    } else {
      if (v < last_other) return false;
      last_other = v;
    }
  }
  return true;
}

DyckPath avoider_321_to_dyck(const Permutation& pi) {
  if (!avoids_321_structurally(pi)) throw NotAMember("permutation contains 321");
  DyckPath path;
  path.steps.reserve(2 * static_cast<std::size_t>(pi.size()));
  int running_max = 0;
  for (int v : pi.values()) {
    for (; running_max < v; ++running_max) path.steps.push_back(1);
    path.steps.push_back(0);
  }
  return path;
}

Permutation dyck_to_132_avoider(const DyckPath& path) {
  require_dyck(path);
  const int n = path.semilength();
  std::vector<int> stack;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  int next = 1;
  for (auto s : path.steps) {
    if (s) {
      stack.push_back(next++);
    } else {
      out.push_back(n + 1 - stack.back());
      stack.pop_back();
    }
  }
  return Permutation(std::move(out));
}

namespace {

// Replays the stack run that outputs the complement of pi; empty when none exists.
bool stack_word(const Permutation& pi, DyckPath* path) {
  const int n = pi.size();
  std::vector<int> stack;
  int next = 1;
  for (int v : pi.values()) {
    const int target = n + 1 - v;
    while (next <= target) {
      stack.push_back(next++);
      if (path) path->steps.push_back(1);
    }
    if (stack.empty() || stack.back() != target) return false;
    stack.pop_back();
    if (path) path->steps.push_back(0);
  }
  return true;
}

}  // namespace

bool avoids_132_structurally(const Permutation& pi) { return stack_word(pi, nullptr); }

DyckPath avoider_132_to_dyck(const Permutation& pi) {
  DyckPath path;
  path.steps.reserve(2 * static_cast<std::size_t>(pi.size()));
  if (!stack_word(pi, &path)) throw NotAMember("permutation contains 132");
  return path;
}

}  // namespace pavoid
