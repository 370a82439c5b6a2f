#pragma once

#include <functional>

#include "pavoid/coded_form.hpp"
#include "pavoid/permutation.hpp"
#include "pavoid/random.hpp"

namespace pavoid {

bool is_dyck_path(const DyckPath& path);

/// Uniform Dyck path of semilength n by the cycle lemma: a uniform
/// arrangement of n up-steps and n+1 down-steps has exactly one rotation
/// whose proper prefix sums stay nonnegative; dropping its final down-step
/// leaves the path.
DyckPath random_dyck_path(int n, RandomStream& rng);

void for_each_dyck_path(int n, const std::function<void(const DyckPath&)>& visit);

/// 321-avoiders: the i-th down-step records the running maximum of the
/// first i entries (number of up-steps before it). Left-to-right maxima sit
/// where the running maximum grows; the other entries are filled increasingly.
Permutation dyck_to_321_avoider(const DyckPath& path);
DyckPath avoider_321_to_dyck(const Permutation& pi);
bool avoids_321_structurally(const Permutation& pi);

/// 132-avoiders: complement of the output of a stack fed 1..n, where
/// up-steps push and down-steps pop (stack outputs are the 312-avoiders).
Permutation dyck_to_132_avoider(const DyckPath& path);
DyckPath avoider_132_to_dyck(const Permutation& pi);
bool avoids_132_structurally(const Permutation& pi);

}  // namespace pavoid
