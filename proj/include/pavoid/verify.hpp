#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pavoid/bignum.hpp"
#include "pavoid/families.hpp"
#include "pavoid/random.hpp"

namespace pavoid {

/// Draws a canonical-frame member; lets tests plug in a broken sampler.
using Sampler = std::function<Permutation(const FamilyId&, int, RandomStream&)>;

struct SimulationOptions {
  int partitions = 64;  // fixed; results depend on it, not on workers
  int workers = 1;
  int histogram_bins = 0;  // standardized histogram over [-4, 4]
};

/// Streaming central moments (count, mean, M2, M3, M4) with pairwise merge.
struct Moments {
  double count = 0;
  double mean = 0;
  double m2 = 0;
  double m3 = 0;
  double m4 = 0;

  static Moments from_values(std::span<const double> x);
  void merge(const Moments& other);
  double variance() const { return count > 1 ? m2 / (count - 1) : 0.0; }
  double skewness() const;
  double excess_kurtosis() const;
};

struct SimulationReport {
  std::string family;           // canonical set
  std::string original_family;  // as given
  std::string symmetry;
  std::string sigma;            // canonical frame
  int n = 0;
  std::int64_t replicates = 0;
  std::uint64_t seed = 0;
  double empirical_mean = 0;
  double empirical_variance = 0;
  double skewness = 0;
  double excess_kurtosis = 0;
  std::optional<double> theoretical_mean;
  std::optional<double> theoretical_variance;
  std::vector<double> histogram;  // densities of the standardized counts
  double wall_clock = 0;          // seconds; excluded from determinism
};

/// n_sigma over `replicates` uniform members of S_n, sigma in the canonical
/// frame. Partition p draws from RandomStream(seed, p).
SimulationReport simulate(const FamilyId& family, const Pattern& sigma, int n, std::int64_t replicates,
                          std::uint64_t seed, const SimulationOptions& options = {});

/// The raw counts behind simulate, in partition order.
std::vector<double> simulate_counts(const FamilyId& family, const Pattern& sigma, int n, std::int64_t replicates,
                                    std::uint64_t seed, const SimulationOptions& options = {});

struct ExactDistribution {
  std::map<BigInt, BigInt> multiplicity;  // value of n_sigma -> number of members

  BigInt total() const;
  Rational mean() const;
};

ExactDistribution exact_distribution(const FamilyId& family, const Pattern& sigma, int n,
                                     std::uint64_t budget = 1000000);

enum class CheckStatus { Pass, Fail, Degenerate };
std::string status_name(CheckStatus s);

struct CheckResult {
  CheckStatus status = CheckStatus::Pass;
  std::string detail;

  bool ok() const { return status != CheckStatus::Fail; }
};

struct NormalityThresholds {
  double skewness = 0.1;
  double excess_kurtosis = 0.2;
  double mean_rel = 0.02;
  double variance_rel = 0.10;
};

/// Shape and moment check against the asymptotic normal law. Laws with zero
/// limiting variance report Degenerate without testing.
CheckResult normality_check(const FamilyId& family, const Pattern& sigma, const SimulationReport& report,
                            const NormalityThresholds& thresholds = {});

struct UniformityResult {
  double statistic = 0;
  int degrees_of_freedom = 0;
  double p_value = 1;
  std::size_t members = 0;
};

/// Chi-square of `draws` sampler outputs over all members of S_n. The
/// member list comes from the extension enumerator, independent of the
/// structural code used by the samplers.
UniformityResult uniformity_check(const FamilyId& family, int n, std::int64_t draws, std::uint64_t seed,
                                  const Sampler& sampler = {});

struct RatioResult {
  double numerator = 0;    // E n_12 over 132-avoiders / n^{3/2}
  double denominator = 0;  // E n_21 over 321-avoiders / n^{3/2}
  double ratio = 0;
  double ci_low = 0;  // 95%, delta method; equal to ratio when exact
  double ci_high = 0;
  bool exact = false;
};

/// Ratio of the mean non-inversion count of 132-avoiders to the mean
/// inversion count of 321-avoiders; tends to 2.
RatioResult factor2_ratio_check(int n, std::int64_t replicates, std::uint64_t seed, int workers = 1);
/// The same ratio from exhaustive enumeration.
RatioResult factor2_ratio_exact(int n);

struct AcceptanceConfig {
  bool exact_only = false;
  std::vector<int> criteria;  // empty = all
  std::uint64_t seed = 20240101;
  int workers = 1;
  Sampler sampler;  // overrides the uniformity sampler (negative control)
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool statistical = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceSummary {
  std::vector<CriterionResult> results;
  int failures() const;
};

bool criterion_is_exact(int id);

/// Runs the acceptance criteria; `on_result` sees each line as it finishes.
AcceptanceSummary run_acceptance(const AcceptanceConfig& config,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace pavoid
