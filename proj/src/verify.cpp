#include "pavoid/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <boost/math/distributions/chi_squared.hpp>

#include "pavoid/asymptotics.hpp"
#include "pavoid/counting.hpp"
#include "pavoid/error.hpp"
#include "pavoid/limit_laws.hpp"
#include "pavoid/simd/kernels.hpp"
#include "pavoid/symmetry.hpp"

namespace pavoid {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

bool has_fast_counter(FamilyKind kind) { return kind != FamilyKind::Trivial && kind != FamilyKind::Unrestricted; }

double count_in(const Pattern& sigma, const Permutation& pi) {
  if (sigma.size() == 2) {
    const double inv = static_cast<double>(count_inversions(pi.values()));
    if (sigma.at(1) == 2) return inv;
    const double n = pi.size();
    return n * (n - 1) / 2 - inv;
  }
  return occurrences(sigma, pi).convert_to<double>();
}

// One replicate: a uniform member and its sigma count.
class ReplicateCounter {
 public:
  ReplicateCounter(const FamilyId& family, const Pattern& sigma) : family_(family), sigma_(sigma) {
    if (has_fast_counter(family.kind)) fast_.emplace(family, sigma);
  }

  double operator()(int n, RandomStream& rng) const {
    if (!fast_) return count_in(sigma_, sample(family_, n, rng));
    const CodedForm code = sample_code(family_, n, rng);
    try {
      return static_cast<double>(fast_->count_u64(code));
    } catch (const DomainError&) {
      return fast_->count(code).convert_to<double>();
    }
  }

 private:
  FamilyId family_;
  Pattern sigma_;
  std::optional<FastCounter> fast_;
};

// Runs body(p) for every partition p, on up to `workers` threads. Each
// partition owns its output slot, so the schedule never changes results.
void for_each_partition(int partitions, int workers, const std::function<void(int)>& body) {
  workers = std::clamp(workers, 1, partitions);
  if (workers == 1) {
    for (int p = 0; p < partitions; ++p) body(p);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int p = next++; p < partitions; p = next++) {
        try {
          body(p);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::int64_t partition_size(std::int64_t total, int partitions, int p) {
  return total / partitions + (p < total % partitions ? 1 : 0);
}

void require_member(const FamilyId& family, const Pattern& sigma) {
  if (!is_member(family, sigma)) {
    throw NotAMember(sigma.str() + " is not in the family " + family.canonical_name());
  }
}

// Limit mean and variance of n_sigma at length n, where known.
void theoretical_moments(const FamilyId& family, const Pattern& sigma, int n, SimulationReport& r) {
  if (!has_fast_counter(family.kind)) return;
  const LimitLaw law = limit_law(family, sigma);
  const double dn = n;
  if (const auto* normal = std::get_if<NormalLaw>(&law)) {
    r.theoretical_mean = normal->mean_coeff.to_double() * std::pow(dn, normal->mean_exponent);
    r.theoretical_variance = normal->var_coeff.to_double() * std::pow(dn, normal->var_exponent);
    return;
  }
  if (std::holds_alternative<ExcursionLaw>(law)) return;
  const double e = to_double(scaling_exponent(law));
  const double m1 = limit_moment(law, 1);
  const double m2 = limit_moment(law, 2);
  r.theoretical_mean = m1 * std::pow(dn, e);
  r.theoretical_variance = (m2 - m1 * m1) * std::pow(dn, 2 * e);
}

}  // namespace

Moments Moments::from_values(std::span<const double> x) {
  Moments m;
  if (x.empty()) return m;
  const double k = static_cast<double>(x.size());
  // Two passes: a rough centre, then sums about the mean.
  const double rough = x[0] + simd::power_sums(x, x[0]).s1 / k;
  const auto s = simd::power_sums(x, rough);
  const double r1 = s.s1 / k;
  const double r2 = s.s2 / k;
  const double r3 = s.s3 / k;
  const double r4 = s.s4 / k;
  m.count = k;
  m.mean = rough + r1;
  m.m2 = std::max(0.0, k * (r2 - r1 * r1));
  m.m3 = k * (r3 - 3 * r1 * r2 + 2 * r1 * r1 * r1);
  m.m4 = std::max(0.0, k * (r4 - 4 * r1 * r3 + 6 * r1 * r1 * r2 - 3 * r1 * r1 * r1 * r1));
  return m;
}

void Moments::merge(const Moments& b) {
  if (b.count == 0) return;
  if (count == 0) {
    *this = b;
    return;
  }
  const double na = count;
  const double nb = b.count;
  const double n = na + nb;
  const double d = b.mean - mean;
  const double d2 = d * d;
  const Moments a = *this;
  count = n;
  mean = a.mean + d * nb / n;
  m2 = a.m2 + b.m2 + d2 * na * nb / n;
  m3 = a.m3 + b.m3 + d2 * d * na * nb * (na - nb) / (n * n) + 3 * d * (na * b.m2 - nb * a.m2) / n;
  m4 = a.m4 + b.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
       6 * d2 * (na * na * b.m2 + nb * nb * a.m2) / (n * n) + 4 * d * (na * b.m3 - nb * a.m3) / n;
}

double Moments::skewness() const { return m2 > 0 ? std::sqrt(count) * m3 / std::pow(m2, 1.5) : 0.0; }

double Moments::excess_kurtosis() const { return m2 > 0 ? count * m4 / (m2 * m2) - 3.0 : 0.0; }

std::vector<double> simulate_counts(const FamilyId& family, const Pattern& sigma, int n, std::int64_t replicates,
                                    std::uint64_t seed, const SimulationOptions& options) {
  require_member(family, sigma);
  if (n < sigma.size()) throw DomainError("n must be at least |sigma|");
  if (replicates < 1) throw DomainError("replicates must be >= 1");
  if (options.partitions < 1) throw DomainError("partitions must be >= 1");
  const ReplicateCounter counter(family, sigma);
  std::vector<std::vector<double>> parts(static_cast<std::size_t>(options.partitions));
  for_each_partition(options.partitions, options.workers, [&](int p) {
    RandomStream rng(seed, static_cast<std::uint64_t>(p));
    auto& out = parts[static_cast<std::size_t>(p)];
    const auto size = partition_size(replicates, options.partitions, p);
    out.reserve(static_cast<std::size_t>(size));
    for (std::int64_t i = 0; i < size; ++i) out.push_back(counter(n, rng));
  });
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(replicates));
  for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  return all;
}

SimulationReport simulate(const FamilyId& family, const Pattern& sigma, int n, std::int64_t replicates,
                          std::uint64_t seed, const SimulationOptions& options) {
  const auto t0 = Clock::now();
  const auto counts = simulate_counts(family, sigma, n, replicates, seed, options);

  Moments total;
  std::size_t offset = 0;
  for (int p = 0; p < options.partitions; ++p) {
    const auto size = static_cast<std::size_t>(partition_size(replicates, options.partitions, p));
    total.merge(Moments::from_values(std::span<const double>(counts).subspan(offset, size)));
    offset += size;
  }

  SimulationReport r;
  r.family = family.canonical_name();
  r.original_family = family.original_name();
  r.symmetry = family.symmetry.name();
  r.sigma = sigma.compact();
  r.n = n;
  r.replicates = replicates;
  r.seed = seed;
  r.empirical_mean = total.mean;
  r.empirical_variance = total.variance();
  r.skewness = total.skewness();
  r.excess_kurtosis = total.excess_kurtosis();
  theoretical_moments(family, sigma, n, r);

  if (options.histogram_bins > 0) {
    const int bins = options.histogram_bins;
    r.histogram.assign(static_cast<std::size_t>(bins), 0.0);
    const double sd = std::sqrt(r.empirical_variance);
    const double width = 8.0 / bins;
    if (sd > 0) {
      for (double x : counts) {
        const double z = (x - r.empirical_mean) / sd;
        const int b = static_cast<int>(std::floor((z + 4.0) / width));
        if (b >= 0 && b < bins) r.histogram[static_cast<std::size_t>(b)] += 1.0;
      }
      for (auto& h : r.histogram) h /= static_cast<double>(replicates) * width;
    }
  }
  r.wall_clock = seconds_since(t0);
  return r;
}

BigInt ExactDistribution::total() const {
  BigInt t = 0;
  for (const auto& [v, c] : multiplicity) t += c;
  return t;
}

Rational ExactDistribution::mean() const {
  BigInt s = 0;
  for (const auto& [v, c] : multiplicity) s += v * c;
  const BigInt t = total();
  if (t == 0) throw DomainError("empty distribution has no mean");
  return Rational(s, t);
}

ExactDistribution exact_distribution(const FamilyId& family, const Pattern& sigma, int n, std::uint64_t budget) {
  require_member(family, sigma);
  if (n < 1) throw DomainError("n must be >= 1");
  const BigInt card = has_fast_counter(family.kind) ? cardinality(family, n) : factorial(n);
  if (card > budget) {
    throw BudgetExceeded("family has " + to_string(card) + " members at n = " + std::to_string(n) +
                         ", above the budget " + std::to_string(budget));
  }
  ExactDistribution d;
  if (has_fast_counter(family.kind)) {
    const FastCounter counter(family, sigma);
    for_each_code(family, n, [&](const CodedForm& code) { d.multiplicity[counter.count(code)] += 1; });
  } else {
    for_each_member(family, n, [&](const Permutation& pi) { d.multiplicity[occurrences(sigma, pi)] += 1; });
  }
  return d;
}

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Degenerate: return "DEGENERATE";
  }
  return "?";
}

CheckResult normality_check(const FamilyId& family, const Pattern& sigma, const SimulationReport& report,
                            const NormalityThresholds& t) {
  const auto params = asymptotic_params(family, sigma);
  if (params.degenerate) return {CheckStatus::Degenerate, "limiting variance is zero; shape test skipped"};
  const double n = report.n;
  const double mean = params.mean_coeff.to_double() * std::pow(n, params.mean_exponent);
  const double var = params.var_coeff.to_double() * std::pow(n, params.var_exponent);
  const double mean_err = std::abs(report.empirical_mean / mean - 1);
  const double var_err = std::abs(report.empirical_variance / var - 1);
  const bool ok = std::abs(report.skewness) < t.skewness && std::abs(report.excess_kurtosis) < t.excess_kurtosis &&
                  mean_err <= t.mean_rel && var_err <= t.variance_rel;
  std::ostringstream os;
  os << "skew=" << fmt(report.skewness, 4) << " exkurt=" << fmt(report.excess_kurtosis, 4)
     << " mean_rel_err=" << fmt(mean_err, 4) << " var_rel_err=" << fmt(var_err, 4);
  return {ok ? CheckStatus::Pass : CheckStatus::Fail, os.str()};
}

UniformityResult uniformity_check(const FamilyId& family, int n, std::int64_t draws, std::uint64_t seed,
                                  const Sampler& sampler) {
  if (draws < 1) throw DomainError("draws must be >= 1");
  const auto members = enumerate_by_extension(family.canonical, n);
  if (members.empty()) throw DomainError("family has no members of length " + std::to_string(n));
  if (members.size() > 10000) throw DomainError("uniformity check needs at most 10^4 members");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < members.size(); ++i) index.emplace(members[i].str(), i);

  std::vector<double> observed(members.size(), 0.0);
  RandomStream rng(seed);
  for (std::int64_t k = 0; k < draws; ++k) {
    const Permutation pi = sampler ? sampler(family, n, rng) : sample(family, n, rng);
    const auto it = index.find(pi.str());
    if (it == index.end()) throw DomainError("sampler produced a non-member " + pi.str());
    observed[it->second] += 1.0;
  }
  const std::vector<double> expected(members.size(), static_cast<double>(draws) / static_cast<double>(members.size()));

  UniformityResult r;
  r.members = members.size();
  r.degrees_of_freedom = static_cast<int>(members.size()) - 1;
  r.statistic = simd::chi_square(observed, expected);
  if (r.degrees_of_freedom > 0) {
    const boost::math::chi_squared_distribution<double> law(r.degrees_of_freedom);
    r.p_value = boost::math::cdf(boost::math::complement(law, r.statistic));
  }
  return r;
}

RatioResult factor2_ratio_check(int n, std::int64_t replicates, std::uint64_t seed, int workers) {
  if (n < 2) throw DomainError("factor-2 ratio needs n >= 2");
  if (replicates < 2) throw DomainError("factor-2 ratio needs at least 2 replicates");
  const FamilyId f132 = canonical_family(FamilyKind::Single132);
  const FamilyId f321 = canonical_family(FamilyKind::Single321);
  const double pairs = static_cast<double>(n) * (n - 1) / 2;
  const int partitions = 64;
  std::vector<std::vector<double>> a(partitions), b(partitions);
  for_each_partition(partitions, workers, [&](int p) {
    RandomStream rng(seed, static_cast<std::uint64_t>(p));
    const auto size = partition_size(replicates, partitions, p);
    for (std::int64_t i = 0; i < size; ++i) {
      const Permutation x = sample(f132, n, rng);
      a[static_cast<std::size_t>(p)].push_back(pairs - static_cast<double>(count_inversions(x.values())));
      const Permutation y = sample(f321, n, rng);
      b[static_cast<std::size_t>(p)].push_back(static_cast<double>(count_inversions(y.values())));
    }
  });
  Moments ma, mb;
  for (int p = 0; p < partitions; ++p) {
    ma.merge(Moments::from_values(a[static_cast<std::size_t>(p)]));
    mb.merge(Moments::from_values(b[static_cast<std::size_t>(p)]));
  }
  const double scale = std::pow(static_cast<double>(n), 1.5);
  RatioResult r;
  r.numerator = ma.mean / scale;
  r.denominator = mb.mean / scale;
  r.ratio = ma.mean / mb.mean;
  const double rel = std::sqrt(ma.variance() / (ma.count * ma.mean * ma.mean) +
                               mb.variance() / (mb.count * mb.mean * mb.mean));
  r.ci_low = r.ratio * (1 - 1.96 * rel);
  r.ci_high = r.ratio * (1 + 1.96 * rel);
  return r;
}

RatioResult factor2_ratio_exact(int n) {
  if (n < 2) throw DomainError("factor-2 ratio needs n >= 2");
  const Pattern p12 = Permutation::parse("12");
  const Pattern p21 = Permutation::parse("21");
  const auto d132 = exact_distribution(canonical_family(FamilyKind::Single132), p12, n);
  const auto d321 = exact_distribution(canonical_family(FamilyKind::Single321), p21, n);
  const Rational num = d132.mean();
  const Rational den = d321.mean();
  const double scale = std::pow(static_cast<double>(n), 1.5);
  RatioResult r;
  r.numerator = to_double(num) / scale;
  r.denominator = to_double(den) / scale;
  r.ratio = to_double(num / den);
  r.ci_low = r.ci_high = r.ratio;
  r.exact = true;
  return r;
}

int AcceptanceSummary::failures() const {
  return static_cast<int>(std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; }));
}

}  // namespace pavoid
