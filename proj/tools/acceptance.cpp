// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 on any failure.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "pavoid/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pavoid acceptance suite"};
  pavoid::AcceptanceConfig config;
  app.add_flag("--exact-only", config.exact_only, "run only the exact (non-statistical) criteria");
  app.add_option("--criteria", config.criteria, "criterion numbers to run (default: all)")->check(CLI::Range(1, 11));
  app.add_option("--seed", config.seed, "seed for the statistical criteria");
  app.add_option("--workers", config.workers, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const auto summary = pavoid::run_acceptance(config, [](const pavoid::CriterionResult& r) {
    std::printf("[%s] criterion %2d %-32s (%.1fs) %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
  });
  std::printf("%d/%zu criteria passed\n", static_cast<int>(summary.results.size()) - summary.failures(),
              summary.results.size());
  return summary.failures() == 0 ? 0 : 1;
}
