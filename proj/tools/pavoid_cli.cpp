// Command-line front end. Exit status: 0 success, 1 library error (domain,
// not-a-member, budget), 2 usage error.
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pavoid/asymptotics.hpp"
#include "pavoid/counting.hpp"
#include "pavoid/error.hpp"
#include "pavoid/families.hpp"
#include "pavoid/limit_laws.hpp"
#include "pavoid/serialize.hpp"
#include "pavoid/verify.hpp"

using namespace pavoid;

namespace {

struct Options {
  std::string family;
  std::string sigma;
  std::string pi;
  std::string grid;
  std::string format = "json";
  int n = 0;
  std::int64_t replicates = 0;
  std::int64_t draws = 0;
  std::int64_t count = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1000000;
  int workers = 1;
  int bins = 0;
  bool timing = false;
  bool exact_only = false;
  std::vector<int> criteria;
  std::vector<double> moments;
};

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("exact")) return v["exact"].get<std::string>();
  return v.dump();
}

void emit_plain(const Json& out) {
  for (const auto& [key, v] : out.items()) {
    if (v.is_array()) {
      std::cout << key << ":\n";
      for (const auto& e : v) std::cout << "  " << (e.is_primitive() ? scalar_text(e) : e.dump()) << "\n";
    } else if (v.is_object() && !v.contains("exact")) {
      for (const auto& [k2, v2] : v.items()) std::cout << key << "." << k2 << ": " << scalar_text(v2) << "\n";
    } else {
      std::cout << key << ": " << scalar_text(v) << "\n";
    }
  }
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + (v[i].is_primitive() ? scalar_text(v[i]) : v[i].dump());
  } else if (v.is_null()) {
    s = "";
  } else {
    s = v.is_object() && !v.contains("exact") ? v.dump() : scalar_text(v);
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Nested objects are flattened one level as parent.child columns.
void emit_csv(const Json& out) {
  std::vector<std::string> header, row;
  for (const auto& [key, v] : out.items()) {
    if (v.is_object() && !v.contains("exact")) {
      for (const auto& [k2, v2] : v.items()) {
        header.push_back(key + "." + k2);
        row.push_back(csv_cell(v2));
      }
    } else {
      header.push_back(key);
      row.push_back(csv_cell(v));
    }
  }
  for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "," : "") << header[i];
  std::cout << "\n";
  for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
  std::cout << "\n";
}

void emit(const Json& out, const std::string& format) {
  if (format == "json") std::cout << out.dump(2) << "\n";
  else if (format == "plain") emit_plain(out);
  else emit_csv(out);
}

// sigma in the user's frame, moved to the canonical frame.
Pattern canonical_sigma(const FamilyId& f, const std::string& text) { return f.to_canonical(Permutation::parse(text)); }

Json with_family(const FamilyId& f) { return Json{{"family", family_json(f)}}; }

Json run_normalize(const Options& o) { return with_family(normalize(o.family)); }

Json run_cardinality(const Options& o) {
  const FamilyId f = normalize(o.family);
  Json out = with_family(f);
  out["n"] = o.n;
  const BigInt c = f.kind == FamilyKind::Unrestricted ? factorial(o.n) : cardinality(f, o.n);
  out["cardinality"] = to_string(c);
  return out;
}

Json run_enumerate(const Options& o) {
  const FamilyId f = normalize(o.family);
  const BigInt c = f.kind == FamilyKind::Unrestricted ? factorial(o.n) : cardinality(f, o.n);
  if (c > o.budget) throw BudgetExceeded(to_string(c) + " members exceed the budget " + std::to_string(o.budget));
  Json out = with_family(f);
  out["n"] = o.n;
  Json members = Json::array();
  for_each_member(f, o.n, [&](const Permutation& pi) { members.push_back(f.from_canonical(pi).str()); });
  out["count"] = members.size();
  out["members"] = members;
  return out;
}

Json run_sample(const Options& o) {
  const FamilyId f = normalize(o.family);
  RandomStream rng(o.seed);
  Json out = with_family(f);
  out["n"] = o.n;
  out["seed"] = o.seed;
  Json draws = Json::array();
  for (std::int64_t i = 0; i < o.count; ++i) draws.push_back(f.from_canonical(sample(f, o.n, rng)).str());
  out["samples"] = draws;
  return out;
}

Json run_count(const Options& o) {
  const FamilyId f = normalize(o.family);
  const Pattern sigma = canonical_sigma(f, o.sigma);
  const Permutation pi = f.to_canonical(Permutation::parse(o.pi));
  Json out = with_family(f);
  out["sigma"] = o.sigma;
  out["canonicalSigma"] = sigma.compact();
  out["pi"] = o.pi;
  if (f.kind == FamilyKind::Trivial || f.kind == FamilyKind::Unrestricted) {
    if (!avoids(pi, f.canonical)) throw NotAMember(o.pi + " is not in the family");
    out["count"] = to_string(occurrences(sigma, pi));
  } else {
    out["count"] = to_string(fast_count(f, sigma, encode(f, pi)));
  }
  return out;
}

Json run_theory(const Options& o) {
  const FamilyId f = normalize(o.family);
  const Pattern sigma = canonical_sigma(f, o.sigma);
  Json out = with_family(f);
  out["sigma"] = o.sigma;
  out["canonicalSigma"] = sigma.compact();
  if (has_normal_limit(f.kind)) {
    out["theory"] = params_json(asymptotic_params(f, sigma));
  } else {
    out["theory"] = law_json(limit_law(f, sigma));
  }
  return out;
}

Json run_law(const Options& o) {
  const FamilyId f = normalize(o.family);
  const Pattern sigma = canonical_sigma(f, o.sigma);
  const LimitLaw law = limit_law(f, sigma);
  Json out = with_family(f);
  out["sigma"] = o.sigma;
  out["canonicalSigma"] = sigma.compact();
  out["law"] = law_json(law);
  if (!o.moments.empty()) {
    Json m = Json::array();
    for (double r : o.moments) {
      Json entry{{"r", r}, {"value", limit_moment(law, r)}};
      if (std::floor(r) == r) entry["exact"] = limit_moment_exact(law, static_cast<int>(r)).str();
      m.push_back(entry);
    }
    out["moments"] = m;
  }
  return out;
}

Json run_expect(const Options& o) {
  const FamilyId f = normalize(o.family);
  if (f.kind != FamilyKind::PairE) throw DomainError("expect applies to the {132,321} family and its symmetric images");
  int i = 0, j = 0, p = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(o.grid);
  if (!(in >> i >> c1 >> j >> c2 >> p) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof()) {
    throw ParseError("--grid expects i,j,p");
  }
  Json out = with_family(f);
  out["grid"] = std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(p);
  out["n"] = o.n;
  out["expectation"] = exact_json(exact_expectation_E(i, j, p, o.n));
  return out;
}

Json run_simulate(const Options& o) {
  const FamilyId f = normalize(o.family);
  SimulationOptions opt;
  opt.workers = o.workers;
  opt.histogram_bins = o.bins;
  const auto r = simulate(f, canonical_sigma(f, o.sigma), o.n, o.replicates, o.seed, opt);
  return report_json(r, o.timing);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern occurrences in pattern-avoiding permutations"};
  app.require_subcommand(1);
  Options o;
  const auto format_opt = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json, csv or plain")->check(CLI::IsMember({"json", "csv", "plain"}));
  };
  const auto family_opt = [&](CLI::App* c) {
    c->add_option("--family", o.family, "forbidden set, e.g. \"132,312\"")->required();
  };
  const auto n_opt = [&](CLI::App* c) { c->add_option("--n", o.n, "permutation length")->required()->check(CLI::Range(1, 100000000)); };
  const auto sigma_opt = [&](CLI::App* c) { c->add_option("--sigma", o.sigma, "pattern, e.g. 21")->required(); };
  const auto seed_opt = [&](CLI::App* c) { c->add_option("--seed", o.seed, "random seed")->required(); };
  const auto workers_opt = [&](CLI::App* c) {
    c->add_option("--workers", o.workers, "worker threads; results do not depend on it")->check(CLI::Range(1, 1024));
  };

  auto* normalize_cmd = app.add_subcommand("normalize", "resolve a forbidden set to its canonical family");
  family_opt(normalize_cmd);
  format_opt(normalize_cmd);

  auto* cardinality_cmd = app.add_subcommand("cardinality", "number of avoiders of length n");
  family_opt(cardinality_cmd);
  n_opt(cardinality_cmd);
  format_opt(cardinality_cmd);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list all avoiders of length n");
  family_opt(enumerate_cmd);
  n_opt(enumerate_cmd);
  enumerate_cmd->add_option("--budget", o.budget, "maximum number of members");
  format_opt(enumerate_cmd);

  auto* sample_cmd = app.add_subcommand("sample", "uniform random avoiders");
  family_opt(sample_cmd);
  n_opt(sample_cmd);
  seed_opt(sample_cmd);
  sample_cmd->add_option("--count", o.count, "number of samples")->check(CLI::PositiveNumber);
  format_opt(sample_cmd);

  auto* count_cmd = app.add_subcommand("count", "occurrences of sigma in a member pi");
  family_opt(count_cmd);
  sigma_opt(count_cmd);
  count_cmd->add_option("--pi", o.pi, "member permutation")->required();
  format_opt(count_cmd);

  auto* theory_cmd = app.add_subcommand("theory", "asymptotic mean and variance parameters");
  family_opt(theory_cmd);
  sigma_opt(theory_cmd);
  format_opt(theory_cmd);

  auto* law_cmd = app.add_subcommand("law", "limit law descriptor and moments");
  family_opt(law_cmd);
  sigma_opt(law_cmd);
  law_cmd->add_option("--moment", o.moments, "moment orders r to evaluate");
  format_opt(law_cmd);

  auto* expect_cmd = app.add_subcommand("expect", "exact expectation for the {132,321} family");
  family_opt(expect_cmd);
  expect_cmd->add_option("--grid", o.grid, "i,j,p")->required();
  n_opt(expect_cmd);
  format_opt(expect_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo statistics of n_sigma");
  family_opt(simulate_cmd);
  sigma_opt(simulate_cmd);
  n_opt(simulate_cmd);
  simulate_cmd->add_option("--replicates", o.replicates, "number of samples")->required()->check(CLI::PositiveNumber);
  seed_opt(simulate_cmd);
  workers_opt(simulate_cmd);
  simulate_cmd->add_option("--bins", o.bins, "standardized histogram bins over [-4,4]")->check(CLI::NonNegativeNumber);
  simulate_cmd->add_flag("--timing", o.timing, "include wall-clock time (breaks byte-identical output)");
  format_opt(simulate_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "verification checks");
  verify_cmd->require_subcommand(1);
  auto* v_accept = verify_cmd->add_subcommand("acceptance", "run the acceptance criteria");
  v_accept->add_flag("--exact-only", o.exact_only, "only the exact criteria");
  v_accept->add_option("--criteria", o.criteria, "criterion numbers")->check(CLI::Range(1, 11));
  seed_opt(v_accept);
  workers_opt(v_accept);
  format_opt(v_accept);
  auto* v_uniform = verify_cmd->add_subcommand("uniformity", "chi-square test of the sampler");
  family_opt(v_uniform);
  n_opt(v_uniform);
  v_uniform->add_option("--draws", o.draws, "number of draws")->required()->check(CLI::PositiveNumber);
  seed_opt(v_uniform);
  format_opt(v_uniform);
  auto* v_dist = verify_cmd->add_subcommand("distribution", "exact law of n_sigma by enumeration");
  family_opt(v_dist);
  sigma_opt(v_dist);
  n_opt(v_dist);
  v_dist->add_option("--budget", o.budget, "maximum number of members");
  format_opt(v_dist);
  auto* v_normal = verify_cmd->add_subcommand("normality", "simulate and test against the normal limit");
  family_opt(v_normal);
  sigma_opt(v_normal);
  n_opt(v_normal);
  v_normal->add_option("--replicates", o.replicates, "number of samples")->required()->check(CLI::PositiveNumber);
  seed_opt(v_normal);
  workers_opt(v_normal);
  format_opt(v_normal);
  auto* v_ratio = verify_cmd->add_subcommand("ratio", "132 vs 321 factor-2 ratio");
  n_opt(v_ratio);
  v_ratio->add_option("--replicates", o.replicates, "number of samples; 0 = exhaustive")->check(CLI::NonNegativeNumber);
  v_ratio->add_option("--seed", o.seed, "random seed (required unless exhaustive)");
  workers_opt(v_ratio);
  format_opt(v_ratio);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Json out;
    int status = 0;
    if (*normalize_cmd) out = run_normalize(o);
    else if (*cardinality_cmd) out = run_cardinality(o);
    else if (*enumerate_cmd) out = run_enumerate(o);
    else if (*sample_cmd) out = run_sample(o);
    else if (*count_cmd) out = run_count(o);
    else if (*theory_cmd) out = run_theory(o);
    else if (*law_cmd) out = run_law(o);
    else if (*expect_cmd) out = run_expect(o);
    else if (*simulate_cmd) out = run_simulate(o);
    else if (*v_accept) {
      AcceptanceConfig config;
      config.exact_only = o.exact_only;
      config.criteria = o.criteria;
      config.seed = o.seed;
      config.workers = o.workers;
      const auto summary = run_acceptance(config);
      Json results = Json::array();
      for (const auto& r : summary.results) results.push_back(criterion_json(r));
      out = Json{{"seed", o.seed}, {"failures", summary.failures()}, {"results", results}};
      status = summary.failures() == 0 ? 0 : 1;
    } else if (*v_uniform) {
      const FamilyId f = normalize(o.family);
      out = with_family(f);
      out["n"] = o.n;
      out["draws"] = o.draws;
      out["seed"] = o.seed;
      const auto r = uniformity_check(f, o.n, o.draws, o.seed);
      out["uniformity"] = uniformity_json(r);
      out["pass"] = r.p_value > 1e-3;
      status = r.p_value > 1e-3 ? 0 : 1;
    } else if (*v_dist) {
      const FamilyId f = normalize(o.family);
      out = with_family(f);
      out["sigma"] = o.sigma;
      out["n"] = o.n;
      const auto d = distribution_json(exact_distribution(f, canonical_sigma(f, o.sigma), o.n, o.budget));
      for (const auto& [k, v] : d.items()) out[k] = v;
    } else if (*v_normal) {
      const FamilyId f = normalize(o.family);
      const Pattern sigma = canonical_sigma(f, o.sigma);
      SimulationOptions opt;
      opt.workers = o.workers;
      const auto r = simulate(f, sigma, o.n, o.replicates, o.seed, opt);
      const auto check = normality_check(f, sigma, r);
      out = report_json(r);
      out["status"] = status_name(check.status);
      out["detail"] = check.detail;
      status = check.ok() ? 0 : 1;
    } else if (*v_ratio) {
      if (o.replicates > 0 && v_ratio->count("--seed") == 0) {
        std::cerr << "error: --seed is required for a sampled ratio\n";
        return 2;
      }
      const auto r = o.replicates > 0 ? factor2_ratio_check(o.n, o.replicates, o.seed, o.workers) : factor2_ratio_exact(o.n);
      out = Json{{"n", o.n}, {"replicates", o.replicates}};
      if (o.replicates > 0) out["seed"] = o.seed;
      const Json fields = ratio_json(r);
      for (const auto& [k, v] : fields.items()) out[k] = v;
    }
    emit(out, o.format);
    return status;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
