#include "pavoid/serialize.hpp"

#include <sstream>

namespace pavoid {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

Json family_json(const FamilyId& family) {
  return Json{{"kind", kind_name(family.kind)},
              {"canonical", family.canonical_name()},
              {"original", family.original_name()},
              {"symmetry", family.symmetry.name()}};
}

Json exact_json(const QSqrt5& x) { return Json{{"exact", x.str()}, {"value", x.to_double()}}; }

Json exact_json(const Rational& x) { return Json{{"exact", to_string(x)}, {"value", to_double(x)}}; }

Json params_json(const AsymptoticParams& p) {
  return Json{{"sigma", p.sigma.compact()},
              {"meanExponent", p.mean_exponent},
              {"meanCoeff", exact_json(p.mean_coeff)},
              {"varExponent", p.var_exponent},
              {"varCoeff", exact_json(p.var_coeff)},
              {"degenerate", p.degenerate},
              {"renewal", p.renewal}};
}

Json law_json(const LimitLaw& law) {
  Json params;
  if (const auto* n = std::get_if<NormalLaw>(&law)) {
    params = {{"meanCoeff", exact_json(n->mean_coeff)},
              {"meanExponent", n->mean_exponent},
              {"varCoeff", exact_json(n->var_coeff)},
              {"varExponent", n->var_exponent},
              {"degenerate", n->degenerate}};
  } else if (const auto* d = std::get_if<DirichletLaw>(&law)) {
    if (d->identity) params = {{"variant", "E-identity"}, {"i", d->i}};
    else params = {{"variant", "E-grid"}, {"i", d->i}, {"j", d->j}, {"p", d->p}};
  } else if (const auto* u = std::get_if<UniformLaw>(&law)) {
    params = {{"variant", variant_name(u->variant)}, {"k", u->k}, {"m", u->m}};
  } else {
    const auto& e = std::get<ExcursionLaw>(law);
    params = {{"family", kind_name(e.family)}, {"sigma", e.sigma.compact()}, {"steps", e.steps}};
  }
  return Json{{"kind", law_kind(law)}, {"scalingExponent", exact_json(scaling_exponent(law))}, {"params", params}};
}

Json report_json(const SimulationReport& r, bool timing) {
  const auto opt = [](const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); };
  Json j{{"family", r.family},
         {"originalFamily", r.original_family},
         {"symmetry", r.symmetry},
         {"sigma", r.sigma},
         {"n", r.n},
         {"replicates", r.replicates},
         {"seed", r.seed},
         {"empiricalMean", r.empirical_mean},
         {"empiricalVariance", r.empirical_variance},
         {"standardizedSkewness", r.skewness},
         {"standardizedExcessKurtosis", r.excess_kurtosis},
         {"theoreticalMean", opt(r.theoretical_mean)},
         {"theoreticalVariance", opt(r.theoretical_variance)}};
  if (!r.histogram.empty()) j["normalizedHistogram"] = r.histogram;
  if (timing) j["wallClock"] = r.wall_clock;
  return j;
}

Json distribution_json(const ExactDistribution& d) {
  Json values = Json::array();
  for (const auto& [v, c] : d.multiplicity) values.push_back(Json{{"value", to_string(v)}, {"members", to_string(c)}});
  return Json{{"total", to_string(d.total())}, {"mean", exact_json(d.mean())}, {"distribution", values}};
}

Json uniformity_json(const UniformityResult& r) {
  return Json{{"members", r.members},
              {"chiSquare", r.statistic},
              {"degreesOfFreedom", r.degrees_of_freedom},
              {"pValue", r.p_value}};
}

Json ratio_json(const RatioResult& r) {
  return Json{{"numerator", r.numerator}, {"denominator", r.denominator}, {"ratio", r.ratio},
              {"ciLow", r.ci_low},       {"ciHigh", r.ci_high},          {"exact", r.exact}};
}

Json criterion_json(const CriterionResult& r) {
  return Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"statistical", r.statistical}, {"detail", r.detail}};
}

std::string report_csv_header(bool timing) {
  std::string h =
      "family,originalFamily,symmetry,sigma,n,replicates,seed,empiricalMean,empiricalVariance,"
      "standardizedSkewness,standardizedExcessKurtosis,theoreticalMean,theoreticalVariance";
  if (timing) h += ",wallClock";
  return h;
}

std::string report_csv_row(const SimulationReport& r, bool timing) {
  const auto opt = [](const std::optional<double>& x) { return x ? num(*x) : std::string(); };
  std::string row = csv_field(r.family) + "," + csv_field(r.original_family) + "," + r.symmetry + "," +
                    csv_field(r.sigma) + "," + std::to_string(r.n) + "," + std::to_string(r.replicates) + "," +
                    std::to_string(r.seed) + "," + num(r.empirical_mean) + "," + num(r.empirical_variance) + "," +
                    num(r.skewness) + "," + num(r.excess_kurtosis) + "," + opt(r.theoretical_mean) + "," +
                    opt(r.theoretical_variance);
  if (timing) row += "," + num(r.wall_clock);
  return row;
}

}  // namespace pavoid
