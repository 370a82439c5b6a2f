#pragma once

// JSON and CSV forms of the library's results. Exact quantities (big
// integers, rationals, Q(sqrt5) values) are emitted as strings next to a
// floating-point approximation.

#include <string>

#include <json.hpp>

#include "pavoid/asymptotics.hpp"
#include "pavoid/limit_laws.hpp"
#include "pavoid/verify.hpp"

namespace pavoid {

using Json = nlohmann::ordered_json;

Json family_json(const FamilyId& family);
Json exact_json(const QSqrt5& x);
Json exact_json(const Rational& x);
Json params_json(const AsymptoticParams& p);
Json law_json(const LimitLaw& law);
Json report_json(const SimulationReport& r, bool timing = false);
Json distribution_json(const ExactDistribution& d);
Json uniformity_json(const UniformityResult& r);
Json ratio_json(const RatioResult& r);
Json criterion_json(const CriterionResult& r);

std::string report_csv_header(bool timing = false);
std::string report_csv_row(const SimulationReport& r, bool timing = false);

}  // namespace pavoid
