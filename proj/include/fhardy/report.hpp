#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fhardy/asymptotics.hpp"
#include "fhardy/classifier.hpp"
#include "fhardy/forms.hpp"
#include "fhardy/solvers.hpp"

namespace fhardy {

using json = nlohmann::ordered_json;

/// Serializes a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

/// Dumps a JSON document with every float rendered by format_double,
/// with fixed field order and no locale dependence, so identical
/// documents serialize to identical bytes.
std::string dump_deterministic(const json& doc, int indent = 2);

json to_json(const Configuration& config);
json to_json(const RuleResult& rule);
json to_json(const Verdict& verdict);
json to_json(const QuadraticFormReport& report);
json to_json(const RateFit& fit);
json to_json(const DescentResult& result, bool include_history = true);

/// Parses a Configuration from {"schema":1, "N":int, "s":float,
/// "masses":[...], "poles":[[...],...]}. Throws std::invalid_argument
/// on missing or ill-typed fields (the document must already be
/// syntactically valid JSON).
Configuration config_from_json(const json& doc);

}  // namespace fhardy
