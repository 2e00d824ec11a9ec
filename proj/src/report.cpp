#include "fhardy/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fhardy {

std::string format_double(double v) {
    if (!std::isfinite(v))
        return "null";  // JSON has no inf/nan; reports should never produce them
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void dump_rec(const json& node, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (node.type()) {
        case json::value_t::object: {
            if (node.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : node.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += json(key).dump();  // escaped key
                out += ": ";
                dump_rec(value, out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (node.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& value : node) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_rec(value, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_double(node.get<double>());
            return;
        default:
            out += node.dump();  // strings, ints, bools, null
            return;
    }
}

}  // namespace

std::string dump_deterministic(const json& doc, int indent) {
    std::string out;
    dump_rec(doc, out, indent, 0);
    out += "\n";
    return out;
}

json to_json(const Configuration& config) {
    json doc;
    doc["schema"] = 1;
    doc["N"] = config.params.N;
    doc["s"] = config.params.s;
    doc["masses"] = config.masses;
    doc["poles"] = config.poles;
    return doc;
}

json to_json(const RuleResult& rule) {
    json doc;
    doc["id"] = rule.id;
    doc["applicable"] = rule.applicable;
    doc["fired"] = rule.fired;
    json values = json::object();
    for (const auto& [name, value] : rule.values)
        values[name] = value;
    doc["values"] = values;
    doc["detail"] = rule.detail;
    return doc;
}

json to_json(const Verdict& verdict) {
    json doc;
    doc["outcome"] = to_string(verdict.outcome);
    json rules = json::array();
    for (const auto& rule : verdict.rules)
        rules.push_back(to_json(rule));
    doc["rules"] = rules;
    doc["notes"] = verdict.notes;
    return doc;
}

json to_json(const QuadraticFormReport& report) {
    json doc;
    doc["seminorm_sq"] = report.seminorm_sq;
    doc["hardy_terms"] = report.hardy_terms;
    doc["q_value"] = report.q_value;
    doc["l2_sq"] = report.l2_sq;
    doc["crit_norm"] = report.crit_norm;
    doc["mu_quotient"] = report.mu_quotient;
    doc["s_quotient"] = report.s_quotient;
    return doc;
}

json to_json(const RateFit& fit) {
    json doc;
    doc["slope"] = fit.slope;
    doc["constant"] = fit.constant;
    doc["r_squared"] = fit.r_squared;
    doc["log_corrected"] = fit.log_corrected;
    doc["window"] = json::array({fit.window.first, fit.window.second});
    doc["n_points"] = fit.n_points;
    return doc;
}

json to_json(const DescentResult& result, bool include_history) {
    json doc;
    doc["value"] = result.value;
    doc["iterations"] = result.iterations;
    doc["converged"] = result.converged;
    doc["unbounded_below"] = result.unbounded_below;
    if (include_history)
        doc["history"] = result.history;
    return doc;
}

namespace {

const json& require_field(const json& doc, const char* key) {
    const auto it = doc.find(key);
    if (it == doc.end())
        throw std::invalid_argument(std::string("missing field: ") + key);
    return *it;
}

}  // namespace

Configuration config_from_json(const json& doc) {
    if (!doc.is_object())
        throw std::invalid_argument("configuration must be a JSON object");
    if (doc.contains("schema") && doc["schema"] != 1)
        throw std::invalid_argument("unsupported schema version");
    Configuration config;
    const json& n = require_field(doc, "N");
    if (!n.is_number_integer())
        throw std::invalid_argument("N must be an integer");
    config.params.N = n.get<int>();
    const json& s = require_field(doc, "s");
    if (!s.is_number())
        throw std::invalid_argument("s must be a number");
    config.params.s = s.get<double>();
    const json& masses = require_field(doc, "masses");
    if (!masses.is_array())
        throw std::invalid_argument("masses must be an array of numbers");
    for (const auto& m : masses) {
        if (!m.is_number())
            throw std::invalid_argument("masses must be an array of numbers");
        config.masses.push_back(m.get<double>());
    }
    const json& poles = require_field(doc, "poles");
    if (!poles.is_array())
        throw std::invalid_argument("poles must be an array of coordinate arrays");
    for (const auto& pole : poles) {
        if (!pole.is_array())
            throw std::invalid_argument("poles must be an array of coordinate arrays");
        std::vector<double> coords;
        for (const auto& c : pole) {
            if (!c.is_number())
                throw std::invalid_argument("pole coordinates must be numbers");
            coords.push_back(c.get<double>());
        }
        config.poles.push_back(std::move(coords));
    }
    return config;
}

}  // namespace fhardy
