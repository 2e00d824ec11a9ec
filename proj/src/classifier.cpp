#include "fhardy/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fhardy {

namespace {

double pole_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sq = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        sq += diff * diff;
    }
    return std::sqrt(sq);
}

bool near(double x, double edge) {
    return std::abs(x - edge) <= kEqualityTol * std::max(1.0, std::abs(edge));
}

}  // namespace

double Configuration::positive_mass_sum() const {
    double sum = 0.0;
    for (double m : masses)
        if (m > 0.0) sum += m;
    return sum;
}

double Configuration::mass_sum() const {
    return std::accumulate(masses.begin(), masses.end(), 0.0);
}

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::ExistsMinimizer: return "ExistsMinimizer";
        case Outcome::NoSolutions: return "NoSolutions";
        case Outcome::NotAchieved: return "NotAchieved";
        case Outcome::PositivityGuaranteed: return "PositivityGuaranteed";
        case Outcome::PositivityViolatedSomewhere: return "PositivityViolatedSomewhere";
        case Outcome::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

Configuration validate(const Configuration& config, double* min_pole_distance) {
    validate(config.params);
    const std::size_t k = config.masses.size();
    if (k == 0)
        throw std::invalid_argument("configuration needs at least one pole");
    if (config.poles.size() != k)
        throw std::invalid_argument("masses and poles must have equal length");
    for (const auto& pole : config.poles)
        if (pole.size() != static_cast<std::size_t>(config.params.N))
            throw std::invalid_argument("pole dimension does not match N");

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return config.masses[a] < config.masses[b];
    });

    Configuration out;
    out.params = config.params;
    out.masses.reserve(k);
    out.poles.reserve(k);
    for (std::size_t i : order) {
        out.masses.push_back(config.masses[i]);
        out.poles.push_back(config.poles[i]);
    }

    double min_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double dist = pole_distance(out.poles[i], out.poles[j]);
            if (dist == 0.0)
                throw std::invalid_argument("poles must be pairwise distinct");
            min_dist = std::min(min_dist, dist);
        }
    }
    if (min_pole_distance)
        *min_pole_distance = (k > 1) ? min_dist : std::numeric_limits<double>::infinity();
    return out;
}

double interaction_sum(const Configuration& config, std::size_t i) {
    const double h = hardy_constant(config.params);
    if (i >= config.masses.size())
        throw std::invalid_argument("pole index out of range");
    const double lam = config.masses[i];
    if (!(lam > 0.0) || !(lam < h))
        throw std::domain_error("interaction_sum requires lambda_i in (0, hardy_constant)");
    const double alpha = alpha_of_lambda(lam, config.params);
    const double beta = (config.params.s > alpha) ? alpha : config.params.s;
    double sum = 0.0;
    for (std::size_t j = 0; j < config.masses.size(); ++j) {
        if (j == i) continue;
        const double dist = pole_distance(config.poles[j], config.poles[i]);
        sum += config.masses[j] / std::pow(dist, 2.0 * beta);
    }
    return sum;
}

RuleResult check_existence_main(const Configuration& config) {
    RuleResult r;
    r.id = "existence-dominant-pole";
    const double h = hardy_constant(config.params);
    const std::size_t k = config.masses.size();
    const double lam_k = config.masses.back();
    double rest = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) rest += config.masses[i];

    r.values.emplace_back("lambda_k", lam_k);
    r.values.emplace_back("hardy_constant", h);
    r.values.emplace_back("sum_masses_below_k", rest);

    const bool dominant_ok = lam_k > 0.0 && lam_k < h;
    const bool rest_ok = rest <= 0.0;
    bool interaction_ok = false;
    if (dominant_ok) {
        // any pole attaining the maximal mass may be labeled dominant
        // (the remaining-mass sum is the same for every choice), so take
        // the most favorable interaction sum; this keeps the verdict
        // independent of how ties were ordered by the input
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = k; i-- > 0 && config.masses[i] == lam_k;)
            best = std::max(best, interaction_sum(config, i));
        r.values.emplace_back("interaction_sum", best);
        interaction_ok = best > 0.0;
    }
    r.fired = dominant_ok && rest_ok && interaction_ok;
    r.detail = r.fired
        ? "dominant mass in (0,h), remaining masses nonpositive in total, "
          "interaction sum positive; coercivity certificate still required"
        : "existence conditions not met";
    return r;
}

RuleResult check_mass_feasibility(const std::vector<double>& masses, const ProblemParams& params) {
    RuleResult r;
    r.id = "mass-feasibility";
    const double h = hardy_constant(params);
    const double max_mass = *std::max_element(masses.begin(), masses.end());
    const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
    r.values.emplace_back("max_mass", max_mass);
    r.values.emplace_back("total_mass", total);
    r.values.emplace_back("hardy_constant", h);
    r.fired = max_mass < h && total < h;
    r.detail = r.fired ? "some pole placement is coercive"
                       : "no pole placement is coercive";
    return r;
}

RuleResult check_uniform_positivity(const std::vector<double>& masses, const ProblemParams& params) {
    RuleResult r;
    r.id = "uniform-positivity";
    const double h = hardy_constant(params);
    double positive = 0.0;
    for (double m : masses)
        if (m > 0.0) positive += m;
    r.values.emplace_back("positive_mass_sum", positive);
    r.values.emplace_back("hardy_constant", h);
    if (near(positive, h)) {
        r.fired = false;
        r.detail = "undecided: positive mass sum at the Hardy constant";
    } else if (positive < h) {
        r.fired = true;
        r.detail = "form positive for every pole placement";
    } else {
        r.fired = false;
        r.detail = "form indefinite for some pole placements";
    }
    return r;
}

RuleResult check_nonexistence(const std::vector<double>& masses, const ProblemParams& params) {
    RuleResult r;
    r.id = "nonexistence-excess-mass";
    if (masses.size() < 2) {
        r.applicable = false;
        r.detail = "stated for k >= 2 only";
        return r;
    }
    const double h = hardy_constant(params);
    const double max_mass = *std::max_element(masses.begin(), masses.end());
    const double total = std::accumulate(masses.begin(), masses.end(), 0.0);
    r.values.emplace_back("max_mass", max_mass);
    r.values.emplace_back("total_mass", total);
    r.values.emplace_back("hardy_constant", h);
    r.fired = max_mass > h || total > h;
    r.detail = r.fired ? "no solutions for any pole placement" : "rule silent";
    return r;
}

RuleResult check_not_achieved(const std::vector<double>& masses, const ProblemParams& params) {
    RuleResult r;
    r.id = "infimum-not-achieved";
    if (masses.size() < 2) {
        r.applicable = false;
        r.detail = "stated for k >= 2 only";
        return r;
    }
    const double h = hardy_constant(params);
    const std::size_t k = masses.size();
    const double lam_k = masses.back();

    bool single_positive = masses.front() < 0.0 && lam_k > 0.0 && lam_k < h;
    for (std::size_t i = 0; i + 1 < k && single_positive; ++i)
        single_positive = masses[i] <= 0.0;

    bool all_small = masses.front() >= 0.0;
    double total = 0.0;
    for (double m : masses) {
        all_small = all_small && m >= 0.0 && m < h;
        total += m;
    }
    all_small = all_small && total < h;

    r.values.emplace_back("lambda_1", masses.front());
    r.values.emplace_back("lambda_k", lam_k);
    r.values.emplace_back("total_mass", total);
    r.values.emplace_back("hardy_constant", h);
    r.fired = single_positive || all_small;
    r.detail = single_positive
        ? "nonpositive masses plus one dominant mass in (0,h): infimum unattained"
        : (all_small ? "all masses in [0,h) with total below h: infimum unattained"
                     : "rule silent");
    return r;
}

Verdict classify(const Configuration& raw, std::optional<double> external_mu) {
    const Configuration config = validate(raw);
    const double h = hardy_constant(config.params);
    const std::size_t k = config.masses.size();
    const double lam_k = config.masses.back();

    Verdict verdict;
    RuleResult feasibility = check_mass_feasibility(config.masses, config.params);
    RuleResult positivity = check_uniform_positivity(config.masses, config.params);
    RuleResult nonexistence = check_nonexistence(config.masses, config.params);
    RuleResult not_achieved = check_not_achieved(config.masses, config.params);
    RuleResult existence = check_existence_main(config);

    verdict.rules = {feasibility, positivity, nonexistence, not_achieved, existence};

    // Ties on decisive strict inequalities are not covered by any rule.
    bool tie = near(config.positive_mass_sum(), h) || near(lam_k, h);
    if (!tie && k >= 2 && lam_k > 0.0 && lam_k < h) {
        for (const auto& kv : existence.values)
            if (kv.first == "interaction_sum" && near(kv.second, 0.0))
                tie = true;
    }
    if (tie) {
        verdict.outcome = Outcome::Indeterminate;
        verdict.notes.push_back(
            "a decisive quantity sits at its threshold within tolerance 1e-12; "
            "the strict criteria do not apply");
        return verdict;
    }

    if (nonexistence.applicable && nonexistence.fired) {
        verdict.outcome = Outcome::NoSolutions;
        return verdict;
    }
    if (k == 1 && lam_k > h) {
        verdict.outcome = Outcome::Indeterminate;
        verdict.notes.push_back(
            "single-pole mass exceeds the Hardy constant: the quadratic form "
            "is negative somewhere (see the negativity certificate search), "
            "but the k >= 2 nonexistence rule does not formally apply");
        return verdict;
    }
    if (not_achieved.applicable && not_achieved.fired) {
        verdict.outcome = Outcome::NotAchieved;
        return verdict;
    }
    if (existence.fired) {
        if (positivity.fired) {
            verdict.outcome = Outcome::ExistsMinimizer;
            verdict.notes.push_back("coercivity certified by the uniform positivity rule");
            return verdict;
        }
        if (external_mu && *external_mu > 0.0) {
            verdict.outcome = Outcome::ExistsMinimizer;
            verdict.notes.push_back("coercivity certified by the supplied numeric estimate");
            return verdict;
        }
        verdict.outcome = Outcome::Indeterminate;
        verdict.notes.push_back(
            "existence conditions hold but coercivity is uncertified; supply a "
            "numeric estimate of the coercivity quotient");
        return verdict;
    }

    const bool all_nonpositive =
        std::all_of(config.masses.begin(), config.masses.end(), [](double m) { return m <= 0.0; });
    if (all_nonpositive && positivity.fired) {
        verdict.outcome = Outcome::PositivityGuaranteed;
        verdict.notes.push_back("no positive mass: the form dominates the seminorm");
        return verdict;
    }
    if (!positivity.fired && positivity.applicable &&
        config.positive_mass_sum() > h) {
        verdict.outcome = Outcome::PositivityViolatedSomewhere;
        verdict.notes.push_back(
            "positive part of the masses exceeds the Hardy constant: some pole "
            "placements make the form indefinite; no covered case applies to "
            "the given placement");
        return verdict;
    }
    verdict.outcome = Outcome::Indeterminate;
    verdict.notes.push_back("no rule fired for this configuration");
    return verdict;
}

}  // namespace fhardy
