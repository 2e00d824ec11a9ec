#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fhardy/special.hpp"

namespace fhardy {

/// Multipolar configuration: masses lambda_1..lambda_k attached to
/// pairwise distinct poles a_1..a_k in R^N. The normalized form keeps
/// the masses sorted ascending with the poles permuted consistently.
struct Configuration {
    ProblemParams params;
    std::vector<double> masses;
    std::vector<std::vector<double>> poles;

    /// Sum of the positive masses (drives the uniform positivity rule).
    double positive_mass_sum() const;
    /// Sum of all masses.
    double mass_sum() const;
};

/// One evaluated criterion with the inequality values it checked,
/// so every verdict is auditable.
struct RuleResult {
    std::string id;
    bool applicable = true;
    bool fired = false;
    std::vector<std::pair<std::string, double>> values;
    std::string detail;
};

enum class Outcome {
    ExistsMinimizer,
    NoSolutions,
    NotAchieved,
    PositivityGuaranteed,
    PositivityViolatedSomewhere,
    Indeterminate,
};

std::string to_string(Outcome outcome);

struct Verdict {
    Outcome outcome = Outcome::Indeterminate;
    std::vector<RuleResult> rules;
    std::vector<std::string> notes;
};

/// Relative tolerance at which decisive strict inequalities are treated
/// as ties (the criteria do not cover equality cases).
inline constexpr double kEqualityTol = 1e-12;

/// Sorts masses ascending (stable), permutes poles consistently and
/// records the minimum pairwise pole distance. Throws
/// std::invalid_argument for k = 0, duplicate poles, or dimension
/// mismatches.
Configuration validate(const Configuration& config, double* min_pole_distance = nullptr);

/// Interaction sum at pole i: sum_{j != i} lambda_j / |a_j - a_i|^{2 beta}
/// with beta = alpha_{lambda_i} when s > alpha_{lambda_i} and beta = s
/// otherwise. Requires lambda_i in (0, hardy_constant).
double interaction_sum(const Configuration& config, std::size_t i);

/// Existence criterion for the dominant pole: lambda_k in (0, h),
/// sum of the other masses <= 0, and interaction_sum at k positive.
/// Coercivity of the form must be certified separately.
RuleResult check_existence_main(const Configuration& config);

/// Mass feasibility: some pole placement is coercive iff every mass is
/// below the Hardy constant and so is the total mass.
RuleResult check_mass_feasibility(const std::vector<double>& masses, const ProblemParams& params);

/// Uniform positivity: the form is positive for every pole placement
/// iff the positive part of the mass vector stays below the Hardy
/// constant; above it, some placements admit no solutions.
RuleResult check_uniform_positivity(const std::vector<double>& masses, const ProblemParams& params);

/// Nonexistence for k >= 2: fires when some mass or the total mass
/// exceeds the Hardy constant.
RuleResult check_nonexistence(const std::vector<double>& masses, const ProblemParams& params);

/// Unattained infimum for k >= 2: fires when the masses are all
/// nonpositive except a single dominant one in (0, h), or when they are
/// all in [0, h) and sum below the Hardy constant.
RuleResult check_not_achieved(const std::vector<double>& masses, const ProblemParams& params);

/// Applies the rules with fixed precedence (nonexistence, unattained
/// infimum, existence, fallback positivity summary) and reports every
/// rule it evaluated. An externally computed coercivity estimate can
/// stand in for the symbolic positivity certificate.
Verdict classify(const Configuration& config,
                 std::optional<double> external_mu = std::nullopt);

}  // namespace fhardy
