#pragma once

#include <utility>
#include <vector>

#include "fhardy/special.hpp"

namespace fhardy {

/// Model single-pole radial profile
///   value(r) = mu^{-(N-2s)/2} K / (rho^{1-ahat} (1 + rho^{2 ahat}))^{(N-2s)/2}
/// with rho = r/mu and ahat = 2 alpha/(N-2s), so that
///   value ~ K r^{alpha-(N-2s)/2} as r -> 0 and
///   value ~ K r^{-alpha-(N-2s)/2} as r -> infinity.
/// The pair (c1, c2) brackets the profile against the reference envelope.
struct RadialProfile {
    ProblemParams params;
    double lambda;
    double alpha;
    double K = 1.0;
    double mu = 1.0;
    std::pair<double, double> envelope{1.0, 1.0};
};

/// Builds the profile for a mass lambda in (0, hardy_constant), deriving
/// the decay exponent from the spectral map.
RadialProfile make_profile(const ProblemParams& params, double lambda,
                           double K = 1.0, double mu = 1.0);

/// Evaluates the profile at radius r > 0 (computed in log space, safe for
/// extreme radii).
double profile_value(const RadialProfile& p, double r);

/// Reference envelope E(r) at the profile's scale, normalized so the
/// model profile equals K * E(r) identically.
double envelope_value(const RadialProfile& p, double r);

/// L^{2*} norm (2* = 2N/(N-2s)) by radial quadrature split at r = mu,
/// with panel doubling until the relative change is below 1e-8.
double critical_norm(const RadialProfile& p);

/// Squared L^2 norm; finite only when alpha > s (the tail exponent
/// integrates iff 2 alpha > 2s). Throws std::domain_error otherwise.
double profile_l2_sq(const RadialProfile& p);

struct EnvelopeReport {
    bool pass = true;
    /// Per-sample ratio value(r) / E(r); must lie within [c1, c2].
    std::vector<std::pair<double, double>> margins;
};

/// Verifies c1 * E(r) <= value(r) <= c2 * E(r) at every sample.
EnvelopeReport envelope_check(const RadialProfile& p, const std::vector<double>& samples);

}  // namespace fhardy
