#pragma once

#include <optional>
#include <vector>

#include "fhardy/forms.hpp"

namespace fhardy {

/// Outcome of a constrained descent run. `value` is the final quotient,
/// an upper bound for the discrete infimum; `history` records the
/// monotone quotient sequence.
struct DescentResult {
    double value = 0.0;
    GridFunction minimizer;
    int iterations = 0;
    bool converged = false;
    bool unbounded_below = false;
    std::vector<double> history;
};

/// Coercivity quotient: minimizes Q(u) over the seminorm sphere
/// {seminorm_sq = 1} by projected gradient descent with a
/// Barzilai-Borwein step and monotone backtracking.
DescentResult estimate_mu(const Configuration& config, const Grid1D& grid,
                          int iters = 2000, double tol = 1e-10, int threads = 1);

/// Critical quotient: minimizes Q(u) over the critical-norm sphere by
/// the same scheme, starting from the discretized bubble
/// (1 + x^2)^{-(N-2s)/2}. Sets `unbounded_below` when Q turns negative
/// along the flow (the configuration should have been screened).
DescentResult estimate_S(const Configuration& config, const Grid1D& grid,
                         int iters = 3000, double tol = 1e-10, int threads = 1);

/// A trial function witnessing Q < 0, with the dilation rung that
/// produced it.
struct NegativityCertificate {
    GridFunction trial;
    double q_value = 0.0;
    double rho = 0.0;
};

/// Scans the dilation ladder rho in {2^-8 .. 2^8} of a mollified
/// near-critical power trial: centered at the heaviest pole when a
/// single mass exceeds the Hardy constant, or at the origin scanning
/// large rho first when only the total mass does. Returns the first
/// trial with Q < 0, or nothing (legitimate at coarse resolution).
std::optional<NegativityCertificate> negativity_certificate(
    const Configuration& config, const Grid1D& grid, int threads = 1);

/// Mollified truncated power used by the certificate scan and as the
/// descent seed: |x-c|^{a0-(N-2s)/2} tapered by a flat log-envelope.
GridFunction certificate_trial(const Grid1D& grid, double center, double rho);

/// Compactness threshold (s kappa_s / N) * S_la^{1-N/(2s)} * M^{N/(2s)}
/// where M = min(S_0, every S_single, S_sigma).
double ps_threshold(double S_la, const std::vector<double>& S_singles,
                    double S_sigma, double S_0, const ProblemParams& params);

/// Test-function upper bound for the quotient of pole i against its
/// single-pole value: s_single - sum_{j != i} lambda_j I_norm(mu, |a_j - a_i|)
/// for each mu, where I_norm is the interaction integral of the
/// critically normalized model profile. The bound stays below s_single
/// when the off-pole masses interact favorably, approaching it as
/// mu -> 0. The single-pole value is supplied by the caller (typically
/// from estimate_S on the reduced configuration).
std::vector<double> interaction_upper_bound(const Configuration& config, std::size_t i,
                                            const std::vector<double>& mus,
                                            double s_single);

}  // namespace fhardy
