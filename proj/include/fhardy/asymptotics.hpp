#pragma once

#include <utility>
#include <vector>

#include "fhardy/profile.hpp"

namespace fhardy {

/// Result of fitting the scale dependence of the interaction integral.
/// Plain model: log I = slope * log(mu) + log(constant).
/// Log-corrected model (boundary regime): I = mu^{2s} (a + b |log mu|),
/// reported with slope = 2s and constant = b.
struct RateFit {
    double slope = 0.0;
    double constant = 0.0;
    double r_squared = 0.0;
    bool log_corrected = false;
    std::pair<double, double> window{0.0, 0.0};
    int n_points = 0;
};

/// Spherical average of |r theta - xi|^{-2s} over unit directions theta,
/// as a function of r and rho = |xi|. Closed forms for N = 1 and N = 3,
/// Chebyshev-Gauss for N = 2, 64-node Gauss-Legendre with the polar
/// weight for N >= 4.
double angular_mean(double r, double rho, const ProblemParams& params);

/// Interaction integral of a profile against a shifted Hardy kernel,
///   I = integral of p(|x|)^2 |x - xi|^{-2s} dx over R^N,
/// by radial-angular reduction; relative quadrature error ~1e-4 target.
/// Depends on xi only through |xi| (the profile is radial).
double hardy_interaction(const RadialProfile& p, double xi_norm);

/// Pure-power interaction integral
///   Theta = integral of |x|^{2s-N-2 alpha} |x - xi|^{-2s} dx, |xi| = xi_norm,
/// finite exactly when 0 < alpha < s; throws std::domain_error otherwise.
/// Scales as Theta(c xi) = c^{-2 alpha} Theta(xi).
double theta_integral(double alpha, const ProblemParams& params, double xi_norm = 1.0);

/// Sweeps the profile scale mu over `mus` (>= 6 points spanning >= 2
/// decades recommended), computes I(mu) at fixed |xi|, and fits the decay
/// law. The log-corrected model is selected when it shrinks the maximum
/// log-residual of the plain power law by at least `log_factor`.
RateFit rate_sweep(const RadialProfile& base, double xi_norm,
                   const std::vector<double>& mus, double log_factor = 5.0);

}  // namespace fhardy
