#pragma once

namespace fhardy {

/// Dimension and fractional order of the operator (-Delta)^s on R^N.
/// Requires N > 2s so that the critical exponent 2N/(N-2s) is finite.
struct ProblemParams {
    int N;
    double s;
};

/// Throws std::invalid_argument unless N >= 1, 0 < s < 1 and N > 2s.
void validate(const ProblemParams& params);

/// Gamma function for x > 0. Relative error below 1e-12 on [1e-3, 50].
double gamma_fn(double x);

/// Critical Sobolev exponent 2N/(N-2s).
double critical_exponent(const ProblemParams& params);

/// Best constant in the fractional Hardy inequality,
/// h = 2^{2s} Gamma((N+2s)/4)^2 / Gamma((N-2s)/4)^2.
double hardy_constant(const ProblemParams& params);

/// Dirichlet-to-Neumann normalization constant
/// kappa_s = Gamma(1-s) / (2^{2s-1} Gamma(s)), with kappa(1/2) = 1.
double kappa(double s);

/// Normalization constant of the singular-kernel form,
/// C = 2^{2s} s Gamma((N+2s)/2) / (pi^{N/2} Gamma(1-s)),
/// chosen so the quadratic form matches the Fourier symbol |xi|^{2s}.
double form_constant(const ProblemParams& params);

/// Spectral map
///   Lambda(a) = 2^{2s} G((N+2s+2a)/4) G((N+2s-2a)/4)
///             / (G((N-2s+2a)/4) G((N-2s-2a)/4)),
/// strictly decreasing on [0, (N-2s)/2] from the Hardy constant to 0.
/// The right endpoint returns exactly 0 (pole of the denominator).
double lambda_of_alpha(double alpha, const ProblemParams& params);

/// Inverse of lambda_of_alpha by bisection. Guarantees the residual
/// |Lambda(alpha) - lambda| <= 1e-10 * max(1, lambda) in at most 200
/// iterations; endpoints lambda = 0 and the exact Hardy constant map
/// to (N-2s)/2 and 0.
double alpha_of_lambda(double lambda, const ProblemParams& params);

}  // namespace fhardy
