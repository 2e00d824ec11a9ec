#include "fhardy/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fhardy {

void validate(const ProblemParams& params) {
    if (params.N < 1)
        throw std::invalid_argument("dimension N must be a positive integer");
    if (!(params.s > 0.0) || !(params.s < 1.0))
        throw std::invalid_argument("order s must lie in (0,1)");
    if (!(params.N > 2.0 * params.s))
        throw std::invalid_argument("requires N > 2s");
}

double gamma_fn(double x) {
    if (!(x > 0.0))
        throw std::domain_error("gamma_fn requires x > 0, got " + std::to_string(x));
    return std::tgamma(x);
}

double critical_exponent(const ProblemParams& params) {
    validate(params);
    return 2.0 * params.N / (params.N - 2.0 * params.s);
}

double hardy_constant(const ProblemParams& params) {
    validate(params);
    const double N = params.N, s = params.s;
    const double g1 = gamma_fn((N + 2.0 * s) / 4.0);
    const double g2 = gamma_fn((N - 2.0 * s) / 4.0);
    return std::pow(2.0, 2.0 * s) * (g1 / g2) * (g1 / g2);
}

double kappa(double s) {
    if (!(s > 0.0) || !(s < 1.0))
        throw std::domain_error("kappa requires s in (0,1)");
    return gamma_fn(1.0 - s) / (std::pow(2.0, 2.0 * s - 1.0) * gamma_fn(s));
}

double form_constant(const ProblemParams& params) {
    validate(params);
    const double N = params.N, s = params.s;
    return std::pow(2.0, 2.0 * s) * s * gamma_fn((N + 2.0 * s) / 2.0) /
           (std::pow(M_PI, N / 2.0) * gamma_fn(1.0 - s));
}

double lambda_of_alpha(double alpha, const ProblemParams& params) {
    validate(params);
    const double N = params.N, s = params.s;
    const double end = (N - 2.0 * s) / 2.0;
    if (alpha < 0.0 || alpha > end)
        throw std::domain_error("lambda_of_alpha requires alpha in [0, (N-2s)/2]");
    if (alpha == end)
        return 0.0;
    const double num = gamma_fn((N + 2.0 * s + 2.0 * alpha) / 4.0) *
                       gamma_fn((N + 2.0 * s - 2.0 * alpha) / 4.0);
    const double den = gamma_fn((N - 2.0 * s + 2.0 * alpha) / 4.0) *
                       gamma_fn((N - 2.0 * s - 2.0 * alpha) / 4.0);
    return std::pow(2.0, 2.0 * s) * num / den;
}

double alpha_of_lambda(double lambda, const ProblemParams& params) {
    validate(params);
    const double end = (params.N - 2.0 * params.s) / 2.0;
    const double h = hardy_constant(params);
    if (lambda < 0.0 || lambda > h * (1.0 + 1e-14))
        throw std::domain_error("alpha_of_lambda requires lambda in [0, hardy_constant]");
    if (lambda == 0.0)
        return end;
    if (lambda == h)
        return 0.0;
    const double tol = 1e-10 * std::max(1.0, lambda);
    double lo = 0.0, hi = end;
    double mid = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double val = lambda_of_alpha(mid, params);
        if (std::abs(val - lambda) <= tol)
            return mid;
        if (val > lambda)
            lo = mid;  // map is decreasing: value too large means alpha too small
        else
            hi = mid;
    }
    return mid;
}

}  // namespace fhardy
