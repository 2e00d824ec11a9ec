#include "fhardy/profile.hpp"

#include <cmath>
#include <stdexcept>

#include "fhardy/quadrature.hpp"

namespace fhardy {

namespace {

double softplus(double x) {
    return x > 40.0 ? x : std::log1p(std::exp(x));
}

double sphere_area(int N) {
    // area of the unit sphere S^{N-1}; equals 2 for N = 1 (two points)
    return 2.0 * std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0);
}

/// log of the unscaled envelope at log-radius t = log(r/mu).
double log_envelope(double m, double ahat, double t) {
    return -m * ((1.0 - ahat) * t + softplus(2.0 * ahat * t));
}

}  // namespace

RadialProfile make_profile(const ProblemParams& params, double lambda, double K, double mu) {
    validate(params);
    const double h = hardy_constant(params);
    if (!(lambda > 0.0) || !(lambda < h))
        throw std::invalid_argument("profile mass must lie in (0, hardy_constant)");
    if (!(K > 0.0) || !(mu > 0.0))
        throw std::invalid_argument("profile amplitude and scale must be positive");
    RadialProfile p;
    p.params = params;
    p.lambda = lambda;
    p.alpha = alpha_of_lambda(lambda, params);
    p.K = K;
    p.mu = mu;
    p.envelope = {K, K};
    return p;
}

double profile_value(const RadialProfile& p, double r) {
    if (!(r > 0.0))
        throw std::domain_error("profile_value requires r > 0");
    const double m = (p.params.N - 2.0 * p.params.s) / 2.0;
    const double ahat = p.alpha / m;
    const double t = std::log(r / p.mu);
    return p.K * std::pow(p.mu, -m) * std::exp(log_envelope(m, ahat, t));
}

double envelope_value(const RadialProfile& p, double r) {
    if (!(r > 0.0))
        throw std::domain_error("envelope_value requires r > 0");
    const double m = (p.params.N - 2.0 * p.params.s) / 2.0;
    const double ahat = p.alpha / m;
    const double t = std::log(r / p.mu);
    return std::pow(p.mu, -m) * std::exp(log_envelope(m, ahat, t));
}

double critical_norm(const RadialProfile& p) {
    const int N = p.params.N;
    const double pstar = critical_exponent(p.params);
    const double m = (N - 2.0 * p.params.s) / 2.0;
    // both log-space decay rates equal 2 alpha N / (N-2s)
    const double rate = pstar * p.alpha;
    const double U = std::min(1e4, 60.0 / rate + 10.0);
    const auto integrand = [&](double t) {
        const double r = p.mu * std::exp(t);
        const double v = profile_value(p, r);
        return std::pow(v, pstar) * std::pow(r, static_cast<double>(N));
    };
    const double inner = quad::adaptive(integrand, -U, 0.0, 1e-8);
    const double outer = quad::adaptive(integrand, 0.0, U, 1e-8);
    const double integral = sphere_area(N) * (inner + outer);
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw std::runtime_error("critical norm quadrature failed");
    return std::pow(integral, 1.0 / pstar);
}

double profile_l2_sq(const RadialProfile& p) {
    const int N = p.params.N;
    const double s = p.params.s;
    if (!(p.alpha > s))
        throw std::domain_error(
            "squared profile is not integrable: tail decays like r^{-2s-2alpha-... } "
            "and requires alpha > s");
    const double rate_in = 2.0 * p.alpha + 2.0 * s;
    const double rate_out = 2.0 * (p.alpha - s);
    const double U_in = std::min(1e4, 60.0 / rate_in + 10.0);
    const double U_out = std::min(1e4, 60.0 / rate_out + 10.0);
    const auto integrand = [&](double t) {
        const double r = p.mu * std::exp(t);
        const double v = profile_value(p, r);
        return v * v * std::pow(r, static_cast<double>(N));
    };
    const double inner = quad::adaptive(integrand, -U_in, 0.0, 1e-8);
    const double outer = quad::adaptive(integrand, 0.0, U_out, 1e-8);
    return sphere_area(N) * (inner + outer);
}

EnvelopeReport envelope_check(const RadialProfile& p, const std::vector<double>& samples) {
    if (samples.empty())
        throw std::invalid_argument("envelope_check requires at least one sample");
    EnvelopeReport report;
    report.margins.reserve(samples.size());
    for (double r : samples) {
        const double ratio = profile_value(p, r) / envelope_value(p, r);
        report.margins.emplace_back(r, ratio);
        if (!(ratio >= p.envelope.first * (1.0 - 1e-12)) ||
            !(ratio <= p.envelope.second * (1.0 + 1e-12)))
            report.pass = false;
    }
    return report;
}

}  // namespace fhardy
