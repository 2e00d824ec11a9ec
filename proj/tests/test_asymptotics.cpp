#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fhardy/asymptotics.hpp"

using namespace fhardy;

namespace {
const ProblemParams kP35{3, 0.5};
const ProblemParams kP14{1, 0.25};

std::vector<double> sweep_mus() {
    std::vector<double> mus;
    for (int i = 0; i < 8; ++i)
        mus.push_back(1e-3 * std::pow(100.0, i / 7.0));
    return mus;
}
}  // namespace

TEST_CASE("angular mean closed form on the line") {
    for (double r : {0.2, 1.0, 3.0}) {
        for (double rho : {0.5, 1.0, 2.5}) {
            if (r == rho) continue;
            const double expected = 0.5 * (std::pow(std::abs(r - rho), -0.5) +
                                           std::pow(r + rho, -0.5));
            CHECK(angular_mean(r, rho, kP14) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("angular mean symmetry and homogeneity") {
    for (int N : {1, 2, 3, 4, 5}) {
        const ProblemParams p{N, 0.25};
        CHECK(angular_mean(0.7, 1.9, p) ==
              doctest::Approx(angular_mean(1.9, 0.7, p)).epsilon(1e-12));
        // kernel degree -2s under joint dilation
        const double c = 3.0;
        CHECK(angular_mean(c * 0.7, c * 1.9, p) ==
              doctest::Approx(std::pow(c, -0.5) * angular_mean(0.7, 1.9, p))
                  .epsilon(1e-12));
    }
}

TEST_CASE("angular mean approaches the pure kernel away from the sphere") {
    for (int N : {1, 2, 3, 4}) {
        const ProblemParams p{N, 0.3};
        CHECK(angular_mean(1e-9, 2.0, p) ==
              doctest::Approx(std::pow(2.0, -0.6)).epsilon(1e-6));
    }
}

TEST_CASE("pure-power interaction reference values") {
    // closed forms: 16 pi at alpha = 1/4 and 4 pi 25/6 at alpha = 1/5 (N = 3)
    CHECK(theta_integral(0.25, kP35, 1.0) ==
          doctest::Approx(16.0 * M_PI).epsilon(1e-3));
    CHECK(theta_integral(0.2, kP35, 1.0) ==
          doctest::Approx(4.0 * M_PI * 25.0 / 6.0).epsilon(1e-3));
    // one dimension: B(0.3,0.5) + B(0.2,0.5) + B(0.3,0.2) = 18.5715776...
    CHECK(theta_integral(0.1, kP14, 1.0) ==
          doctest::Approx(18.571577600784974).epsilon(1e-3));
}

TEST_CASE("pure-power interaction scales with the pole distance") {
    const double at_one = theta_integral(0.25, kP35, 1.0);
    const double at_two = theta_integral(0.25, kP35, 2.0);
    CHECK(at_two == doctest::Approx(std::pow(2.0, -0.5) * at_one).epsilon(1e-3));
}

TEST_CASE("pure-power interaction domain") {
    CHECK_THROWS_AS(theta_integral(0.0, kP35), std::domain_error);
    CHECK_THROWS_AS(theta_integral(-0.2, kP35), std::domain_error);
    CHECK_THROWS_AS(theta_integral(0.5, kP35), std::domain_error);  // alpha = s
    CHECK_THROWS_AS(theta_integral(0.7, kP35), std::domain_error);
}

TEST_CASE("interaction integral reference values in three dimensions") {
    const double h = hardy_constant(kP35);
    RadialProfile p = make_profile(kP35, 0.5 * h);
    CHECK(hardy_interaction(p, 1.0) ==
          doctest::Approx(6.3140212405095367).epsilon(5e-4));
    p.mu = 0.05;
    CHECK(hardy_interaction(p, 1.0) ==
          doctest::Approx(0.84425161396158696).epsilon(5e-4));

    RadialProfile fast = make_profile(kP35, lambda_of_alpha(0.9, kP35), 1.0, 0.02);
    CHECK(hardy_interaction(fast, 1.0) ==
          doctest::Approx(0.23982225363092069).epsilon(5e-4));
    CHECK(hardy_interaction(fast, 3.0) ==
          doctest::Approx(0.081427942125553486).epsilon(5e-4));
}

TEST_CASE("interaction integral reference values on the line") {
    const double h = hardy_constant(kP14);
    RadialProfile p = make_profile(kP14, 0.5 * h);
    CHECK(hardy_interaction(p, 1.0) ==
          doctest::Approx(8.4442031247127735).epsilon(5e-4));
    p.mu = 0.1;
    CHECK(hardy_interaction(p, 1.0) ==
          doctest::Approx(5.3605031528526339).epsilon(5e-4));
    CHECK(hardy_interaction(p, 2.0) ==
          doctest::Approx(4.4672068573905781).epsilon(5e-4));
}

TEST_CASE("interaction integral is invariant under joint dilation") {
    const double h = hardy_constant(kP35);
    const double base = hardy_interaction(make_profile(kP35, 0.5 * h, 1.0, 0.05), 1.0);
    for (double c : {2.0, 10.0}) {
        const double scaled =
            hardy_interaction(make_profile(kP35, 0.5 * h, 1.0, 0.05 * c), c);
        CHECK(scaled == doctest::Approx(base).epsilon(1e-3));
    }
}

TEST_CASE("interaction integral scales with the squared amplitude") {
    const double h = hardy_constant(kP35);
    const double base = hardy_interaction(make_profile(kP35, 0.5 * h), 1.0);
    const double doubled = hardy_interaction(make_profile(kP35, 0.5 * h, 2.0), 1.0);
    CHECK(doubled == doctest::Approx(4.0 * base).epsilon(1e-10));
}

TEST_CASE("interaction integral rejects a zero offset") {
    const RadialProfile p = make_profile(kP35, 0.3);
    CHECK_THROWS_AS(hardy_interaction(p, 0.0), std::domain_error);
    CHECK_THROWS_AS(hardy_interaction(p, -1.0), std::domain_error);
}

TEST_CASE("rate fit needs enough sweep points") {
    const RadialProfile p = make_profile(kP35, 0.3);
    CHECK_THROWS_AS(rate_sweep(p, 1.0, {0.1, 0.2, 0.3}), std::invalid_argument);
}

TEST_CASE("fast-decay profile follows the clean power law") {
    const RadialProfile p = make_profile(kP35, lambda_of_alpha(0.9, kP35));
    const RateFit fit = rate_sweep(p, 1.0, sweep_mus());
    CHECK_FALSE(fit.log_corrected);
    CHECK(fit.slope == doctest::Approx(0.97778169).epsilon(1e-3));
    CHECK(fit.r_squared > 0.999);
    CHECK(fit.n_points == 8);
    CHECK(fit.window.first == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(fit.window.second == doctest::Approx(1e-1).epsilon(1e-12));
}

TEST_CASE("boundary-rate profile selects the log-corrected model") {
    // alpha = s: the scale law picks up a |log mu| factor
    const RadialProfile p = make_profile(kP35, lambda_of_alpha(0.5, kP35));
    const RateFit fit = rate_sweep(p, 1.0, sweep_mus());
    CHECK(fit.log_corrected);
    CHECK(fit.slope == 1.0);  // pinned to 2s by the corrected model
    CHECK(fit.constant == doctest::Approx(12.343998).epsilon(5e-3));
}

TEST_CASE("slow-decay profile bends below its limit rate on desk windows") {
    // alpha = 0.2 < s: the limiting slope 2 alpha = 0.4 is approached only
    // far below this sweep window; the fitted slope on [1e-3, 1e-1] is
    // pinned here as a regression reference
    const RadialProfile p = make_profile(kP35, lambda_of_alpha(0.2, kP35));
    const RateFit fit = rate_sweep(p, 1.0, sweep_mus());
    CHECK_FALSE(fit.log_corrected);
    CHECK(fit.slope == doctest::Approx(0.30643231).epsilon(1e-3));
}
