// Acceptance gate: one numbered criterion per invocation, selected by
// argv[1]. Each sub-check prints a PASS/FAIL line with the measured and
// required values; the process exits nonzero when any sub-check fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fhardy/report.hpp"

using namespace fhardy;

namespace {

bool g_all_passed = true;

void check(bool ok, const std::string& what) {
    std::cout << (ok ? "PASS  " : "FAIL  ") << what << "\n";
    if (!ok) g_all_passed = false;
}

std::string num(double v) { return format_double(v); }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Configuration make_config(int N, double s, std::vector<double> masses,
                          std::vector<std::vector<double>> poles) {
    Configuration config;
    config.params = ProblemParams{N, s};
    config.masses = std::move(masses);
    config.poles = std::move(poles);
    return config;
}

/// The worked three-pole arrangement: a negative mass far out on the
/// axis, equal positive masses at distance `mid` and at the origin.
Configuration three_pole(double far, double mid) {
    const double h = hardy_constant(ProblemParams{3, 0.5});
    return make_config(3, 0.5, {-0.3 * h, 0.3 * h, 0.3 * h},
                       {{far, 0, 0}, {mid, 0, 0}, {0, 0, 0}});
}

const RuleResult* find_rule(const Verdict& verdict, const std::string& id) {
    for (const auto& rule : verdict.rules)
        if (rule.id == id) return &rule;
    return nullptr;
}

std::vector<double> sweep_mus() {
    std::vector<double> mus;
    for (int i = 0; i < 8; ++i)
        mus.push_back(1e-3 * std::pow(100.0, i / 7.0));
    return mus;
}

GridFunction gaussian_on(const Grid1D& grid, double width) {
    GridFunction u(grid);
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double x = grid.x[i] / width;
        u.values[i] = std::pow(width, -0.25) * std::exp(-0.5 * x * x);
    }
    return u;
}

// ------------------------------------------------------------------ 1

void criterion_roundtrip() {
    const ProblemParams params{3, 0.5};
    const double h = hardy_constant(params);
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double lam = 1e-3 * h * std::pow(0.999 / 1e-3, i / 19.0);
        const double alpha = alpha_of_lambda(lam, params);
        const double residual = std::abs(lambda_of_alpha(alpha, params) - lam);
        worst = std::max(worst, residual / (1e-10 * std::max(1.0, lam)));
    }
    const double secs = seconds_since(t0);
    check(worst <= 1.0, "20-point spectral round-trip: worst residual is " +
                            num(worst) + "x the 1e-10*max(1,lambda) budget");
    check(secs < 1.0, "round-trip runtime " + num(secs) + " s, required < 1 s");
}

// ------------------------------------------------------------------ 2

void criterion_constants() {
    const ProblemParams params{3, 0.5};
    const double k = kappa(0.5);
    check(std::abs(k - 1.0) <= 1e-12,
          "kappa(0.5) = " + num(k) + ", required 1 within 1e-12");
    const double h = hardy_constant(params);
    const double ref = 2.0 / 3.14159265358979323846;
    check(std::abs(h - ref) <= 1e-12,
          "hardy constant(3, 0.5) = " + num(h) + ", required 2/pi within 1e-12");
    const double endpoint = lambda_of_alpha(1.0, params);
    check(endpoint == 0.0, "spectral map at the endpoint exponent = " +
                               num(endpoint) + ", required exactly 0");
}

// ------------------------------------------------------------------ 3

void criterion_classifier() {
    const double h = hardy_constant(ProblemParams{3, 0.5});

    const Verdict base = classify(three_pole(2.0, 1.0));
    check(base.outcome == Outcome::ExistsMinimizer,
          "three-pole arrangement -> " + to_string(base.outcome) +
              ", required ExistsMinimizer");

    const Verdict swapped = classify(three_pole(1.0, 2.0));
    check(swapped.outcome == Outcome::Indeterminate,
          "swapped distances -> " + to_string(swapped.outcome) +
              ", required Indeterminate");
    const RuleResult* rule = find_rule(swapped, "existence-dominant-pole");
    check(rule != nullptr && !rule->fired,
          "swapped distances report the dominant-pole existence rule as not fired");

    const Verdict heavy = classify(
        make_config(3, 0.5, {0.6 * h, 0.6 * h}, {{0, 0, 0}, {1, 0, 0}}));
    check(heavy.outcome == Outcome::NoSolutions,
          "masses (0.6h, 0.6h) -> " + to_string(heavy.outcome) +
              ", required NoSolutions");

    const Verdict small = classify(
        make_config(3, 0.5, {0.3 * h, 0.3 * h}, {{0, 0, 0}, {1, 0, 0}}));
    check(small.outcome == Outcome::NotAchieved,
          "masses (0.3h, 0.3h) -> " + to_string(small.outcome) +
              ", required NotAchieved");

    std::mt19937 rng(20260814u);
    std::uniform_real_distribution<double> mass(-2.0 * h, 2.0 * h);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    int fired_count = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Configuration config = make_config(
            3, 0.5, {mass(rng), mass(rng)},
            {{coord(rng), coord(rng), coord(rng)},
             {coord(rng), coord(rng), coord(rng)}});
        const RuleResult* existence =
            find_rule(classify(config), "existence-dominant-pole");
        if (existence != nullptr && existence->fired) ++fired_count;
    }
    check(fired_count == 0,
          "dominant-pole existence rule fired on " + std::to_string(fired_count) +
              " of 1000 random two-pole draws, required 0");
}

// ------------------------------------------------------------------ 4

void criterion_theta_scaling() {
    const ProblemParams params{3, 0.5};
    const auto t0 = Clock::now();
    const double t1 = theta_integral(0.25, params, 1.0);
    const double t2 = theta_integral(0.25, params, 2.0);
    const double secs = seconds_since(t0);
    const double rel = std::abs(t2 * std::pow(2.0, 0.5) - t1) / t1;
    check(rel <= 1e-3, "pure-power interaction scaling deviation " + num(rel) +
                           ", required <= 1e-3");
    check(secs < 10.0, "runtime " + num(secs) + " s, required < 10 s");
}

// ------------------------------------------------------------------ 5

void criterion_rate_regimes() {
    const ProblemParams params{3, 0.5};
    const std::vector<double> mus = sweep_mus();
    const auto t0 = Clock::now();

    const RateFit slow =
        rate_sweep(make_profile(params, lambda_of_alpha(0.2, params)), 1.0, mus);
    check(std::abs(slow.slope - 0.4) <= 0.05,
          "slow-decay regime slope " + num(slow.slope) +
              ", required within 0.05 of 0.4");

    const RateFit fast =
        rate_sweep(make_profile(params, lambda_of_alpha(0.9, params)), 1.0, mus);
    check(std::abs(fast.slope - 1.0) <= 0.05,
          "fast-decay regime slope " + num(fast.slope) +
              ", required within 0.05 of 1.0");

    const RateFit boundary =
        rate_sweep(make_profile(params, lambda_of_alpha(0.5, params)), 1.0, mus);
    check(boundary.log_corrected,
          std::string("boundary regime selects the log-corrected model: ") +
              (boundary.log_corrected ? "yes" : "no"));
    const double sigma2 = 4.0 * 3.14159265358979323846;
    const double rel = std::abs(boundary.constant - sigma2) / sigma2;
    check(rel <= 0.2, "boundary log coefficient " + num(boundary.constant) +
                          " vs 4*pi, deviation " + num(rel) + ", required <= 0.2");

    const double secs = seconds_since(t0);
    check(secs < 120.0, "runtime " + num(secs) + " s, required < 120 s");
}

// ------------------------------------------------------------------ 6

void criterion_seminorm_oracle() {
    const Grid1D grid = Grid1D::make(30.0, 0.02, 0.25);
    GridFunction u(grid);
    for (std::size_t i = 0; i < grid.n(); ++i)
        u.values[i] = std::exp(-0.5 * grid.x[i] * grid.x[i]);
    const auto t0 = Clock::now();
    const double sn = seminorm_sq(u);
    const double secs = seconds_since(t0);
    const double oracle = std::tgamma(0.75);  // Fourier-side value of the integral
    const double rel = std::abs(sn - oracle) / oracle;
    check(rel <= 0.02, "Gaussian seminorm " + num(sn) + " vs oracle " + num(oracle) +
                           ", deviation " + num(rel) + ", required <= 0.02");
    check(secs < 30.0, "runtime " + num(secs) + " s, required < 30 s");
}

// ------------------------------------------------------------------ 7

void criterion_dilation() {
    const Grid1D base = Grid1D::make(30.0, 0.02, 0.25);
    const double sn_base = seminorm_sq(gaussian_on(base, 1.0));
    for (double rho : {0.5, 2.0}) {
        const Grid1D grid = Grid1D::make(30.0 * rho, 0.02 * rho, 0.25);
        const double sn = seminorm_sq(gaussian_on(grid, rho));
        const double rel = std::abs(sn - sn_base) / sn_base;
        check(rel <= 0.01, "dilation rho = " + num(rho) + ": seminorm " + num(sn) +
                               " vs " + num(sn_base) + ", deviation " + num(rel) +
                               ", required <= 0.01");
    }
}

// ------------------------------------------------------------------ 8

void criterion_certificates() {
    const Grid1D grid = Grid1D::make(100.0, 0.05, 0.25);
    const double h = hardy_constant(ProblemParams{1, 0.25});

    const auto heavy =
        negativity_certificate(make_config(1, 0.25, {1.5 * h}, {{0.0}}), grid, 4);
    check(heavy.has_value() && heavy->q_value < 0.0,
          heavy.has_value()
              ? "single mass 1.5h: certificate at scale " + num(heavy->rho) +
                    " with form value " + num(heavy->q_value) + ", required < 0"
              : "single mass 1.5h: no certificate found, required one");

    const auto merged = negativity_certificate(
        make_config(1, 0.25, {0.6 * h, 0.6 * h}, {{-0.5}, {0.5}}), grid, 4);
    check(merged.has_value() && merged->q_value < 0.0,
          merged.has_value()
              ? "pair (0.6h, 0.6h): certificate at scale " + num(merged->rho) +
                    " with form value " + num(merged->q_value) + ", required < 0"
              : "pair (0.6h, 0.6h): no certificate found on the merged-pole "
                "branch, required one");

    const auto light =
        negativity_certificate(make_config(1, 0.25, {0.3 * h}, {{0.0}}), grid, 4);
    check(!light.has_value(),
          light.has_value()
              ? "single mass 0.3h: unexpected certificate at scale " +
                    num(light->rho) + ", required none"
              : "single mass 0.3h: no certificate over the full ladder, as required");
}

// ------------------------------------------------------------------ 9

void criterion_quotient_ordering() {
    const Grid1D grid = Grid1D::make(30.0, 0.02, 0.25);
    const double h = hardy_constant(ProblemParams{1, 0.25});
    const Configuration single = make_config(1, 0.25, {0.5 * h}, {{0.0}});
    const Configuration pair =
        make_config(1, 0.25, {0.5 * h, 0.05 * h}, {{0.0}, {1.0}});

    const DescentResult rs = estimate_S(single, grid, 3000, 1e-10, 4);
    const DescentResult rp = estimate_S(pair, grid, 3000, 1e-10, 4);
    check(rs.converged && rp.converged,
          std::string("both critical-quotient descents converged: ") +
              (rs.converged && rp.converged ? "yes" : "no"));
    check(rp.value < rs.value - 3e-10,
          "two-pole quotient " + num(rp.value) + " < single-pole " + num(rs.value) +
              " - 3e-10");

    const std::vector<double> mus = sweep_mus();
    const std::vector<double> bound = interaction_upper_bound(pair, 1, mus, rs.value);
    bool below = true, decreasing = true;
    for (std::size_t i = 0; i < bound.size(); ++i) {
        if (!(bound[i] < rs.value)) below = false;
        if (i > 0 && !(bound[i] < bound[i - 1])) decreasing = false;
    }
    check(below, "interaction bound stays below the single-pole quotient at all " +
                     std::to_string(bound.size()) + " scales (closest gap " +
                     num(rs.value - bound.front()) + ")");
    check(decreasing,
          "interaction bound decreases as the profile scale grows: from " +
              num(bound.front()) + " down to " + num(bound.back()));
}

// ----------------------------------------------------------------- 10

void criterion_bubble_bound() {
    const Grid1D grid = Grid1D::make(30.0, 0.02, 0.25);
    const Configuration config = make_config(1, 0.25, {0.0}, {{0.3}});
    GridFunction bubble(grid);
    for (std::size_t i = 0; i < grid.n(); ++i)
        bubble.values[i] = std::pow(1.0 + grid.x[i] * grid.x[i], -0.25);
    const double ref = q_form(bubble, config).s_quotient;

    const DescentResult res = estimate_S(config, grid, 3000, 1e-10, 4);
    check(res.converged, std::string("descent converged: ") +
                             (res.converged ? "yes" : "no"));
    check(res.value <= ref * (1.0 + 1e-3),
          "estimated quotient " + num(res.value) +
              " <= bubble quotient " + num(ref) + " * (1 + 1e-3)");
}

// ----------------------------------------------------------------- 11

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(FHARDY_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "fhardy_acceptance";
    std::filesystem::create_directories(dir);

    const double h = hardy_constant(ProblemParams{3, 0.5});
    json classify_cfg;
    classify_cfg["schema"] = 1;
    classify_cfg["N"] = 3;
    classify_cfg["s"] = 0.5;
    classify_cfg["masses"] = {-0.3 * h, 0.3 * h, 0.3 * h};
    classify_cfg["poles"] = {{2.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}};

    json minimize_cfg;
    minimize_cfg["schema"] = 1;
    minimize_cfg["N"] = 1;
    minimize_cfg["s"] = 0.25;
    minimize_cfg["masses"] = {0.01};
    minimize_cfg["poles"] = {{0.3}};
    minimize_cfg["solver"] = {{"L", 5.0}, {"h", 0.1}, {"objective", "mu"}};

    const struct {
        const char* name;
        const char* command;
        const json* cfg;
    } cases[] = {{"classify", "classify", &classify_cfg},
                 {"minimize", "minimize", &minimize_cfg}};

    for (const auto& c : cases) {
        const auto cfg_path = dir / (std::string(c.name) + "_cfg.json");
        std::ofstream(cfg_path, std::ios::binary) << c.cfg->dump(2);
        const auto out1 = dir / (std::string(c.name) + "_run1.json");
        const auto out2 = dir / (std::string(c.name) + "_run2.json");
        const std::string base = std::string(c.command) + " --config " +
                                 cfg_path.string() + " --threads 1 --seed 42 --out ";
        const int rc1 = run_cli(base + out1.string());
        const int rc2 = run_cli(base + out2.string());
        check(rc1 == 0 && rc2 == 0,
              std::string(c.name) + " runs exited 0 (got " + std::to_string(rc1) +
                  ", " + std::to_string(rc2) + ")");
        const std::string b1 = slurp(out1), b2 = slurp(out2);
        check(!b1.empty() && b1 == b2,
              std::string(c.name) + " outputs byte-identical (" +
                  std::to_string(b1.size()) + " bytes)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: fhardy_acceptance <criterion 1..11>\n";
        return 2;
    }
    const int criterion = std::atoi(argv[1]);
    std::cout << "== acceptance criterion " << criterion << " ==\n";
    switch (criterion) {
        case 1: criterion_roundtrip(); break;
        case 2: criterion_constants(); break;
        case 3: criterion_classifier(); break;
        case 4: criterion_theta_scaling(); break;
        case 5: criterion_rate_regimes(); break;
        case 6: criterion_seminorm_oracle(); break;
        case 7: criterion_dilation(); break;
        case 8: criterion_certificates(); break;
        case 9: criterion_quotient_ordering(); break;
        case 10: criterion_bubble_bound(); break;
        case 11: criterion_determinism(); break;
        default:
            std::cerr << "usage: fhardy_acceptance <criterion 1..11>\n";
            return 2;
    }
    return g_all_passed ? 0 : 1;
}
