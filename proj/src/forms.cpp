#include "fhardy/forms.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace fhardy {

namespace {

// Exact integrals of the kernel |x-y|^{-1-2s} against the piecewise
// linear hat-function differences over adjacent and coincident cells,
// expressed per unit difference (u_{j+1}-u_j)^2 and scaled by h^{1-2s}.
double adjacent_weight(double s) {
    return (std::pow(2.0, 3.0 - 2.0 * s) - 2.0) / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));
}

double cell_weight(double s) {
    return 2.0 / ((2.0 - 2.0 * s) * (3.0 - 2.0 * s));
}

double form_c(double s) {
    const ProblemParams params{1, s};
    return form_constant(params);
}

double antiderivative(double t, double s) {
    // integral of |t|^{-2s}: sign(t) |t|^{1-2s} / (1-2s)
    const double v = std::pow(std::abs(t), 1.0 - 2.0 * s) / (1.0 - 2.0 * s);
    return t < 0.0 ? -v : v;
}

void check_dim(const Configuration& config) {
    if (config.params.N != 1)
        throw std::invalid_argument("grid forms are one-dimensional (N = 1)");
}

}  // namespace

std::vector<double> hardy_weights(const Grid1D& grid, double pole) {
    grid.require_pole_off_nodes(pole);
    const double s = grid.s, h = grid.h;
    std::vector<double> w(grid.n());
    for (std::size_t i = 0; i < grid.n(); ++i) {
        w[i] = (antiderivative(grid.x[i] + h / 2.0 - pole, s) -
                antiderivative(grid.x[i] - h / 2.0 - pole, s)) / h;
    }
    return w;
}

double seminorm_sq(const GridFunction& u) {
    FormOperator op(u.grid, {}, {});
    return op.seminorm(u.values);
}

double hardy_term(const GridFunction& u, double pole) {
    const auto w = hardy_weights(u.grid, pole);
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        sum += u.values[i] * u.values[i] * w[i];
    return sum * u.grid.h;
}

double crit_norm(const GridFunction& u) {
    const double p = 2.0 / (1.0 - 2.0 * u.grid.s);
    double sum = 0.0;
    for (double v : u.values)
        sum += std::pow(std::abs(v), p);
    return std::pow(sum * u.grid.h, 1.0 / p);
}

std::vector<double> scalar_poles(const Configuration& config) {
    check_dim(config);
    std::vector<double> poles;
    poles.reserve(config.poles.size());
    for (const auto& pole : config.poles)
        poles.push_back(pole.at(0));
    return poles;
}

QuadraticFormReport q_form(const GridFunction& u, const Configuration& config) {
    check_dim(config);
    QuadraticFormReport report;
    report.seminorm_sq = seminorm_sq(u);
    const auto poles = scalar_poles(config);
    report.q_value = report.seminorm_sq;
    for (std::size_t k = 0; k < poles.size(); ++k) {
        const double term = hardy_term(u, poles[k]);
        report.hardy_terms.push_back(term);
        report.q_value -= config.masses[k] * term;
    }
    double l2 = 0.0;
    for (double v : u.values) l2 += v * v;
    report.l2_sq = l2 * u.grid.h;
    report.crit_norm = crit_norm(u);
    report.mu_quotient = report.seminorm_sq > 0.0 ? report.q_value / report.seminorm_sq : 0.0;
    report.s_quotient = report.crit_norm > 0.0
        ? report.q_value / (report.crit_norm * report.crit_norm) : 0.0;
    return report;
}

FormOperator::FormOperator(const Grid1D& grid, const std::vector<double>& masses,
                           const std::vector<double>& poles, int threads)
    : grid_(grid), threads_(std::max(1, threads)), form_c_(form_c(grid.s)) {
    if (masses.size() != poles.size())
        throw std::invalid_argument("masses and poles must have equal length");
    const std::size_t n = grid_.n();
    const double s = grid_.s, h = grid_.h, L = grid_.L;

    far_coeff_.assign(n, 0.0);  // index by distance class d; d = 0,1 unused
    for (std::size_t d = 2; d < n; ++d)
        far_coeff_[d] = 2.0 * h * h * std::pow(d * h, -1.0 - 2.0 * s);

    // prefix sums give the position-dependent diagonal of the far sum
    std::vector<double> prefix(n, 0.0);
    for (std::size_t d = 2; d < n; ++d)
        prefix[d] = prefix[d - 1] + far_coeff_[d];
    far_diag_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        far_diag_[i] = prefix[std::min(n - 1 - i, n - 1)] + prefix[std::min(i, n - 1)];

    near_w_.assign(n > 0 ? n - 1 : 0, 0.0);
    const double wa = adjacent_weight(s), wc = cell_weight(s);
    const double hs = std::pow(h, 1.0 - 2.0 * s);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        double w = 2.0 * wa + wc;
        if (j == 0) w += 0.5 * wc;
        if (j + 2 == n) w += 0.5 * wc;
        near_w_[j] = hs * w;
    }

    tail_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = grid_.x[i];
        tail_[i] = 2.0 * h *
            (std::pow(L - xi, -2.0 * s) + std::pow(L + xi, -2.0 * s)) / (2.0 * s);
    }

    pot_diag_.assign(n, 0.0);
    for (std::size_t k = 0; k < poles.size(); ++k) {
        const auto w = hardy_weights(grid_, poles[k]);
        for (std::size_t i = 0; i < n; ++i)
            pot_diag_[i] += masses[k] * w[i] * h;
    }
}

double FormOperator::seminorm(const std::vector<double>& u) const {
    const std::size_t n = u.size();
    auto far_range = [&](std::size_t d0, std::size_t d1) {
        double sum = 0.0;
        for (std::size_t d = d0; d < d1; ++d) {
            double cls = 0.0;
            for (std::size_t i = 0; i + d < n; ++i) {
                const double du = u[i + d] - u[i];
                cls += du * du;
            }
            sum += far_coeff_[d] * cls;
        }
        return sum;
    };

    double far = 0.0;
    if (threads_ > 1 && n > 512) {
        // contiguous class ranges per worker, reduced in fixed order
        const int T = threads_;
        std::vector<double> partial(T, 0.0);
        std::vector<std::thread> pool;
        const std::size_t span = (n - 2 + T) / T;
        for (int t = 0; t < T; ++t) {
            const std::size_t d0 = 2 + t * span;
            const std::size_t d1 = std::min(n, d0 + span);
            if (d0 >= d1) break;
            pool.emplace_back([&, t, d0, d1] { partial[t] = far_range(d0, d1); });
        }
        for (auto& th : pool) th.join();
        for (double p : partial) far += p;
    } else {
        far = far_range(2, n);
    }

    double near = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double du = u[j + 1] - u[j];
        near += near_w_[j] * du * du;
    }
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        tail += tail_[i] * u[i] * u[i];
    return 0.5 * form_c_ * (far + near + tail);
}

void FormOperator::seminorm_apply(const std::vector<double>& u, std::vector<double>& y) const {
    const std::size_t n = u.size();
    y.assign(n, 0.0);
    auto rows = [&](std::size_t i0, std::size_t i1) {
        for (std::size_t i = i0; i < i1; ++i) {
            double conv = 0.0;
            const std::size_t dmax = std::max(i, n - 1 - i);
            for (std::size_t d = 2; d <= dmax; ++d) {
                double nb = 0.0;
                if (i + d < n) nb += u[i + d];
                if (i >= d) nb += u[i - d];
                conv += far_coeff_[d] * nb;
            }
            double g = far_diag_[i] * u[i] - conv;
            if (i + 1 < n) g -= near_w_[i] * (u[i + 1] - u[i]);
            if (i >= 1) g += near_w_[i - 1] * (u[i] - u[i - 1]);
            g += tail_[i] * u[i];
            y[i] = 0.5 * form_c_ * g;
        }
    };
    if (threads_ > 1 && n > 512) {
        const int T = threads_;
        std::vector<std::thread> pool;
        const std::size_t span = (n + T - 1) / T;
        for (int t = 0; t < T; ++t) {
            const std::size_t i0 = t * span;
            const std::size_t i1 = std::min(n, i0 + span);
            if (i0 >= i1) break;
            pool.emplace_back([&, i0, i1] { rows(i0, i1); });
        }
        for (auto& th : pool) th.join();
    } else {
        rows(0, n);
    }
}

double FormOperator::potential(const std::vector<double>& u) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        sum += pot_diag_[i] * u[i] * u[i];
    return sum;
}

double FormOperator::q(const std::vector<double>& u) const {
    return seminorm(u) - potential(u);
}

}  // namespace fhardy
