#pragma once

#include <vector>

#include "fhardy/classifier.hpp"
#include "fhardy/grid.hpp"

namespace fhardy {

/// Evaluated quadratic-form pieces for a grid function, with the exact
/// bookkeeping identity q_value = seminorm_sq - sum_i lambda_i hardy_terms[i].
struct QuadraticFormReport {
    double seminorm_sq = 0.0;
    std::vector<double> hardy_terms;
    double q_value = 0.0;
    double l2_sq = 0.0;
    double crit_norm = 0.0;
    double mu_quotient = 0.0;
    double s_quotient = 0.0;
};

/// Squared fractional seminorm of the zero-extended grid function:
/// far lattice sum over node pairs at distance >= 2h, an exact local
/// integral of the kernel against the piecewise-linear interpolant for
/// adjacent and same-cell pairs, and a closed-form tail for the
/// interaction with the zero extension beyond (-L, L).
double seminorm_sq(const GridFunction& u);

/// Hardy potential integral sum_i u_i^2 W_i h where W_i is the exact
/// cell average of |x - pole|^{-2s} over cell i.
double hardy_term(const GridFunction& u, double pole);

/// Exact per-node cell averages of |x - pole|^{-2s}.
std::vector<double> hardy_weights(const Grid1D& grid, double pole);

/// Discrete L^{2*} norm with 2* = 2/(1-2s) (the N = 1 critical exponent).
double crit_norm(const GridFunction& u);

/// Scalar pole positions of a one-dimensional configuration.
std::vector<double> scalar_poles(const Configuration& config);

/// Assembles the full report for a configuration (N = 1).
QuadraticFormReport q_form(const GridFunction& u, const Configuration& config);

/// Precomputed form operator shared by the estimators: coefficients of
/// the seminorm quadratic form and the combined Hardy weight diagonal.
class FormOperator {
public:
    FormOperator(const Grid1D& grid, const std::vector<double>& masses,
                 const std::vector<double>& poles, int threads = 1);

    double seminorm(const std::vector<double>& u) const;
    /// y = S u where seminorm(u) = u . (S u).
    void seminorm_apply(const std::vector<double>& u, std::vector<double>& y) const;
    double potential(const std::vector<double>& u) const;
    double q(const std::vector<double>& u) const;
    const std::vector<double>& potential_diag() const { return pot_diag_; }
    const Grid1D& grid() const { return grid_; }
    int threads() const { return threads_; }

private:
    Grid1D grid_;
    int threads_;
    double form_c_;
    std::vector<double> far_coeff_;   // class coefficients, distance d = 2.. (n-1)
    std::vector<double> far_diag_;    // position-dependent diagonal of the far sum
    std::vector<double> near_w_;      // adjacent-interval weights (n-1)
    std::vector<double> tail_;        // zero-extension tail diagonal
    std::vector<double> pot_diag_;    // sum_k lambda_k W_k(x_i) h
};

}  // namespace fhardy
