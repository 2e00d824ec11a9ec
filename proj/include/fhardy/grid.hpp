#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fhardy {

/// Uniform one-dimensional grid on (-L, L) with nodes
/// x_i = -L + offset + i h, i = 0..n-1 (nodes at or beyond L are
/// dropped). The default offset h/2 keeps integer and half-integer
/// pole positions away from the nodes. Carries the fractional order s
/// of the quadratic forms assembled on it (requires s < 1/2 so the
/// one-dimensional Hardy kernel is cell-integrable).
struct Grid1D {
    double L = 0.0;
    double h = 0.0;
    double offset = 0.0;
    double s = 0.25;
    std::vector<double> x;

    static Grid1D make(double L, double h, double s, double offset = -1.0) {
        if (!(L > 0.0) || !(h > 0.0) || h >= L)
            throw std::invalid_argument("grid requires 0 < h < L");
        if (!(s > 0.0) || !(s < 0.5))
            throw std::invalid_argument("grid forms require s in (0, 1/2)");
        Grid1D g;
        g.L = L;
        g.h = h;
        g.s = s;
        g.offset = (offset < 0.0) ? h / 2.0 : offset;
        if (g.offset >= h)
            throw std::invalid_argument("grid offset must lie in [0, h)");
        const int count = static_cast<int>(std::floor((2.0 * L - g.offset) / h)) + 1;
        g.x.reserve(count);
        for (int i = 0; i < count; ++i) {
            const double xi = -L + g.offset + h * i;
            if (xi < L - 1e-12) g.x.push_back(xi);
        }
        return g;
    }

    std::size_t n() const { return x.size(); }

    /// Poles must stay clear of the nodes (distance >= h/4) so the
    /// potential is never sampled at its singularity.
    void require_pole_off_nodes(double pole) const {
        if (std::abs(pole) >= L)
            throw std::invalid_argument("pole must lie inside (-L, L)");
        const double rel = (pole - (-L + offset)) / h;
        const double frac = std::abs(rel - std::round(rel));
        if (frac * h < h / 4.0)
            throw std::invalid_argument("pole lies too close to a grid node (< h/4)");
    }
};

/// Nodal values on a Grid1D, implicitly extended by zero outside (-L, L).
struct GridFunction {
    Grid1D grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(Grid1D g) : grid(std::move(g)), values(grid.n(), 0.0) {}
    GridFunction(Grid1D g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
        if (values.size() != grid.n())
            throw std::invalid_argument("value count does not match grid");
    }
};

}  // namespace fhardy
