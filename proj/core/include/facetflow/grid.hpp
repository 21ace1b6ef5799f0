#pragma once

#include <functional>
#include <vector>

#include "facetflow/errors.hpp"

namespace facetflow {

/// Uniform grid on the unit torus [0,1): node i sits at x_i = i/n.
/// Index arithmetic is cyclic; spacing * n == 1.
struct TorusGrid {
    explicit TorusGrid(int n_points);

    int n = 0;

    double spacing() const { return 1.0 / n; }
    double coord(int i) const { return spacing() * wrap(i); }

    int wrap(int i) const {
        int r = i % n;
        return r < 0 ? r + n : r;
    }

    friend bool operator==(const TorusGrid&, const TorusGrid&) = default;
};

/// Cyclic distance from coordinate a forward to coordinate b, in (0, 1].
double cyclic_gap(double a, double b);

/// Wrap a coordinate into [0, 1).
double wrap_coord(double x);

/// Periodic samples of a scalar field (u or kappa) on a TorusGrid.
struct GridFunction {
    GridFunction(TorusGrid g, std::vector<double> v);

    static GridFunction zeros(TorusGrid g);
    static GridFunction constant(TorusGrid g, double c);
    static GridFunction sample(TorusGrid g, const std::function<double(double)>& f);

    TorusGrid grid;
    std::vector<double> values;

    int size() const { return grid.n; }
    double operator[](int i) const { return values[grid.wrap(i)]; }
    double& at(int i) { return values[grid.wrap(i)]; }
};

/// Positive facet coefficient.
struct Alpha {
    explicit Alpha(double a);
    double value;
};

/// Forward difference (f_{i+1} - f_i)/h; entry i lives on the staggered
/// midpoint x_{i+1/2}. Annihilates constants exactly.
GridFunction forward_diff(const GridFunction& f);

/// Standard periodic 3-point stencil (f_{i-1} - 2 f_i + f_{i+1})/h^2.
GridFunction laplacian(const GridFunction& f);

/// Discrete energy sum_i h * [ d_i^2 / 2 + (alpha/2) |d_i| ] with d = forward_diff(f).
double energy(const GridFunction& f, Alpha alpha);

struct Norms {
    double l2 = 0;
    double linf = 0;
    double tv = 0;
    double mean = 0;
};

/// Riemann-sum (h-weighted) norms so continuum constants carry over.
Norms norms(const GridFunction& f);

double mean(const GridFunction& f);

/// h-weighted l2 distance between two grid functions on the same grid.
double dist_l2(const GridFunction& a, const GridFunction& b);
double dist_linf(const GridFunction& a, const GridFunction& b);

}  // namespace facetflow
