#include "facetflow/grid.hpp"

#include <cmath>

namespace facetflow {

TorusGrid::TorusGrid(int n_points) : n(n_points) {
    if (n_points < 4) {
        throw ValidationError("TorusGrid requires n_points >= 4, got " +
                              std::to_string(n_points));
    }
}

double wrap_coord(double x) {
    double r = x - std::floor(x);
    return r == 1.0 ? 0.0 : r;
}

double cyclic_gap(double a, double b) {
    double g = wrap_coord(b - a);
    return g == 0.0 ? 1.0 : g;
}

GridFunction::GridFunction(TorusGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n) {
        throw ValidationError("GridFunction: expected " + std::to_string(grid.n) +
                              " values, got " + std::to_string(values.size()));
    }
    for (double x : values) {
        if (!std::isfinite(x)) {
            throw ValidationError("GridFunction: non-finite value");
        }
    }
}

GridFunction GridFunction::zeros(TorusGrid g) {
    return GridFunction(g, std::vector<double>(g.n, 0.0));
}

GridFunction GridFunction::constant(TorusGrid g, double c) {
    return GridFunction(g, std::vector<double>(g.n, c));
}

GridFunction GridFunction::sample(TorusGrid g, const std::function<double(double)>& f) {
    std::vector<double> v(g.n);
    for (int i = 0; i < g.n; ++i) v[i] = f(g.coord(i));
    return GridFunction(g, std::move(v));
}

Alpha::Alpha(double a) : value(a) {
    if (!(a > 0) || !std::isfinite(a)) {
        throw ValidationError("alpha > 0 required, got " + std::to_string(a));
    }
}

GridFunction forward_diff(const GridFunction& f) {
    const int n = f.grid.n;
    const double h = f.grid.spacing();
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        d[i] = (f.values[(i + 1) % n] - f.values[i]) / h;
    }
    return GridFunction(f.grid, std::move(d));
}

GridFunction laplacian(const GridFunction& f) {
    const int n = f.grid.n;
    const double h2 = f.grid.spacing() * f.grid.spacing();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double fm = f.values[(i + n - 1) % n];
        const double fp = f.values[(i + 1) % n];
        out[i] = (fm - 2.0 * f.values[i] + fp) / h2;
    }
    return GridFunction(f.grid, std::move(out));
}

double energy(const GridFunction& f, Alpha alpha) {
    const double h = f.grid.spacing();
    const GridFunction d = forward_diff(f);
    double e = 0;
    for (double di : d.values) {
        e += h * (0.5 * di * di + 0.5 * alpha.value * std::abs(di));
    }
    return e;
}

Norms norms(const GridFunction& f) {
    const double h = f.grid.spacing();
    Norms out;
    double sq = 0;
    for (double v : f.values) {
        sq += h * v * v;
        out.linf = std::max(out.linf, std::abs(v));
        out.mean += h * v;
    }
    out.l2 = std::sqrt(sq);
    const GridFunction d = forward_diff(f);
    for (double di : d.values) out.tv += h * std::abs(di);
    return out;
}

double mean(const GridFunction& f) {
    double m = 0;
    const double h = f.grid.spacing();
    for (double v : f.values) m += h * v;
    return m;
}

double dist_l2(const GridFunction& a, const GridFunction& b) {
    const double h = a.grid.spacing();
    double sq = 0;
    for (int i = 0; i < a.grid.n; ++i) {
        const double e = a.values[i] - b.values[i];
        sq += h * e * e;
    }
    return std::sqrt(sq);
}

double dist_linf(const GridFunction& a, const GridFunction& b) {
    double m = 0;
    for (int i = 0; i < a.grid.n; ++i) {
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    }
    return m;
}

}  // namespace facetflow
