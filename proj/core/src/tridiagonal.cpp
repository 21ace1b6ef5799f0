#include "facetflow/tridiagonal.hpp"

#include <cstddef>

#include "facetflow/errors.hpp"

namespace facetflow {

std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n) {
        throw ValidationError("solve_tridiagonal: inconsistent band sizes");
    }
    for (std::size_t i = 1; i < n; ++i) {
        const double m = lower[i] / diag[i - 1];
        diag[i] -= m * upper[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    }
    return x;
}

std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    if (n < 3) {
        throw ValidationError("solve_cyclic_tridiagonal: need n >= 3");
    }

    // A = T + u v^T with u = (gamma, 0, ..., 0, upper[n-1])^T,
    // v = (1, 0, ..., 0, lower[0]/gamma)^T.
    const double gamma = -diag[0];
    std::vector<double> d(diag);
    d[0] -= gamma;
    d[n - 1] -= upper[n - 1] * lower[0] / gamma;

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = upper[n - 1];

    std::vector<double> y = solve_tridiagonal(lower, d, upper, rhs);
    std::vector<double> z = solve_tridiagonal(lower, d, upper, u);

    const double vy = y[0] + lower[0] / gamma * y[n - 1];
    const double vz = z[0] + lower[0] / gamma * z[n - 1];
    const double factor = vy / (1.0 + vz);

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - factor * z[i];
    return x;
}

}  // namespace facetflow
