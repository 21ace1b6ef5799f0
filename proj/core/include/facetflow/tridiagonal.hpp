#pragma once

#include <vector>

namespace facetflow {

/// Solve a tridiagonal system with the Thomas algorithm.
/// lower[i] multiplies x[i-1] (lower[0] unused), diag[i] multiplies x[i],
/// upper[i] multiplies x[i+1] (upper[n-1] unused). No pivoting; intended for
/// the diagonally dominant systems produced by implicit diffusion steps.
std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs);

/// Solve the periodic variant where lower[0] couples x[0] to x[n-1] and
/// upper[n-1] couples x[n-1] to x[0], via the Sherman-Morrison correction
/// of two plain Thomas solves. O(n).
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& lower,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& upper,
                                             const std::vector<double>& rhs);

}  // namespace facetflow
