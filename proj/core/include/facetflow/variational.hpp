#pragma once

#include <vector>

#include "facetflow/facets.hpp"
#include "facetflow/grid.hpp"
#include "facetflow/trajectory.hpp"

namespace facetflow {

struct VariationalConfig {
    Alpha alpha;
    double tau = 1e-3;
    double kkt_tol = 1e-10;
    int max_inner_iter = 20000;
    double t_end = 0.1;
    int record_every = 1;

    /// Edges with |d| below this are treated as flat when certifying.
    double flat_tol() const { return std::max(1e-8, 10.0 * kkt_tol); }
};

/// Output of one proximal (resolvent) step together with its dual
/// certificate: sigma is a per-edge selection of the monotone graph with
/// (v - u)/tau = D^- sigma, gap the remaining duality gap.
struct ProxResult {
    GridFunction v;
    std::vector<double> sigma;
    double gap = 0;
};

/// Minimize ||v - u||^2/(2 tau) + energy(v) through the saddle form
/// min_v max_{|q| <= alpha/2} ||v-u||^2/(2 tau) + ||D v||^2/2 + <q, D v>:
/// accelerated projected gradient on the dual q with the primal recovered by
/// an exact cyclic tridiagonal solve each iteration. The alpha-term is
/// handled exactly by the projection, and the returned certificate satisfies
/// the stationarity equation to solver precision. q_warm (optional) seeds
/// and receives the dual variable for warm starting across steps.
/// Throws InnerNonConvergence when the gap does not reach kkt_tol.
ProxResult prox_step(const GridFunction& u, const VariationalConfig& cfg,
                     std::vector<double>* q_warm = nullptr);

/// Worst violations of the certificate conditions for a prox result.
struct CertificateCheck {
    double branch = 0;        // |sigma - (d + a/2 sgn d)| on steep edges
    double flat_bound = 0;    // max(|sigma| - a/2, 0) on flat edges
    double stationarity = 0;  // l2 norm of v - u - tau D^- sigma
};
CertificateCheck check_certificate(const GridFunction& u, const ProxResult& r,
                                   const VariationalConfig& cfg);

/// Iterate prox_step until t_end; energy is non-increasing along the
/// sequence by construction of the minimizing movement.
Trajectory solve_variational(const GridFunction& u0, const VariationalConfig& cfg);

}  // namespace facetflow
