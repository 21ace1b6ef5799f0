#pragma once

#include <variant>
#include <vector>

#include "facetflow/facets.hpp"
#include "facetflow/grid.hpp"
#include "facetflow/trajectory.hpp"

namespace facetflow {

struct SharpConfig {
    Alpha alpha;
    int M = 64;           // nodes per rescaled interval, endpoints included
    double dt = 1e-4;
    double t_end = 0.1;
    double merge_len_tol = 0;  // <= 0 selects (4/M) * smallest initial interval
    double cfl_safety = 0.5;
    double speed_cap = 1e3;        // endpoint speed guard
    double merge_height_tol = 0.05;  // height mismatch allowed at a collapse
    int record_every = 1;
    int reconstruct_n = 512;  // grid used for restarts and snapshots
};

/// Front-tracking state: facet endpoints, heights and kinds, plus the
/// rescaled curvature fields kappa_tilde (zero at both reference endpoints)
/// and the solution samples u_field on each moving interval mapped to [0,1].
/// Interval k is (a[k], b[k]); facet k is [b[k-1], a[k]] cyclically.
struct SharpState {
    std::vector<double> a, b;
    std::vector<double> facet_height;
    std::vector<FacetKind> kind;
    std::vector<std::vector<double>> kappa_tilde;
    std::vector<std::vector<double>> u_field;
    double time = 0;
    bool extinct = false;
    double extinct_value = 0;

    int n() const { return static_cast<int>(a.size()); }
    double interval_length(int k) const { return cyclic_gap(a[k], b[k]); }
    double facet_length(int k) const {
        return cyclic_gap(b[(k + n() - 1) % n()], a[k]);
    }
    void check_invariants() const;  // ordering, lengths, Dirichlet zeros
};

/// Curvature carried by facet k: -alpha/|F| on maxima, +alpha/|F| on minima.
double facet_curvature(const SharpState& s, Alpha alpha, int k);

/// Affine corrector on interval k: matches the adjacent facet curvatures at
/// the reference endpoints, f(0) = kappa_F(k), f(1) = kappa_F(k+1).
/// Throws DegenerateFacet / InvalidDecomposition on bad adjacent facets.
double corrector(const SharpState& s, Alpha alpha, int k, double x);

/// Slope of the corrector in the reference coordinate (constant in x).
double corrector_slope(const SharpState& s, Alpha alpha, int k);

struct EndpointVelocities {
    std::vector<double> a_dot, b_dot;
};

/// Endpoint law z' = -sign(kind) (|F|/alpha) kappa_x evaluated from the
/// interval side, with kappa_x = (kappa_tilde_x + f_x)/|I| at the reference
/// endpoints (one-sided second-order differences).
EndpointVelocities endpoint_velocities(const SharpState& s, Alpha alpha);

/// Full right-hand side of the rescaled curvature equation on interval k:
/// kappa_tilde_xx/|I|^2 + Phi_t/|I| (kappa_tilde_x + f_x) - f_t,
/// with Phi_t(x) = a' + (b'-a') x and f_t through the facet-length rates.
/// Boundary entries are zero (Dirichlet). min_len guards |I^k|.
std::vector<double> rhs_kappa_tilde(const SharpState& s, Alpha alpha, int k,
                                    const EndpointVelocities& vel,
                                    double min_len = 0);

struct CompatibilityResult {
    bool ok = true;
    std::vector<double> residuals;  // one per facet endpoint, left then right
};

/// Residual |one-sided u0_xx from the interval side - facet curvature| at
/// every facet endpoint. The sharp system is well-posed only when these
/// vanish; trapezoid-like data fail with residual alpha/|F|.
CompatibilityResult compatibility_check(const GridFunction& u0,
                                        const FacetDecomposition& dec, Alpha alpha,
                                        double tol = 1e-2);

/// One IMEX step: implicit diffusion of kappa_tilde per interval, explicit
/// advection/corrector terms, endpoint ODE and exact height law
/// h' = -+alpha/|F|; dt is reduced by cfl_safety when explicit terms would
/// violate stability, and capped by dt_cap when positive. Returns an Event
/// instead of stepping when an interval is below merge_len_tol or the
/// endpoint speed exceeds the guard.
std::variant<SharpState, Event> step_sharp(const SharpState& s, const SharpConfig& cfg,
                                           double dt_cap = 0);

/// Restart after a collapse: flattens the collapsed facet pair (mass
/// preserving), reconstructs u on a fresh grid, re-detects the structure and
/// rebuilds the state with strictly fewer facets (final pair -> extinction).
/// Throws MergeInconsistency when the count fails to drop or heights differ
/// beyond merge_height_tol.
SharpState handle_merge(const SharpState& s, const Event& event, const SharpConfig& cfg);

/// Build a SharpState from a faceted grid profile via detect_facets and the
/// minimal selection. Throws InvalidDecomposition for non-faceted data.
SharpState make_sharp_state(const GridFunction& u0, Alpha alpha, int M,
                            double flat_tol = 0);

/// Sample the tracked solution back onto a torus grid.
GridFunction reconstruct(const SharpState& s, const TorusGrid& grid);

/// Sample the curvature field (facet values on facets, kappa_tilde + f on
/// intervals) onto a torus grid.
GridFunction reconstruct_kappa(const SharpState& s, Alpha alpha, const TorusGrid& grid);

/// Drive step_sharp/handle_merge to t_end, recording reconstructed snapshots
/// at multiples of dt*record_every and logging merge/extinction/guard
/// events. The reconstructed mean is pinned to its initial value each step;
/// the cumulative correction is reported in the diagnostics.
Trajectory solve_sharp(const GridFunction& u0, const SharpConfig& cfg);
Trajectory solve_sharp(SharpState state, const SharpConfig& cfg);

}  // namespace facetflow
