#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "facetflow/grid.hpp"

namespace facetflow {

enum class FacetKind { max, min };
enum class IntervalDirection { increasing, decreasing };

const char* to_string(FacetKind k);
const char* to_string(IntervalDirection d);

/// Sign of the curvature carried by a facet: -1 on maxima, +1 on minima.
inline double kind_sign(FacetKind k) { return k == FacetKind::max ? -1.0 : 1.0; }

/// Maximal flat run where the profile attains an (improper) local extremum.
/// Endpoints sit on the grid nodes separating the last flat edge from the
/// first non-flat edge on each side, so grid-aligned flats are measured
/// exactly.
struct Facet {
    double left = 0;
    double right = 0;
    double height = 0;
    FacetKind kind = FacetKind::max;
    double length = 0;
    int first_node = 0;   // leftmost covered node
    int node_count = 0;   // covered nodes; flat edges = node_count - 1
    bool degenerate = false;  // whole-torus facet of a constant state
};

/// Open monotone stretch between facet k and facet k+1.
struct MonotoneInterval {
    double left = 0;
    double right = 0;
    IntervalDirection direction = IntervalDirection::increasing;
    double length = 0;
    int first_edge = 0;  // first (non-flat) edge; interior nodes are
    int edge_count = 0;  // first_edge+1 .. first_edge+edge_count-1
};

/// Ordered alternating cover of the torus by facets and monotone intervals.
/// intervals[k] follows facets[k] in cyclic order.
struct FacetDecomposition {
    TorusGrid grid{4};
    std::vector<Facet> facets;
    std::vector<MonotoneInterval> intervals;
    double flat_tol = 1e-8;
    bool degenerate_constant = false;

    int n() const { return static_cast<int>(facets.size()); }
};

/// Throws InvalidDecomposition unless facets/intervals alternate with
/// consistent kinds and their closures cover the torus.
void validate(const FacetDecomposition& dec);

struct FlatRunReport {
    int first_edge = 0;
    int edge_count = 0;
    double left = 0;
    double right = 0;
};

struct BoundViolation {
    int facet_index = 0;
    double deficit = 0;  // required - actual length, positive when violated
};

struct AnalysisReport {
    FacetDecomposition decomposition;
    double E = 0;             // l2 norm of the difference quotient of sigma0
    bool bound_iii_ok = true; // every facet length >= n alpha^2 / E^2 - 4h
    std::vector<BoundViolation> violations;
    std::vector<FlatRunReport> embedded_flats;  // flats inside monotone stretches
    std::vector<int> isolated_extrema;          // single-node extrema (node ids)
    double flat_tol_used = 0;
};

/// Detect the facet/interval structure of a profile. Flat runs are maximal
/// cyclic runs of edges with |d_i| <= flat_tol; runs that are local extrema
/// become facets, flat runs strictly inside monotone stretches are reported
/// in embedded_flats, and single-node extrema in isolated_extrema. A constant
/// profile yields the degenerate whole-torus facet.
/// flat_tol <= 0 selects the default 1e-6 * max(1, ||d||_inf).
AnalysisReport detect_facets(const GridFunction& u, Alpha alpha, double flat_tol = 0);

/// Continuous selection sigma0 of the monotone graph: d + (alpha/2) sgn d on
/// interval edges (sign from the interval direction near flat ends), affine
/// ramps between -+alpha/2 across each facet. Throws InvalidDecomposition.
std::vector<double> build_sigma(const GridFunction& u, const FacetDecomposition& dec,
                                Alpha alpha);

/// h-weighted l2 norm of the cyclic difference quotient of a per-edge array.
double compute_E(const std::vector<double>& sigma, double spacing);

/// Least-norm representative of the flow operator: laplacian(u) at interval
/// interior nodes, -alpha/|F| on max facets, +alpha/|F| on min facets (facet
/// value at endpoint nodes). Constant states map to zero.
GridFunction minimal_selection(const GridFunction& u, const FacetDecomposition& dec,
                               Alpha alpha);

nlohmann::json to_json(const AnalysisReport& report);

}  // namespace facetflow
