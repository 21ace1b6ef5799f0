#include "facetflow/facets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace facetflow {

const char* to_string(FacetKind k) { return k == FacetKind::max ? "max" : "min"; }

const char* to_string(IntervalDirection d) {
    return d == IntervalDirection::increasing ? "increasing" : "decreasing";
}

namespace {

struct FlatRun {
    int first_edge;
    int edge_count;
};

// Maximal cyclic runs of flat edges. Assumes at least one non-flat edge.
std::vector<FlatRun> flat_runs(const std::vector<bool>& flat) {
    const int n = static_cast<int>(flat.size());
    int start = 0;
    while (flat[start]) ++start;  // some non-flat edge exists
    std::vector<FlatRun> runs;
    int i = start;
    do {
        if (flat[i]) {
            int len = 0;
            int first = i;
            while (flat[i]) {
                ++len;
                i = (i + 1) % n;
            }
            runs.push_back({first, len});
        } else {
            i = (i + 1) % n;
        }
    } while (i != start);
    std::sort(runs.begin(), runs.end(),
              [](const FlatRun& a, const FlatRun& b) { return a.first_edge < b.first_edge; });
    return runs;
}

double facet_height(const GridFunction& u, int first_node, int node_count) {
    double s = 0;
    for (int j = 0; j < node_count; ++j) s += u[first_node + j];
    return s / node_count;
}

// sigma = d + (alpha/2) sgn d per edge without structural validation; used
// for reporting E on states that are not (yet) clean decompositions.
std::vector<double> lenient_sigma(const GridFunction& u, const FacetDecomposition& dec,
                                  Alpha alpha, double flat_tol) {
    const int n = u.grid.n;
    const GridFunction d = forward_diff(u);
    std::vector<double> sigma(n);
    for (int e = 0; e < n; ++e) {
        const double de = d.values[e];
        const double s = std::abs(de) <= flat_tol ? 0.0 : (de > 0 ? 1.0 : -1.0);
        sigma[e] = de + 0.5 * alpha.value * s;
    }
    // Overwrite facet edges with the affine ramps so clean states match
    // build_sigma.
    for (const Facet& f : dec.facets) {
        if (f.degenerate) return std::vector<double>(n, 0.0);
        const int edges = f.node_count - 1;
        const double vl = f.kind == FacetKind::max ? 0.5 * alpha.value : -0.5 * alpha.value;
        const double vr = -vl;
        for (int j = 0; j < edges; ++j) {
            const int e = u.grid.wrap(f.first_node + j);
            sigma[e] = vl + (j + 1) * (vr - vl) / (edges + 1);
        }
    }
    return sigma;
}

}  // namespace

void validate(const FacetDecomposition& dec) {
    if (dec.degenerate_constant) {
        if (dec.n() != 1 || !dec.intervals.empty()) {
            throw InvalidDecomposition("degenerate decomposition must be a single whole-torus facet");
        }
        return;
    }
    const int n = dec.n();
    if (n == 0) throw InvalidDecomposition("decomposition has no facets");
    if (static_cast<int>(dec.intervals.size()) != n) {
        throw InvalidDecomposition("facet and interval counts differ");
    }
    if (n % 2 != 0) {
        throw InvalidDecomposition("facet kinds cannot alternate cyclically with odd count " +
                                   std::to_string(n));
    }
    int covered_edges = 0;
    for (int k = 0; k < n; ++k) {
        const Facet& f = dec.facets[k];
        const Facet& fn = dec.facets[(k + 1) % n];
        const MonotoneInterval& iv = dec.intervals[k];
        if (f.kind == fn.kind) {
            throw InvalidDecomposition("facet kinds do not alternate at index " +
                                       std::to_string(k));
        }
        if (f.length <= 0 || iv.edge_count <= 0) {
            throw InvalidDecomposition("non-positive facet or interval length at index " +
                                       std::to_string(k));
        }
        const bool expect_decreasing = f.kind == FacetKind::max;
        if ((iv.direction == IntervalDirection::decreasing) != expect_decreasing) {
            throw InvalidDecomposition("interval direction inconsistent with facet kinds at index " +
                                       std::to_string(k));
        }
        // Interval k must start where facet k ends and end where facet k+1 begins.
        const int f_end = dec.grid.wrap(f.first_node + f.node_count - 1);
        if (dec.grid.wrap(iv.first_edge) != f_end ||
            dec.grid.wrap(iv.first_edge + iv.edge_count) != dec.grid.wrap(fn.first_node)) {
            throw InvalidDecomposition("cover gap between facet and interval at index " +
                                       std::to_string(k));
        }
        covered_edges += (f.node_count - 1) + iv.edge_count;
    }
    if (covered_edges != dec.grid.n) {
        throw InvalidDecomposition("decomposition does not cover the torus: " +
                                   std::to_string(covered_edges) + " of " +
                                   std::to_string(dec.grid.n) + " edges");
    }
}

AnalysisReport detect_facets(const GridFunction& u, Alpha alpha, double flat_tol) {
    const int n = u.grid.n;
    const double h = u.grid.spacing();
    const GridFunction d = forward_diff(u);

    double dmax = 0;
    for (double v : d.values) dmax = std::max(dmax, std::abs(v));
    const double tol = flat_tol > 0 ? flat_tol : 1e-6 * std::max(1.0, dmax);

    AnalysisReport report;
    report.flat_tol_used = tol;
    report.decomposition.grid = u.grid;
    report.decomposition.flat_tol = tol;

    std::vector<bool> flat(n);
    bool all_flat = true;
    for (int e = 0; e < n; ++e) {
        flat[e] = std::abs(d.values[e]) <= tol;
        all_flat = all_flat && flat[e];
    }

    if (all_flat) {
        Facet f;
        f.left = 0;
        f.right = 0;
        f.height = facet_height(u, 0, n);
        f.kind = FacetKind::max;  // improper extremum of a constant state
        f.length = 1.0;
        f.first_node = 0;
        f.node_count = n;
        f.degenerate = true;
        report.decomposition.facets.push_back(f);
        report.decomposition.degenerate_constant = true;
        report.E = 0;
        report.bound_iii_ok = true;
        return report;
    }

    auto sign_of = [&](int e) { return d.values[u.grid.wrap(e)] > 0 ? 1 : -1; };

    // Classify maximal flat runs into facets and embedded flats.
    for (const FlatRun& run : flat_runs(flat)) {
        int prev = u.grid.wrap(run.first_edge - 1);
        int next = u.grid.wrap(run.first_edge + run.edge_count);
        const int sp = sign_of(prev);
        const int sn = sign_of(next);
        const int first_node = run.first_edge;
        const int node_count = run.edge_count + 1;
        if (sp > 0 && sn < 0) {
            Facet f;
            f.kind = FacetKind::max;
            f.first_node = first_node;
            f.node_count = node_count;
            f.left = u.grid.coord(first_node);
            f.right = u.grid.coord(first_node + node_count - 1);
            f.length = run.edge_count * h;
            f.height = facet_height(u, first_node, node_count);
            report.decomposition.facets.push_back(f);
        } else if (sp < 0 && sn > 0) {
            Facet f;
            f.kind = FacetKind::min;
            f.first_node = first_node;
            f.node_count = node_count;
            f.left = u.grid.coord(first_node);
            f.right = u.grid.coord(first_node + node_count - 1);
            f.length = run.edge_count * h;
            f.height = facet_height(u, first_node, node_count);
            report.decomposition.facets.push_back(f);
        } else {
            FlatRunReport r;
            r.first_edge = run.first_edge;
            r.edge_count = run.edge_count;
            r.left = u.grid.coord(run.first_edge);
            r.right = u.grid.coord(run.first_edge + run.edge_count);
            report.embedded_flats.push_back(r);
        }
    }

    // Single-node extrema: adjacent non-flat edges of opposite sign.
    for (int e = 0; e < n; ++e) {
        const int e2 = (e + 1) % n;
        if (!flat[e] && !flat[e2] && sign_of(e) != sign_of(e2)) {
            report.isolated_extrema.push_back(e2);
        }
    }

    auto& facets = report.decomposition.facets;
    if (facets.empty()) {
        if (report.isolated_extrema.empty() && report.embedded_flats.empty()) {
            throw NoFacets("no facets, flats or extrema detected on a non-constant profile");
        }
        // Not in the operator domain (e.g. a still-smooth profile); report
        // carries the anomalies, decomposition stays empty.
        report.E = compute_E(lenient_sigma(u, report.decomposition, alpha, tol), h);
        report.bound_iii_ok = true;
        return report;
    }

    // Intervals connect consecutive facets in cyclic order.
    const int m = static_cast<int>(facets.size());
    for (int k = 0; k < m; ++k) {
        const Facet& f = facets[k];
        const Facet& fn = facets[(k + 1) % m];
        MonotoneInterval iv;
        const int start = u.grid.wrap(f.first_node + f.node_count - 1);
        iv.first_edge = start;
        int span = fn.first_node - start;
        while (span <= 0) span += n;
        iv.edge_count = span;
        iv.left = u.grid.coord(start);
        iv.right = u.grid.coord(fn.first_node);
        iv.length = span * h;
        if (f.kind != fn.kind) {
            iv.direction = f.kind == FacetKind::max ? IntervalDirection::decreasing
                                                    : IntervalDirection::increasing;
        } else {
            iv.direction = fn.height >= f.height ? IntervalDirection::increasing
                                                 : IntervalDirection::decreasing;
        }
        report.decomposition.intervals.push_back(iv);
    }

    const std::vector<double> sigma = lenient_sigma(u, report.decomposition, alpha, tol);
    report.E = compute_E(sigma, h);

    // Lower bound on facet lengths, with 4h grid slack.
    const double e2 = report.E * report.E;
    if (e2 > 0) {
        const double required = m * alpha.value * alpha.value / e2 - 4.0 * h;
        for (int k = 0; k < m; ++k) {
            if (facets[k].length < required) {
                report.violations.push_back({k, required - facets[k].length});
            }
        }
    }
    report.bound_iii_ok = report.violations.empty();
    return report;
}

std::vector<double> build_sigma(const GridFunction& u, const FacetDecomposition& dec,
                                Alpha alpha) {
    validate(dec);
    const int n = u.grid.n;
    if (dec.degenerate_constant) return std::vector<double>(n, 0.0);

    const GridFunction d = forward_diff(u);
    std::vector<double> sigma(n, 0.0);
    const double half = 0.5 * alpha.value;

    for (int k = 0; k < dec.n(); ++k) {
        const MonotoneInterval& iv = dec.intervals[k];
        const double dir = iv.direction == IntervalDirection::increasing ? 1.0 : -1.0;
        for (int j = 0; j < iv.edge_count; ++j) {
            const int e = u.grid.wrap(iv.first_edge + j);
            const double de = d.values[e];
            const double s = std::abs(de) <= dec.flat_tol ? dir : (de > 0 ? 1.0 : -1.0);
            sigma[e] = de + half * s;
        }
        const Facet& f = dec.facets[k];
        const int edges = f.node_count - 1;
        const double vl = f.kind == FacetKind::max ? half : -half;
        const double vr = -vl;
        for (int j = 0; j < edges; ++j) {
            const int e = u.grid.wrap(f.first_node + j);
            sigma[e] = vl + (j + 1) * (vr - vl) / (edges + 1);
        }
    }
    return sigma;
}

double compute_E(const std::vector<double>& sigma, double spacing) {
    const int n = static_cast<int>(sigma.size());
    double sq = 0;
    for (int e = 0; e < n; ++e) {
        const double diff = sigma[(e + 1) % n] - sigma[e];
        sq += diff * diff / spacing;
    }
    return std::sqrt(sq);
}

GridFunction minimal_selection(const GridFunction& u, const FacetDecomposition& dec,
                               Alpha alpha) {
    validate(dec);
    if (dec.degenerate_constant) return GridFunction::zeros(u.grid);

    GridFunction out = laplacian(u);
    for (const Facet& f : dec.facets) {
        const double value = kind_sign(f.kind) * alpha.value / f.length;
        for (int j = 0; j < f.node_count; ++j) {
            out.at(f.first_node + j) = value;
        }
    }
    return out;
}

nlohmann::json to_json(const AnalysisReport& report) {
    nlohmann::json facets = nlohmann::json::array();
    for (const Facet& f : report.decomposition.facets) {
        facets.push_back({{"left", f.left},
                          {"right", f.right},
                          {"height", f.height},
                          {"kind", to_string(f.kind)},
                          {"length", f.length}});
    }
    nlohmann::json intervals = nlohmann::json::array();
    for (const MonotoneInterval& iv : report.decomposition.intervals) {
        intervals.push_back({{"left", iv.left},
                             {"right", iv.right},
                             {"direction", to_string(iv.direction)},
                             {"length", iv.length}});
    }
    nlohmann::json violations = nlohmann::json::array();
    for (const BoundViolation& v : report.violations) {
        violations.push_back({{"facet", v.facet_index}, {"deficit", v.deficit}});
    }
    nlohmann::json flats = nlohmann::json::array();
    for (const FlatRunReport& r : report.embedded_flats) {
        flats.push_back({{"left", r.left}, {"right", r.right}, {"edges", r.edge_count}});
    }
    return nlohmann::json{{"facets", facets},
                          {"intervals", intervals},
                          {"E", report.E},
                          {"bound_iii_ok", report.bound_iii_ok},
                          {"violations", violations},
                          {"embedded_flats", flats},
                          {"isolated_extrema", report.isolated_extrema}};
}

}  // namespace facetflow
