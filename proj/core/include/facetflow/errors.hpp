#pragma once

#include <stdexcept>
#include <string>

namespace facetflow {

/// Base class for all facetflow errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Newton iteration of the smoothed implicit step failed to reach tolerance.
/// Usually means dt is too large for the chosen epsilon.
struct NonConvergence : Error {
    NonConvergence(const std::string& msg, double residual, double time)
        : Error(msg), last_residual(residual), fail_time(time) {}
    double last_residual;
    double fail_time;
};

/// The primal-dual inner loop of the proximal step ran out of iterations.
struct InnerNonConvergence : Error {
    InnerNonConvergence(const std::string& msg, double gap)
        : Error(msg), last_gap(gap) {}
    double last_gap;
};

/// A facet/interval decomposition does not cover the grid or violates alternation.
struct InvalidDecomposition : Error {
    using Error::Error;
};

/// No facet structure could be identified (unreachable for finite torus data
/// except through inconsistent inputs; kept as an explicit failure mode).
struct NoFacets : Error {
    using Error::Error;
};

/// An adjacent facet has non-positive length where a positive one is required.
struct DegenerateFacet : Error {
    using Error::Error;
};

/// A monotone interval is shorter than the configured minimum.
struct DegenerateInterval : Error {
    using Error::Error;
};

/// A merge restart did not reduce the facet count.
struct MergeInconsistency : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct FileError : Error {
    using Error::Error;
};

}  // namespace facetflow
