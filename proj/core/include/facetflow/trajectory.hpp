#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "facetflow/grid.hpp"

namespace facetflow {

enum class EventKind { merge, extinction, blowup_guard };

const char* to_string(EventKind k);

/// A discrete event along a run: interval collapse (merge), reaching the
/// constant state (extinction), or tripping the endpoint speed cap.
struct Event {
    double time = 0;
    EventKind kind = EventKind::merge;
    std::vector<int> indices;    // facets/intervals involved
    std::vector<double> lengths; // lengths at trigger
    std::string detail;
};

struct TrajectoryMeta {
    std::string solver_id;
    std::uint64_t config_hash = 0;
    std::map<std::string, double> diagnostics;
};

/// Time-indexed snapshots with per-step curvature estimates and events.
/// kappas[j] approximates u_t at times[j] by the backward quotient
/// (u_j - u_{j-1}) / dt; kappas[0] is zero by convention.
struct Trajectory {
    std::vector<double> times;
    std::vector<GridFunction> snapshots;
    std::vector<GridFunction> kappas;
    std::vector<Event> events;
    TrajectoryMeta meta;

    int steps() const { return static_cast<int>(times.size()); }
    void check_aligned() const;
};

}  // namespace facetflow
