#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tiledag/graph.hpp"

namespace tiledag {

struct CpAnnotation {
    std::vector<std::int64_t> weight;
    // Longest path from the task to a sink, including the task's own weight.
    std::vector<std::int64_t> priority;
    std::vector<std::int64_t> earliest_start;
    std::vector<std::int64_t> latest_start;
    std::int64_t cp_length = 0;
    std::int64_t total_weight = 0;

    std::int64_t earliest_finish(TaskId id) const {
        auto i = static_cast<std::size_t>(id);
        return earliest_start[i] + weight[i];
    }
    bool critical(TaskId id) const {
        auto i = static_cast<std::size_t>(id);
        return earliest_start[i] == latest_start[i];
    }
};

// Backflow: priorities by reverse traversal, earliest starts by forward
// traversal. Throws CycleError on cyclic input.
CpAnnotation annotate_cp(const TaskGraph& g, const WeightModel& w);

// Convenience: weighted critical path length.
std::int64_t cp_length(const TaskGraph& g, const WeightModel& w);

// Every task started at its latest start on unbounded processors.
// breakpoints holds (time, active count from that time on) in increasing
// time order; the last breakpoint is (horizon, 0).
struct AlapProfile {
    std::vector<std::pair<std::int64_t, std::int64_t>> breakpoints;
    std::int64_t horizon = 0;
    std::int64_t area = 0;

    std::int64_t active_at(std::int64_t t) const;
    std::int64_t max_active() const;
};

AlapProfile alap_profile(const TaskGraph& g, const WeightModel& w);
AlapProfile alap_profile(const CpAnnotation& cp);

}  // namespace tiledag
