#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tiledag/kernel.hpp"

namespace tiledag {

using TaskId = std::int64_t;

// A tile of a symbolic matrix. Generators pick matrix ids; temporaries must
// use ids distinct from their inputs so that renaming removes hazards.
struct TileRef {
    std::uint32_t matrix = 0;
    std::int32_t row = 0;
    std::int32_t col = 0;

    friend bool operator==(const TileRef&, const TileRef&) = default;
    friend auto operator<=>(const TileRef&, const TileRef&) = default;
};

struct Task {
    TaskId id = 0;
    KernelKind kind = KernelKind::BARRIER;
    std::array<std::int32_t, 4> idx{-1, -1, -1, -1};
    std::uint8_t nidx = 0;
    std::vector<TileRef> reads;
    std::vector<TileRef> writes;
    // Generator-defined label (Cholesky inversion step, Strassen level, ...).
    std::uint8_t phase = 0;

    std::span<const std::int32_t> indices() const { return {idx.data(), nidx}; }
    std::string label() const;  // e.g. "GEMM(2,1,0)"
};

using Trace = std::vector<Task>;

// Appends tasks with consecutive ids.
class TraceBuilder {
public:
    Task& add(KernelKind kind, std::initializer_list<std::int32_t> indices,
              std::vector<TileRef> reads, std::vector<TileRef> writes, std::uint8_t phase = 0);
    Task& barrier(std::uint8_t phase = 0);
    Trace take() { return std::move(trace_); }
    const Trace& trace() const { return trace_; }

private:
    Trace trace_;
};

enum class EdgeCause : std::uint8_t { RAW, WAR, WAW, EXPLICIT };

std::string_view cause_name(EdgeCause c);

struct Edge {
    TaskId from;
    TaskId to;
    EdgeCause cause;
    friend bool operator==(const Edge&, const Edge&) = default;
};

class TaskGraph {
public:
    TaskGraph() = default;
    // Tasks must be numbered 0..n-1 in vector order. Duplicate
    // (from, to, cause) triples are merged.
    TaskGraph(std::vector<Task> tasks, std::vector<Edge> edges);

    std::size_t size() const { return tasks_.size(); }
    const std::vector<Task>& tasks() const { return tasks_; }
    const Task& task(TaskId id) const { return tasks_[static_cast<std::size_t>(id)]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Distinct neighbours, independent of how many causes link them.
    std::span<const TaskId> successors(TaskId id) const;
    std::span<const TaskId> predecessors(TaskId id) const;

    // Kahn order; throws CycleError naming an edge on a cycle.
    std::vector<TaskId> topological_order() const;
    void check_acyclic() const { (void)topological_order(); }

    std::int64_t total_weight(const class WeightModel& w) const;

    // Subgraph induced by the tasks satisfying pred; ids are renumbered
    // densely, preserving order.
    template <class Pred>
    TaskGraph induced(Pred pred) const;

    // Flags edges implied by another path (quadratic memory; small graphs).
    std::vector<bool> redundant_edges() const;

private:
    TaskGraph induced_mask(const std::vector<bool>& keep) const;

    std::vector<Task> tasks_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> succ_off_, pred_off_;
    std::vector<TaskId> succ_, pred_;
};

template <class Pred>
TaskGraph TaskGraph::induced(Pred pred) const {
    std::vector<bool> keep(tasks_.size());
    for (std::size_t i = 0; i < tasks_.size(); ++i) keep[i] = pred(tasks_[i]);
    return induced_mask(keep);
}

// Hazard analysis over a sequential trace: for every tile, edges join
// adjacent conflicting accesses (RAW, WAR, WAW). A BARRIER task depends on
// every task since the previous barrier that has no successor yet, and tasks
// after it with no predecessor inside the new segment depend on it.
TaskGraph build_from_trace(Trace trace);

// "task <id> <kind> <indices> w=<weight>" and "edge <from> <to> <cause>" lines.
void write_text(std::ostream& os, const TaskGraph& g, const WeightModel& w);
void write_dot(std::ostream& os, const TaskGraph& g, const WeightModel& w);

}  // namespace tiledag
