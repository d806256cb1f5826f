#include "tiledag/graph.hpp"

#include <algorithm>
#include <ostream>
#include <queue>
#include <unordered_map>

#include "tiledag/error.hpp"

namespace tiledag {

std::string Task::label() const {
    std::string s(kernel_name(kind));
    s += '(';
    for (std::size_t i = 0; i < nidx; ++i) {
        if (i) s += ',';
        s += std::to_string(idx[i]);
    }
    s += ')';
    return s;
}

Task& TraceBuilder::add(KernelKind kind, std::initializer_list<std::int32_t> indices,
                        std::vector<TileRef> reads, std::vector<TileRef> writes,
                        std::uint8_t phase) {
    Task t;
    t.id = static_cast<TaskId>(trace_.size());
    t.kind = kind;
    require(indices.size() <= t.idx.size(), "at most four task indices");
    std::copy(indices.begin(), indices.end(), t.idx.begin());
    t.nidx = static_cast<std::uint8_t>(indices.size());
    t.reads = std::move(reads);
    t.writes = std::move(writes);
    t.phase = phase;
    trace_.push_back(std::move(t));
    return trace_.back();
}

Task& TraceBuilder::barrier(std::uint8_t phase) {
    return add(KernelKind::BARRIER, {}, {}, {}, phase);
}

std::string_view cause_name(EdgeCause c) {
    switch (c) {
        case EdgeCause::RAW: return "RAW";
        case EdgeCause::WAR: return "WAR";
        case EdgeCause::WAW: return "WAW";
        case EdgeCause::EXPLICIT: return "EXPLICIT";
    }
    return "?";
}

TaskGraph::TaskGraph(std::vector<Task> tasks, std::vector<Edge> edges)
    : tasks_(std::move(tasks)) {
    const auto n = tasks_.size();
    for (std::size_t i = 0; i < n; ++i)
        require(tasks_[i].id == static_cast<TaskId>(i), "task ids must be 0..n-1 in order");
    for (const auto& e : edges) {
        require(e.from >= 0 && e.to >= 0 && static_cast<std::size_t>(e.from) < n &&
                    static_cast<std::size_t>(e.to) < n,
                "edge endpoint out of range");
        require(e.from != e.to, "self edge on task " + std::to_string(e.from));
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.to, a.from, a.cause) < std::tie(b.to, b.from, b.cause);
    });
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    std::vector<std::pair<TaskId, TaskId>> pairs;
    pairs.reserve(edges_.size());
    for (const auto& e : edges_) pairs.emplace_back(e.from, e.to);
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    succ_off_.assign(n + 1, 0);
    pred_off_.assign(n + 1, 0);
    for (auto [f, t] : pairs) {
        ++succ_off_[static_cast<std::size_t>(f) + 1];
        ++pred_off_[static_cast<std::size_t>(t) + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        succ_off_[i + 1] += succ_off_[i];
        pred_off_[i + 1] += pred_off_[i];
    }
    succ_.resize(pairs.size());
    pred_.resize(pairs.size());
    auto sfill = succ_off_;
    auto pfill = pred_off_;
    for (auto [f, t] : pairs) {
        succ_[sfill[static_cast<std::size_t>(f)]++] = t;
        pred_[pfill[static_cast<std::size_t>(t)]++] = f;
    }
    for (std::size_t i = 0; i < n; ++i)
        std::sort(pred_.begin() + static_cast<std::ptrdiff_t>(pred_off_[i]),
                  pred_.begin() + static_cast<std::ptrdiff_t>(pred_off_[i + 1]));
}

std::span<const TaskId> TaskGraph::successors(TaskId id) const {
    auto i = static_cast<std::size_t>(id);
    return {succ_.data() + succ_off_[i], succ_off_[i + 1] - succ_off_[i]};
}

std::span<const TaskId> TaskGraph::predecessors(TaskId id) const {
    auto i = static_cast<std::size_t>(id);
    return {pred_.data() + pred_off_[i], pred_off_[i + 1] - pred_off_[i]};
}

std::vector<TaskId> TaskGraph::topological_order() const {
    const auto n = tasks_.size();
    std::vector<std::size_t> indeg(n);
    for (std::size_t i = 0; i < n; ++i) indeg[i] = pred_off_[i + 1] - pred_off_[i];
    // Min-heap keeps the order canonical (trace order when the graph came
    // from a trace).
    std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.push(static_cast<TaskId>(i));
    std::vector<TaskId> order;
    order.reserve(n);
    while (!ready.empty()) {
        TaskId u = ready.top();
        ready.pop();
        order.push_back(u);
        for (TaskId v : successors(u))
            if (--indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
    }
    if (order.size() != n) {
        // Any edge between two unprocessed tasks whose source is itself
        // unprocessed lies on (or leads into) a cycle; walk predecessors
        // until a task repeats to name an edge on the cycle.
        std::vector<bool> done(n);
        for (TaskId u : order) done[static_cast<std::size_t>(u)] = true;
        TaskId cur = -1;
        for (std::size_t i = 0; i < n && cur < 0; ++i)
            if (!done[i]) cur = static_cast<TaskId>(i);
        std::vector<int> seen(n, 0);
        TaskId prev = cur;
        while (!seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = 1;
            prev = cur;
            for (TaskId p : predecessors(cur))
                if (!done[static_cast<std::size_t>(p)]) {
                    cur = p;
                    break;
                }
        }
        // cur repeats; the edge cur -> (its successor on the walk) is on the cycle.
        TaskId to = prev;
        for (TaskId s : successors(cur))
            if (!done[static_cast<std::size_t>(s)] && seen[static_cast<std::size_t>(s)]) {
                to = s;
                break;
            }
        throw CycleError("cycle detected through edge " + std::to_string(cur) + " -> " +
                             std::to_string(to),
                         cur, to);
    }
    return order;
}

std::int64_t TaskGraph::total_weight(const WeightModel& w) const {
    std::int64_t s = 0;
    for (const auto& t : tasks_) s += w(t.kind);
    return s;
}

TaskGraph TaskGraph::induced_mask(const std::vector<bool>& keep) const {
    std::vector<TaskId> remap(tasks_.size(), -1);
    std::vector<Task> sub;
    for (std::size_t i = 0; i < tasks_.size(); ++i) {
        if (!keep[i]) continue;
        remap[i] = static_cast<TaskId>(sub.size());
        sub.push_back(tasks_[i]);
        sub.back().id = remap[i];
    }
    std::vector<Edge> e;
    for (const auto& ed : edges_) {
        auto f = remap[static_cast<std::size_t>(ed.from)];
        auto t = remap[static_cast<std::size_t>(ed.to)];
        if (f >= 0 && t >= 0) e.push_back({f, t, ed.cause});
    }
    return TaskGraph(std::move(sub), std::move(e));
}

std::vector<bool> TaskGraph::redundant_edges() const {
    const auto n = tasks_.size();
    const std::size_t words = (n + 63) / 64;
    // reach[u] = tasks reachable from u through at least one edge.
    std::vector<std::uint64_t> reach(n * words, 0);
    auto order = topological_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto u = static_cast<std::size_t>(*it);
        for (TaskId v : successors(*it)) {
            auto vi = static_cast<std::size_t>(v);
            reach[u * words + vi / 64] |= std::uint64_t{1} << (vi % 64);
            for (std::size_t w = 0; w < words; ++w) reach[u * words + w] |= reach[vi * words + w];
        }
    }
    std::vector<bool> out(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        auto t = static_cast<std::size_t>(edges_[e].to);
        for (TaskId s : successors(edges_[e].from)) {
            auto si = static_cast<std::size_t>(s);
            if (si != t && (reach[si * words + t / 64] >> (t % 64) & 1)) {
                out[e] = true;
                break;
            }
        }
    }
    return out;
}

namespace {

struct TileHash {
    std::size_t operator()(const TileRef& t) const noexcept {
        std::uint64_t h = (std::uint64_t{t.matrix} << 42) ^
                          (static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.row)) << 21) ^
                          static_cast<std::uint32_t>(t.col);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return static_cast<std::size_t>(h);
    }
};

struct TileState {
    TaskId last_writer = -1;
    std::vector<TaskId> readers;  // since last_writer
};

bool contains(const std::vector<TileRef>& v, const TileRef& t) {
    return std::find(v.begin(), v.end(), t) != v.end();
}

}  // namespace

TaskGraph build_from_trace(Trace trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (i > 0)
            require(trace[i].id > trace[i - 1].id,
                    "task ids must be strictly increasing (duplicate or reordered id " +
                        std::to_string(trace[i].id) + ")");
        require(trace[i].kind == KernelKind::BARRIER || !trace[i].writes.empty(),
                "task " + trace[i].label() + " writes nothing");
    }
    // Renumber densely; strictly increasing ids preserve order.
    for (std::size_t i = 0; i < trace.size(); ++i) trace[i].id = static_cast<TaskId>(i);

    std::unordered_map<TileRef, TileState, TileHash> tiles;
    std::vector<Edge> edges;
    std::vector<bool> has_succ(trace.size(), false);
    TaskId last_barrier = -1;
    std::vector<Edge> local;

    for (const auto& t : trace) {
        const TaskId id = t.id;
        local.clear();
        if (t.kind == KernelKind::BARRIER) {
            for (TaskId u = last_barrier + 1; u < id; ++u)
                if (!has_succ[static_cast<std::size_t>(u)]) local.push_back({u, id, EdgeCause::EXPLICIT});
            if (local.empty() && last_barrier >= 0)
                local.push_back({last_barrier, id, EdgeCause::EXPLICIT});
            last_barrier = id;
        } else {
            for (const auto& r : t.reads) {
                auto& st = tiles[r];
                if (st.last_writer >= 0) local.push_back({st.last_writer, id, EdgeCause::RAW});
            }
            for (const auto& w : t.writes) {
                auto& st = tiles[w];
                bool self_read = contains(t.reads, w);
                bool war = false;
                for (TaskId r : st.readers)
                    if (r != id) {
                        local.push_back({r, id, EdgeCause::WAR});
                        war = true;
                    }
                if (!war && !self_read && st.last_writer >= 0)
                    local.push_back({st.last_writer, id, EdgeCause::WAW});
            }
            if (last_barrier >= 0) {
                bool inside = std::any_of(local.begin(), local.end(),
                                          [&](const Edge& e) { return e.from > last_barrier; });
                if (!inside) local.push_back({last_barrier, id, EdgeCause::EXPLICIT});
            }
            for (const auto& w : t.writes) {
                auto& st = tiles[w];
                st.last_writer = id;
                st.readers.clear();
            }
            for (const auto& r : t.reads)
                if (!contains(t.writes, r)) {
                    auto& rd = tiles[r].readers;
                    if (rd.empty() || rd.back() != id) rd.push_back(id);
                }
        }
        for (const auto& e : local) {
            has_succ[static_cast<std::size_t>(e.from)] = true;
            edges.push_back(e);
        }
    }
    TaskGraph g(std::move(trace), std::move(edges));
    return g;
}

void write_text(std::ostream& os, const TaskGraph& g, const WeightModel& w) {
    for (const auto& t : g.tasks()) {
        os << "task " << t.id << ' ' << kernel_name(t.kind) << ' ';
        os << '(';
        for (std::size_t i = 0; i < t.nidx; ++i) os << (i ? "," : "") << t.idx[i];
        os << ") w=" << w(t.kind) << '\n';
    }
    for (const auto& e : g.edges())
        os << "edge " << e.from << ' ' << e.to << ' ' << cause_name(e.cause) << '\n';
}

void write_dot(std::ostream& os, const TaskGraph& g, const WeightModel& w) {
    os << "digraph tasks {\n";
    for (const auto& t : g.tasks())
        os << "  t" << t.id << " [label=\"" << t.label() << "\\nw=" << w(t.kind) << "\"];\n";
    for (const auto& e : g.edges()) {
        os << "  t" << e.from << " -> t" << e.to;
        if (e.cause != EdgeCause::RAW) os << " [style=dashed,label=\"" << cause_name(e.cause) << "\"]";
        os << ";\n";
    }
    os << "}\n";
}

}  // namespace tiledag
