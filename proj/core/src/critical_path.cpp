#include "tiledag/critical_path.hpp"

#include <algorithm>
#include <map>

namespace tiledag {

CpAnnotation annotate_cp(const TaskGraph& g, const WeightModel& w) {
    const auto n = g.size();
    CpAnnotation a;
    a.weight.resize(n);
    a.priority.assign(n, 0);
    a.earliest_start.assign(n, 0);
    a.latest_start.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        a.weight[i] = w(g.tasks()[i].kind);
        a.total_weight += a.weight[i];
    }
    const auto order = g.topological_order();
    for (TaskId u : order) {
        auto ui = static_cast<std::size_t>(u);
        auto fin = a.earliest_start[ui] + a.weight[ui];
        for (TaskId v : g.successors(u)) {
            auto& es = a.earliest_start[static_cast<std::size_t>(v)];
            es = std::max(es, fin);
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto ui = static_cast<std::size_t>(*it);
        std::int64_t best = 0;
        for (TaskId v : g.successors(*it)) best = std::max(best, a.priority[static_cast<std::size_t>(v)]);
        a.priority[ui] = a.weight[ui] + best;
        a.cp_length = std::max(a.cp_length, a.priority[ui]);
    }
    for (std::size_t i = 0; i < n; ++i) a.latest_start[i] = a.cp_length - a.priority[i];
    return a;
}

std::int64_t cp_length(const TaskGraph& g, const WeightModel& w) { return annotate_cp(g, w).cp_length; }

std::int64_t AlapProfile::active_at(std::int64_t t) const {
    std::int64_t v = 0;
    for (const auto& [time, act] : breakpoints) {
        if (time > t) break;
        v = act;
    }
    return v;
}

std::int64_t AlapProfile::max_active() const {
    std::int64_t m = 0;
    for (const auto& bp : breakpoints) m = std::max(m, bp.second);
    return m;
}

AlapProfile alap_profile(const CpAnnotation& cp) {
    std::map<std::int64_t, std::int64_t> delta;
    for (std::size_t i = 0; i < cp.weight.size(); ++i) {
        if (cp.weight[i] == 0) continue;
        delta[cp.latest_start[i]] += 1;
        delta[cp.latest_start[i] + cp.weight[i]] -= 1;
    }
    AlapProfile p;
    p.horizon = cp.cp_length;
    std::int64_t active = 0;
    std::int64_t prev_t = 0;
    if (delta.empty() || delta.begin()->first > 0) p.breakpoints.emplace_back(0, 0);
    for (const auto& [t, d] : delta) {
        p.area += active * (t - prev_t);
        active += d;
        prev_t = t;
        if (!p.breakpoints.empty() && p.breakpoints.back().first == t)
            p.breakpoints.back().second = active;
        else if (p.breakpoints.empty() || p.breakpoints.back().second != active)
            p.breakpoints.emplace_back(t, active);
    }
    if (p.breakpoints.back().first != p.horizon || p.breakpoints.back().second != 0)
        p.breakpoints.emplace_back(p.horizon, 0);
    return p;
}

AlapProfile alap_profile(const TaskGraph& g, const WeightModel& w) { return alap_profile(annotate_cp(g, w)); }

}  // namespace tiledag
