#include "tiledag/sched.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <set>

#include "tiledag/cholesky.hpp"
#include "tiledag/error.hpp"

namespace tiledag {

namespace {

using K = KernelKind;

struct Running {
    std::int64_t finish;
    TaskId id;
    int proc;
    bool operator>(const Running& o) const { return std::tie(finish, id) > std::tie(o.finish, o.id); }
};

}  // namespace

Schedule list_schedule(const TaskGraph& g, const CpAnnotation& cp, int procs, Policy policy, std::uint64_t seed) {
    require(procs >= 1, "processor count must be at least 1");
    const std::size_t n = g.size();
    Schedule s;
    s.procs = procs;
    s.slots.assign(n, Slot{});

    std::vector<std::size_t> missing(n);
    for (std::size_t i = 0; i < n; ++i) missing[i] = g.predecessors(static_cast<TaskId>(i)).size();

    // Positive-weight ready tasks ordered by (key, id); RandomCP keeps a
    // plain vector and draws from it.
    std::set<std::pair<std::int64_t, TaskId>> ready;
    std::vector<TaskId> ready_rand;
    std::vector<TaskId> instant;
    std::mt19937_64 rng(seed);

    auto make_ready = [&](TaskId v) {
        const auto vi = static_cast<std::size_t>(v);
        if (cp.weight[vi] == 0) {
            instant.push_back(v);
        } else if (policy == Policy::RandomCP) {
            ready_rand.push_back(v);
        } else {
            const std::int64_t key = policy == Policy::MaxCP ? -cp.priority[vi] : cp.priority[vi];
            ready.emplace(key, v);
        }
    };
    auto ready_empty = [&] { return policy == Policy::RandomCP ? ready_rand.empty() : ready.empty(); };
    auto pop_ready = [&]() -> TaskId {
        if (policy == Policy::RandomCP) {
            const std::size_t k = static_cast<std::size_t>(rng() % ready_rand.size());
            const TaskId v = ready_rand[k];
            ready_rand.erase(ready_rand.begin() + static_cast<std::ptrdiff_t>(k));
            return v;
        }
        const TaskId v = ready.begin()->second;
        ready.erase(ready.begin());
        return v;
    };

    std::size_t done = 0;
    std::int64_t now = 0;
    auto release = [&](TaskId u) {
        ++done;
        for (TaskId v : g.successors(u))
            if (--missing[static_cast<std::size_t>(v)] == 0) make_ready(v);
    };

    for (std::size_t i = 0; i < n; ++i)
        if (missing[i] == 0) make_ready(static_cast<TaskId>(i));

    std::set<int> idle;
    for (int p = 0; p < procs; ++p) idle.insert(p);
    std::priority_queue<Running, std::vector<Running>, std::greater<>> running;

    while (true) {
        while (!instant.empty()) {
            std::vector<TaskId> batch;
            batch.swap(instant);
            std::sort(batch.begin(), batch.end());
            for (TaskId v : batch) {
                s.slots[static_cast<std::size_t>(v)] = Slot{idle.empty() ? 0 : *idle.begin(), now, now};
                release(v);
            }
        }
        while (!idle.empty() && !ready_empty()) {
            const TaskId v = pop_ready();
            const int p = *idle.begin();
            idle.erase(idle.begin());
            const std::int64_t fin = now + cp.weight[static_cast<std::size_t>(v)];
            s.slots[static_cast<std::size_t>(v)] = Slot{p, now, fin};
            running.push(Running{fin, v, p});
        }
        if (running.empty()) break;
        now = running.top().finish;
        while (!running.empty() && running.top().finish == now) {
            const Running r = running.top();
            running.pop();
            idle.insert(r.proc);
            release(r.id);
        }
    }
    if (done != n) throw CycleError("graph has a cycle; list scheduling stalled", -1, -1);
    for (const auto& sl : s.slots) s.makespan = std::max(s.makespan, sl.finish);
    return s;
}

Schedule list_schedule(const TaskGraph& g, const WeightModel& w, int procs, Policy policy, std::uint64_t seed) {
    return list_schedule(g, annotate_cp(g, w), procs, policy, seed);
}

std::vector<std::string> validate_schedule(const TaskGraph& g, const WeightModel& w, const Schedule& s) {
    std::vector<std::string> errs;
    if (s.slots.size() != g.size()) {
        errs.push_back("schedule covers " + std::to_string(s.slots.size()) + " tasks, graph has " +
                       std::to_string(g.size()));
        return errs;
    }
    std::int64_t mk = 0;
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> per_proc(static_cast<std::size_t>(s.procs));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto& sl = s.slots[i];
        const auto& t = g.tasks()[i];
        if (sl.finish - sl.start != w(t.kind)) errs.push_back(t.label() + ": duration differs from weight");
        if (sl.start < 0) errs.push_back(t.label() + ": negative start");
        if (sl.proc < 0 || sl.proc >= s.procs) {
            errs.push_back(t.label() + ": processor out of range");
            continue;
        }
        if (sl.finish > sl.start) per_proc[static_cast<std::size_t>(sl.proc)].emplace_back(sl.start, sl.finish);
        mk = std::max(mk, sl.finish);
        for (TaskId u : g.predecessors(static_cast<TaskId>(i)))
            if (s.slots[static_cast<std::size_t>(u)].finish > sl.start)
                errs.push_back(g.task(u).label() + " -> " + t.label() + ": starts before predecessor finishes");
    }
    for (std::size_t p = 0; p < per_proc.size(); ++p) {
        auto& iv = per_proc[p];
        std::sort(iv.begin(), iv.end());
        for (std::size_t k = 1; k < iv.size(); ++k)
            if (iv[k].first < iv[k - 1].second)
                errs.push_back("processor " + std::to_string(p) + ": overlap at time " + std::to_string(iv[k].first));
    }
    if (mk != s.makespan) errs.push_back("makespan " + std::to_string(s.makespan) + " != last finish " + std::to_string(mk));
    return errs;
}

std::int64_t exhaustive_min_makespan(const TaskGraph& g, const WeightModel& w, int procs) {
    require(procs >= 1, "processor count must be at least 1");
    require(g.size() <= 10, "exhaustive search is limited to 10 tasks");
    const std::size_t n = g.size();
    std::vector<std::int64_t> wt(n), start(n), fin(n);
    for (std::size_t i = 0; i < n; ++i) wt[i] = w(g.tasks()[i].kind);
    std::vector<std::size_t> missing(n);
    for (std::size_t i = 0; i < n; ++i) missing[i] = g.predecessors(static_cast<TaskId>(i)).size();
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> order;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();

    auto load_ok = [&](std::int64_t t0, std::int64_t len) {
        if (len == 0) return true;
        std::vector<std::int64_t> points{t0};
        for (std::size_t u : order)
            if (start[u] > t0 && start[u] < t0 + len) points.push_back(start[u]);
        for (std::int64_t x : points) {
            int busy = 0;
            for (std::size_t u : order)
                if (wt[u] > 0 && start[u] <= x && x < fin[u]) ++busy;
            if (busy >= procs) return false;
        }
        return true;
    };

    std::function<void(std::int64_t)> dfs = [&](std::int64_t mk) {
        if (mk >= best) return;
        if (order.size() == n) {
            best = mk;
            return;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (placed[v] || missing[v] != 0) continue;
            std::int64_t est = 0;
            for (TaskId u : g.predecessors(static_cast<TaskId>(v))) est = std::max(est, fin[static_cast<std::size_t>(u)]);
            std::vector<std::int64_t> cands{est};
            for (std::size_t u : order)
                if (fin[u] > est) cands.push_back(fin[u]);
            std::sort(cands.begin(), cands.end());
            std::int64_t t0 = cands.front();
            for (std::int64_t c : cands)
                if (load_ok(c, wt[v])) {
                    t0 = c;
                    break;
                }
            start[v] = t0;
            fin[v] = t0 + wt[v];
            placed[v] = true;
            order.push_back(v);
            for (TaskId x : g.successors(static_cast<TaskId>(v))) --missing[static_cast<std::size_t>(x)];
            dfs(std::max(mk, fin[v]));
            for (TaskId x : g.successors(static_cast<TaskId>(v))) ++missing[static_cast<std::size_t>(x)];
            order.pop_back();
            placed[v] = false;
        }
    };
    dfs(0);
    return n == 0 ? 0 : best;
}

Policy parse_policy(const std::string& s) {
    if (s == "max" || s == "maxcp") return Policy::MaxCP;
    if (s == "min" || s == "mincp") return Policy::MinCP;
    if (s == "rand" || s == "random" || s == "randcp") return Policy::RandomCP;
    throw ContractError("unknown policy '" + s + "' (expected max, min or rand)");
}

// ---- Synchronized Cholesky ---------------------------------------------

TaskGraph sync_chol_graph(int t, SyncVariant variant) {
    require(t >= 1, "t must be at least 1");
    auto a = [](int i, int j) { return TileRef{chol::kA, i, j}; };
    TraceBuilder tb;
    std::vector<std::vector<TaskId>> groups;
    std::vector<bool> sync_after;  // sync between groups[g] and groups[g + 1]
    auto open = [&](bool sync_before) {
        if (!groups.empty()) sync_after.back() = sync_before;
        groups.emplace_back();
        sync_after.push_back(false);
    };
    auto add = [&](K kind, std::initializer_list<std::int32_t> idx, std::vector<TileRef> r, std::vector<TileRef> w) {
        groups.back().push_back(tb.add(kind, idx, std::move(r), std::move(w), 1).id);
    };
    auto gemm = [&](int j, int i, int k) { add(K::GEMM, {j, k, i}, {a(j, i), a(k, i), a(j, k)}, {a(j, k)}); };
    auto syrk = [&](int j, int i) { add(K::SYRK, {j, i}, {a(j, i), a(j, j)}, {a(j, j)}); };
    for (int i = 0; i < t; ++i) {
        open(variant == SyncVariant::Grouped);
        add(K::POTRF, {i}, {a(i, i)}, {a(i, i)});
        if (i + 1 == t) break;
        open(true);
        for (int j = i + 1; j < t; ++j) add(K::TRSM, {j, i}, {a(i, i), a(j, i)}, {a(j, i)});
        open(true);
        if (variant == SyncVariant::Grouped) {
            for (int j = i + 1; j < t; ++j)
                for (int k = i + 1; k < j; ++k) gemm(j, i, k);
            open(true);
            for (int j = i + 1; j < t; ++j) syrk(j, i);
        } else {
            for (int j = i + 1; j < t; ++j) {
                for (int k = i + 1; k < j; ++k) gemm(j, i, k);
                syrk(j, i);
            }
        }
    }
    auto g = build_from_trace(tb.take());
    std::vector<Task> tasks = g.tasks();
    std::vector<Edge> edges = g.edges();
    for (std::size_t k = 0; k + 1 < groups.size(); ++k)
        if (sync_after[k])
            for (TaskId u : groups[k])
                for (TaskId v : groups[k + 1]) edges.push_back({u, v, EdgeCause::EXPLICIT});
    return TaskGraph(std::move(tasks), std::move(edges));
}

Schedule sync_chol_schedule(int t, int procs, SyncVariant variant) {
    require(t >= 2, "t must be at least 2");
    return list_schedule(sync_chol_graph(t, variant), WeightModel::cholesky(), procs, Policy::MaxCP);
}

// ---- Bounds -------------------------------------------------------------

std::int64_t lost_area(const AlapProfile& profile, int procs) {
    require(procs >= 1, "processor count must be at least 1");
    const auto& bp = profile.breakpoints;
    std::int64_t tau = 0;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k)
        if (bp[k].second > procs) tau = bp[k + 1].first;
    std::int64_t la = 0;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        if (bp[k].first < tau) continue;
        la += (procs - bp[k].second) * (bp[k + 1].first - bp[k].first);
    }
    return la;
}

Rational alap_bound(const AlapProfile& profile, std::int64_t t_seq, int procs) {
    Rational v(t_seq + lost_area(profile, procs), procs);
    return std::max(v, Rational(profile.horizon));
}

Rational alap_bound(const TaskGraph& g, const WeightModel& w, int procs) {
    auto cp = annotate_cp(g, w);
    return alap_bound(alap_profile(cp), cp.total_weight, procs);
}

Rational rooftop_bound(std::int64_t cp, std::int64_t t_seq, int procs) {
    require(procs >= 1, "processor count must be at least 1");
    return std::max(Rational(cp), Rational(t_seq, procs));
}

Rational rooftop_bound(const TaskGraph& g, const WeightModel& w, int procs) {
    auto cp = annotate_cp(g, w);
    return rooftop_bound(cp.cp_length, cp.total_weight, procs);
}

Rational lower_bound_factor(std::int64_t makespan, int procs) {
    require(procs >= 1, "processor count must be at least 1");
    return Rational(makespan) / (Rational(2) - Rational(1, procs));
}

double gamma_ub(double gamma_seq, std::int64_t t_seq, std::int64_t cp, int procs) {
    require(procs >= 1, "processor count must be at least 1");
    const double t = static_cast<double>(t_seq);
    return gamma_seq * t / std::max(t / procs, static_cast<double>(cp));
}

std::vector<BoundsRow> bounds_table(const TaskGraph& g, const WeightModel& w, const std::vector<int>& procs) {
    auto cp = annotate_cp(g, w);
    auto prof = alap_profile(cp);
    std::vector<BoundsRow> rows;
    for (int p : procs) {
        BoundsRow r;
        r.p = p;
        r.lost_area = lost_area(prof, p);
        r.t_alap = alap_bound(prof, cp.total_weight, p);
        r.t_roof = rooftop_bound(cp.cp_length, cp.total_weight, p);
        r.speedup = r.t_alap == Rational(0) ? Rational(0) : Rational(cp.total_weight) / r.t_alap;
        r.efficiency = r.speedup / p;
        rows.push_back(r);
    }
    return rows;
}

AlphaResult alpha_min(int t) {
    require(t >= 3, "alpha search needs t >= 3");
    auto g = build_from_trace(chol::gen_chol_fact(t, chol::FactVariant::RightLooking));
    auto cp = annotate_cp(g, WeightModel::cholesky());
    const std::int64_t target = 9 * static_cast<std::int64_t>(t) - 10;
    for (int p = 1;; ++p) {
        auto s = list_schedule(g, cp, p, Policy::MaxCP);
        if (s.makespan == target) return {t, p, static_cast<double>(p) / (t * t), s.makespan};
        require(static_cast<std::size_t>(p) <= g.size(), "MaxCP never reaches the critical path");
    }
}

// ---- Output -------------------------------------------------------------

std::string format_fixed(const Rational& r, int decimals) {
    std::int64_t scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    std::int64_t num = r.numerator() * scale;
    const std::int64_t den = r.denominator();
    const bool neg = num < 0;
    if (neg) num = -num;
    std::int64_t q = (2 * num + den) / (2 * den);
    std::string digits = std::to_string(q);
    if (decimals > 0) {
        if (digits.size() <= static_cast<std::size_t>(decimals))
            digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
        digits.insert(digits.size() - static_cast<std::size_t>(decimals), ".");
    }
    return (neg && q != 0 ? "-" : "") + digits;
}

void write_gantt_csv(std::ostream& os, const TaskGraph& g, const Schedule& s) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (s.slots[i].finish > s.slots[i].start) ids.push_back(i);
    std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(s.slots[a].start, s.slots[a].proc) < std::tie(s.slots[b].start, s.slots[b].proc);
    });
    os << "proc,start,end,kind,i,j,k,l\n";
    for (std::size_t i : ids) {
        const auto& t = g.tasks()[i];
        const auto& sl = s.slots[i];
        os << sl.proc << ',' << sl.start << ',' << sl.finish << ',' << kernel_name(t.kind);
        for (std::size_t k = 0; k < 4; ++k) {
            os << ',';
            if (k < t.nidx) os << t.idx[k];
        }
        os << '\n';
    }
}

}  // namespace tiledag
