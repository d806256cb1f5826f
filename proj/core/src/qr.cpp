#include "tiledag/qr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tiledag/error.hpp"

namespace tiledag::qr {

namespace {

using K = KernelKind;

void check_dims(int p, int q) {
    require(q >= 1, "q must be at least 1");
    require(p >= q, "p must be at least q (got p=" + std::to_string(p) + ", q=" + std::to_string(q) + ")");
}

std::string entry_str(const Elim& e) {
    return "elim(" + std::to_string(e.i) + "," + std::to_string(e.piv) + "," + std::to_string(e.k) + ")";
}

void sort_by_step(std::vector<Elim>& v) {
    std::stable_sort(v.begin(), v.end(), [](const Elim& a, const Elim& b) {
        return std::tie(a.k, a.step, a.i) < std::tie(b.k, b.step, b.i);
    });
}

}  // namespace

std::int64_t TileTable::max() const {
    return v_.empty() ? 0 : *std::max_element(v_.begin(), v_.end());
}

// ---- Elimination lists -------------------------------------------------

void validate(const EliminationList& list) {
    const int p = list.p;
    const int q = list.q;
    check_dims(p, q);
    const int kmax = std::min(p, q);
    std::vector<std::vector<bool>> zeroed(static_cast<std::size_t>(p + 1),
                                          std::vector<bool>(static_cast<std::size_t>(q + 1), false));
    auto ready = [&](int r, int k) {
        for (int kk = 1; kk < k; ++kk)
            if (!zeroed[r][kk]) return false;
        return true;
    };
    for (const auto& e : list.entries) {
        const std::string s = entry_str(e);
        require(e.k >= 1 && e.k <= kmax, s + ": column out of range");
        require(e.i > e.k && e.i <= p, s + ": only sub-diagonal tiles are zeroed");
        require(e.piv >= e.k && e.piv <= p, s + ": pivot row out of range");
        require(e.i != e.piv, s + ": row cannot annihilate itself");
        require(!zeroed[e.i][e.k], s + ": tile already zeroed");
        require(ready(e.i, e.k), s + ": row " + std::to_string(e.i) + " not ready (tiles left of the panel not zeroed)");
        require(ready(e.piv, e.k), s + ": pivot row " + std::to_string(e.piv) + " not ready (tiles left of the panel not zeroed)");
        require(!zeroed[e.piv][e.k], s + ": pivot is not a potential annihilator (already zeroed)");
        zeroed[e.i][e.k] = true;
    }
    for (int k = 1; k <= kmax; ++k)
        for (int i = k + 1; i <= p; ++i)
            require(zeroed[i][k], "tile (" + std::to_string(i) + "," + std::to_string(k) + ") is never zeroed");
}

EliminationList normalize(const EliminationList& list) {
    EliminationList out{list.p, list.q, {}};
    std::vector<int> label(static_cast<std::size_t>(list.p + 1));
    std::iota(label.begin(), label.end(), 0);
    for (const auto& e : list.entries) {
        int a = label[e.i];
        int b = label[e.piv];
        if (a < b) {
            std::swap(label[e.i], label[e.piv]);
            std::swap(a, b);
        }
        out.entries.push_back({a, b, e.k, e.step});
    }
    return out;
}

TileTable coarse_times(const EliminationList& list) {
    TileTable t(list.p, list.q);
    std::vector<std::int64_t> last(static_cast<std::size_t>(list.p + 1), 0);
    for (const auto& e : list.entries) {
        std::int64_t s = 1 + std::max(last[e.i], last[e.piv]);
        t.at(e.i, e.k) = s;
        last[e.i] = last[e.piv] = s;
    }
    return t;
}

int fibonacci_x(int p) {
    int x = 0;
    while (x * (x + 1) / 2 < p - 1) ++x;
    return x;
}

namespace {

// Rows with equal step in a column form a block i..i+z-1, each paired with
// the row z above it.
EliminationList pair_blocks(int p, int q, const TileTable& table) {
    EliminationList list{p, q, {}};
    const int kmax = std::min(p, q);
    for (int k = 1; k <= kmax; ++k) {
        int i = k + 1;
        while (i <= p) {
            int j = i;
            while (j + 1 <= p && table.at(j + 1, k) == table.at(i, k)) ++j;
            const int z = j - i + 1;
            for (int r = i; r <= j; ++r)
                list.entries.push_back({r, r - z, k, static_cast<int>(table.at(r, k))});
            i = j + 1;
        }
    }
    sort_by_step(list.entries);
    return list;
}

CoarseResult greedy_coarse(int p, int q) {
    CoarseResult res{TileTable(p, q), EliminationList{p, q, {}}};
    const int kmax = std::min(p, q);
    for (int k = 1; k <= kmax; ++k) {
        std::vector<int> alive;
        for (int i = k; i <= p; ++i) alive.push_back(i);
        auto ready_after = [&](int r) -> std::int64_t { return k == 1 ? 0 : res.table.at(r, k - 1); };
        for (int s = 1; alive.size() > 1; ++s) {
            std::vector<int> avail;
            for (int r : alive)
                if (ready_after(r) < s) avail.push_back(r);
            const std::size_t m = avail.size();
            const std::size_t z = m / 2;
            for (std::size_t j = 0; j < z; ++j) {
                int row = avail[m - z + j];
                int piv = avail[m - 2 * z + j];
                res.table.at(row, k) = s;
                res.list.entries.push_back({row, piv, k, s});
                alive.erase(std::find(alive.begin(), alive.end(), row));
            }
        }
    }
    sort_by_step(res.list.entries);
    return res;
}

}  // namespace

CoarseResult coarse_schedule(int p, int q, CoarseAlgo algo) {
    check_dims(p, q);
    const int kmax = std::min(p, q);
    switch (algo) {
        case CoarseAlgo::SamehKuck: {
            CoarseResult r{TileTable(p, q), flat_tree_list(p, q)};
            for (auto& e : r.list.entries) {
                e.step = e.i + e.k - 2;
                r.table.at(e.i, e.k) = e.step;
            }
            return r;
        }
        case CoarseAlgo::Fibonacci: {
            TileTable t(p, q);
            const int x = fibonacci_x(p);
            for (int i = 2; i <= p; ++i) {
                int y = 0;
                while (i > y * (y + 1) / 2 + 1) ++y;
                t.at(i, 1) = x - y + 1;
            }
            for (int k = 2; k <= kmax; ++k)
                for (int i = k + 1; i <= p; ++i) t.at(i, k) = t.at(i - 1, k - 1) + 2;
            return {t, pair_blocks(p, q, t)};
        }
        case CoarseAlgo::Greedy:
            return greedy_coarse(p, q);
    }
    return {};
}

std::int64_t coarse_cp_oracle(int p, int q, CoarseAlgo algo) {
    check_dims(p, q);
    switch (algo) {
        case CoarseAlgo::SamehKuck:
            if (p == q) return q > 1 ? 2 * q - 3 : 0;
            return p + q - 2;
        case CoarseAlgo::Fibonacci: {
            const int x = fibonacci_x(p);
            if (p == q) return q > 1 ? x + 2 * q - 4 : 0;
            return x + 2 * q - 2;
        }
        case CoarseAlgo::Greedy:
            return coarse_schedule(p, q, algo).table.max();
    }
    return 0;
}

EliminationList flat_tree_list(int p, int q) {
    check_dims(p, q);
    EliminationList list{p, q, {}};
    for (int k = 1; k <= std::min(p, q); ++k)
        for (int i = k + 1; i <= p; ++i) list.entries.push_back({i, k, k, 0});
    return list;
}

EliminationList plasma_tree_list(int p, int q, int bs) {
    check_dims(p, q);
    require(bs >= 1 && bs <= p, "domain size must satisfy 1 <= BS <= p");
    EliminationList list{p, q, {}};
    for (int k = 1; k <= std::min(p, q); ++k) {
        std::vector<int> heads;
        for (int h = k; h <= p; h += bs) {
            heads.push_back(h);
            for (int r = h + 1; r < h + bs && r <= p; ++r) list.entries.push_back({r, h, k, 0});
        }
        const std::size_t n = heads.size();
        for (std::size_t d = 1; d < n; d *= 2)
            for (std::size_t m = 0; m + d < n; m += 2 * d) list.entries.push_back({heads[m + d], heads[m], k, 0});
    }
    return list;
}

// ---- Tiled graphs ------------------------------------------------------

Trace tiled_trace(const EliminationList& list, Family family) {
    validate(list);
    const int p = list.p;
    const int q = list.q;
    auto A = [](int i, int j) { return TileRef{kMain, i, j}; };
    auto V = [](int i, int j) { return TileRef{kV, i, j}; };
    auto T = [](int i, int j) { return TileRef{kT, i, j}; };

    TraceBuilder tb;
    std::size_t pos = 0;
    for (int k = 1; k <= q; ++k) {
        const std::size_t begin = pos;
        while (pos < list.entries.size() && list.entries[pos].k == k) ++pos;
        require(std::all_of(list.entries.begin() + static_cast<std::ptrdiff_t>(pos), list.entries.end(),
                            [&](const Elim& e) { return e.k > k; }),
                "elimination lists must be ordered by column");
        std::vector<bool> tri(static_cast<std::size_t>(p + 1), family == Family::TT);
        if (k <= p) tri[k] = true;
        if (family == Family::TS)
            for (std::size_t e = begin; e < pos; ++e) tri[list.entries[e].piv] = true;

        for (int i = k; i <= p; ++i) {
            if (!tri[i]) continue;
            tb.add(K::GEQRT, {i, k}, {A(i, k)}, {A(i, k), V(i, k)});
            for (int j = k + 1; j <= q; ++j) tb.add(K::UNMQR, {i, k, j}, {V(i, k), A(i, j)}, {A(i, j)});
        }
        for (std::size_t e = begin; e < pos; ++e) {
            const auto [i, piv, kk, step] = list.entries[e];
            (void)kk;
            (void)step;
            if (tri[i]) {
                tb.add(K::TTQRT, {i, piv, k}, {A(i, k), A(piv, k)}, {A(i, k), A(piv, k), T(i, k)});
                for (int j = k + 1; j <= q; ++j)
                    tb.add(K::TTMQR, {i, piv, k, j}, {T(i, k), A(i, j), A(piv, j)}, {A(i, j), A(piv, j)});
            } else {
                tb.add(K::TSQRT, {i, piv, k}, {A(i, k), A(piv, k)}, {A(i, k), A(piv, k), T(i, k)});
                for (int j = k + 1; j <= q; ++j)
                    tb.add(K::TSMQR, {i, piv, k, j}, {A(i, k), T(i, k), A(i, j), A(piv, j)},
                           {A(i, j), A(piv, j)});
            }
        }
    }
    return tb.take();
}

namespace {

// Unbounded-processor replay of TT kernels in trace order. Every TT kernel
// only reads data it (or a single earlier kernel) wrote, so per-tile ready
// times reproduce the earliest start times of the hazard DAG.
class TTSim {
public:
    TTSim(int p, int q)
        : p_(p), q_(q), avail_(static_cast<std::size_t>((p + 1) * (q + 1)), 0) {}

    std::int64_t& at(int i, int j) { return avail_[static_cast<std::size_t>(i * (q_ + 1) + j)]; }

    void factor_column(int k) {
        for (int i = k; i <= p_; ++i) {
            at(i, k) += 4;
            const std::int64_t g = at(i, k);
            for (int j = k + 1; j <= q_; ++j) at(i, j) = std::max(g, at(i, j)) + 6;
        }
    }

    void eliminate(int i, int piv, int k) {
        const std::int64_t fin = std::max(at(i, k), at(piv, k)) + 2;
        at(i, k) = at(piv, k) = fin;
        for (int j = k + 1; j <= q_; ++j) {
            const std::int64_t f = std::max({fin, at(i, j), at(piv, j)}) + 6;
            at(i, j) = at(piv, j) = f;
        }
    }

    // Asap on column k; appends the chosen eliminations in start order.
    void asap_column(int k, std::vector<Elim>& out) {
        std::vector<int> alive;
        for (int i = k; i <= p_; ++i) alive.push_back(i);
        while (alive.size() > 1) {
            std::vector<std::int64_t> times;
            for (int r : alive) times.push_back(at(r, k));
            std::nth_element(times.begin(), times.begin() + 1, times.end());
            const std::int64_t tau = std::max(times[0], times[1]);
            std::vector<int> avail;
            for (int r : alive)
                if (at(r, k) <= tau) avail.push_back(r);
            const std::size_t m = avail.size();
            const std::size_t s = m / 2;
            for (std::size_t j = 0; j < s; ++j) {
                const int row = avail[m - s + j];
                const int piv = avail[m - 2 * s + j];
                eliminate(row, piv, k);
                out.push_back({row, piv, k, 0});
                alive.erase(std::find(alive.begin(), alive.end(), row));
            }
        }
    }

private:
    int p_, q_;
    std::vector<std::int64_t> avail_;
};

EliminationList mixed_list(int p, int q, int greedy_cols) {
    EliminationList list{p, q, {}};
    const auto greedy = greedy_cols > 0 ? coarse_schedule(p, q, CoarseAlgo::Greedy).list : EliminationList{};
    TTSim sim(p, q);
    std::size_t pos = 0;
    for (int k = 1; k <= std::min(p, q); ++k) {
        sim.factor_column(k);
        if (k <= greedy_cols) {
            for (; pos < greedy.entries.size() && greedy.entries[pos].k == k; ++pos) {
                const auto& e = greedy.entries[pos];
                sim.eliminate(e.i, e.piv, k);
                list.entries.push_back(e);
            }
        } else {
            sim.asap_column(k, list.entries);
        }
    }
    return list;
}

}  // namespace

EliminationList asap_list(int p, int q) {
    check_dims(p, q);
    return mixed_list(p, q, 0);
}

EliminationList grasap_list(int p, int q, int i) {
    check_dims(p, q);
    require(i >= 1 && i <= q, "GrASAP needs 1 <= i <= q trailing Asap columns");
    return mixed_list(p, q, q - i);
}

Trace asap_graph(int p, int q) { return tiled_trace(asap_list(p, q), Family::TT); }
Trace grasap_graph(int p, int q, int i) { return tiled_trace(grasap_list(p, q, i), Family::TT); }

std::optional<TiledAlgo> TiledAlgo::parse(std::string_view s) {
    std::string name(s);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    std::string arg;
    if (auto c = name.find(':'); c != std::string::npos) {
        arg = name.substr(c + 1);
        name = name.substr(0, c);
    }
    auto num = [&](int dflt) -> std::optional<int> {
        if (arg.empty()) return dflt;
        try {
            std::size_t used = 0;
            int v = std::stoi(arg, &used);
            if (used != arg.size()) return std::nullopt;
            return v;
        } catch (...) {
            return std::nullopt;
        }
    };
    TiledAlgo a;
    if (name == "flattree" || name == "flat" || name == "samehkuck" || name == "sameh-kuck") {
        a.tag = Tag::FlatTree;
    } else if (name == "fibonacci" || name == "fib") {
        a.tag = Tag::Fibonacci;
    } else if (name == "greedy") {
        a.tag = Tag::Greedy;
    } else if (name == "binarytree" || name == "binary") {
        a.tag = Tag::BinaryTree;
    } else if (name == "plasmatree" || name == "plasma") {
        a.tag = Tag::PlasmaTree;
        auto v = num(-1);
        if (!v || *v < 1) return std::nullopt;
        a.bs = *v;
        return a;
    } else if (name == "asap") {
        a.tag = Tag::Asap;
    } else if (name == "grasap") {
        a.tag = Tag::GrASAP;
        auto v = num(1);
        if (!v || *v < 1) return std::nullopt;
        a.i = *v;
        return a;
    } else {
        return std::nullopt;
    }
    if (!arg.empty()) return std::nullopt;
    return a;
}

std::string TiledAlgo::name() const {
    switch (tag) {
        case Tag::FlatTree: return "flattree";
        case Tag::Fibonacci: return "fibonacci";
        case Tag::Greedy: return "greedy";
        case Tag::BinaryTree: return "binarytree";
        case Tag::PlasmaTree: return "plasmatree:" + std::to_string(bs);
        case Tag::Asap: return "asap";
        case Tag::GrASAP: return "grasap:" + std::to_string(i);
    }
    return "?";
}

EliminationList elimination_list(int p, int q, const TiledAlgo& algo) {
    using Tag = TiledAlgo::Tag;
    switch (algo.tag) {
        case Tag::FlatTree: return flat_tree_list(p, q);
        case Tag::Fibonacci: return coarse_schedule(p, q, CoarseAlgo::Fibonacci).list;
        case Tag::Greedy: return coarse_schedule(p, q, CoarseAlgo::Greedy).list;
        case Tag::BinaryTree: return binary_tree_list(p, q);
        case Tag::PlasmaTree: return plasma_tree_list(p, q, algo.bs);
        case Tag::Asap: return asap_list(p, q);
        case Tag::GrASAP: return grasap_list(p, q, std::min(algo.i, q));
    }
    return {};
}

TileTable zeroed_times(const TaskGraph& g, const CpAnnotation& cp, int p, int q) {
    TileTable t(p, q);
    for (const auto& task : g.tasks())
        if (task.kind == K::TTQRT || task.kind == K::TSQRT)
            t.at(task.idx[0], task.idx[2]) = cp.earliest_finish(task.id);
    return t;
}

std::pair<TileTable, TileTable> ttmqr_finish_range(const TaskGraph& g, const CpAnnotation& cp, int p, int q) {
    TileTable lo(p, q), hi(p, q);
    for (const auto& task : g.tasks()) {
        if (task.kind != K::TTMQR) continue;
        const int i = task.idx[0];
        const int k = task.idx[2];
        const std::int64_t f = cp.earliest_finish(task.id);
        lo.at(i, k) = lo.at(i, k) == 0 ? f : std::min(lo.at(i, k), f);
        hi.at(i, k) = std::max(hi.at(i, k), f);
    }
    return {lo, hi};
}

std::int64_t tiled_translation(int i, int k, const TileTable& coarse) {
    require(k >= 1 && k <= coarse.q() - 1, "the translation holds for columns 1..q-1 only");
    require(i > k && i <= coarse.p(), "row must lie below the diagonal");
    return 10 * static_cast<std::int64_t>(k) + 6 * coarse.at(i, k);
}

std::int64_t total_weight(int p, int q) {
    check_dims(p, q);
    const std::int64_t P = p, Q = q;
    return 6 * P * Q * Q - 2 * Q * Q * Q;
}

bool verify_weight(const TaskGraph& g, int p, int q) {
    return g.total_weight(WeightModel::qr_full()) == total_weight(p, q);
}

std::int64_t flattree_cp_oracle(int p, int q) {
    check_dims(p, q);
    if (q == 1) return 2 * static_cast<std::int64_t>(p) + 2;
    if (p == q) return 22 * static_cast<std::int64_t>(p) - 24;
    return 6 * static_cast<std::int64_t>(p) + 16 * static_cast<std::int64_t>(q) - 22;
}

std::pair<std::int64_t, std::int64_t> fibonacci_cp_bounds(int p, int q) {
    check_dims(p, q);
    const auto s = static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * p) - 1e-12));
    return {22 * static_cast<std::int64_t>(q) - 30, 22 * static_cast<std::int64_t>(q) + 6 * s};
}

std::int64_t tiled_cp(int p, int q, const TiledAlgo& algo, Family family) {
    auto g = build_from_trace(tiled_trace(elimination_list(p, q, algo), family));
    return cp_length(g, WeightModel::qr_full());
}

}  // namespace tiledag::qr
