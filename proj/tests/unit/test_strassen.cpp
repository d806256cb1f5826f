#include <gtest/gtest.h>

#include <map>
#include <set>

#include "tiledag/critical_path.hpp"
#include "tiledag/error.hpp"
#include "tiledag/strassen.hpp"

using namespace tiledag;
using namespace tiledag::strassen;

namespace {

// Independent recursion: tasks(p, r) = 7 tasks(p/2, r-1) + 15 (p/2)^2.
std::int64_t tasks_rec(std::int64_t p, int r) {
    if (r == 0) return p * p * p;
    return 7 * tasks_rec(p / 2, r - 1) + 15 * (p / 2) * (p / 2);
}

std::int64_t temps_rec(std::int64_t p, int r) {
    if (r == 0) return 0;
    return 7 * temps_rec(p / 2, r - 1) + 18 * (p / 2) * (p / 2);
}

}  // namespace

TEST(TiledGemm, TaskCountAndChains) {
    EXPECT_EQ(gen_tiled_gemm(1).size(), 1u);
    EXPECT_EQ(gen_tiled_gemm(4).size(), 64u);
    auto g = build_from_trace(gen_tiled_gemm(8));
    EXPECT_EQ(g.size(), 512u);
    // one chain of 8 per output tile, nothing else
    EXPECT_EQ(g.edges().size(), 64u * 7u);
    EXPECT_EQ(cp_length(g, WeightModel::unit()), 8);
    for (const auto& e : g.edges()) {
        const auto& a = g.task(e.from);
        const auto& b = g.task(e.to);
        EXPECT_EQ(a.idx[0], b.idx[0]);
        EXPECT_EQ(a.idx[1], b.idx[1]);
        EXPECT_EQ(a.idx[2] + 1, b.idx[2]);
    }
    EXPECT_THROW(gen_tiled_gemm(0), ContractError);
}

TEST(Strassen, RejectsBadParameters) {
    EXPECT_THROW(gen_strassen({6, 1, 200}), ContractError);
    EXPECT_THROW(gen_strassen({8, 4, 200}), ContractError);
    EXPECT_THROW(strassen_counts({8, -1, 200}), ContractError);
}

TEST(Strassen, DegenerateRecursionIsTiledGemm) {
    EXPECT_EQ(gen_strassen({4, 0, 200}).size(), 64u);
    EXPECT_EQ(strassen_counts({4, 0, 200}).tasks, 64);
}

TEST(Strassen, PrintedTaskCounts) {
    EXPECT_EQ(strassen_counts({4, 1, 200}).tasks, 116);
    EXPECT_EQ(strassen_counts({8, 2, 200}).tasks, 1052);
    EXPECT_EQ(strassen_counts({16, 3, 200}).tasks, 8324);
    EXPECT_EQ(strassen_counts({128, 1, 200}).tasks, 1896448);
    EXPECT_EQ(strassen_counts({128, 3, 200}).tasks, 1762048);
    EXPECT_EQ(strassen_counts({128, 4, 200}).tasks, 1915712);
}

TEST(Strassen, GeneratorMatchesClosedForms) {
    for (int p : {1, 2, 4, 8, 16, 32, 64})
        for (int r = 0; (1 << r) <= p && r <= 5; ++r) {
            if (p == 64 && r == 5) continue;  // 450k tasks; covered by the recursion check
            Params pr{p, r, 200};
            auto trace = gen_strassen(pr);
            auto c = strassen_counts(pr);
            std::int64_t mults = 0, adds = 0;
            std::set<std::uint32_t> temps;
            std::map<std::uint32_t, std::set<std::pair<int, int>>> tiles;
            for (const auto& t : trace) {
                (t.kind == KernelKind::GEMM ? mults : adds) += 1;
                for (const auto& w : t.writes)
                    if (w.matrix >= kFirstTemp) tiles[w.matrix].insert({w.row, w.col});
            }
            std::int64_t temp_tiles = 0;
            for (auto& [m, s] : tiles) temp_tiles += static_cast<std::int64_t>(s.size());
            EXPECT_EQ(static_cast<std::int64_t>(trace.size()), c.tasks) << p << "," << r;
            EXPECT_EQ(mults, c.mults);
            EXPECT_EQ(adds, c.adds);
            EXPECT_EQ(temp_tiles, c.temp_tiles);
            EXPECT_EQ(c.tasks, tasks_rec(p, r));
            EXPECT_EQ(c.temp_tiles, temps_rec(p, r));
        }
    EXPECT_EQ(strassen_counts({64, 5, 200}).tasks, tasks_rec(64, 5));
}

TEST(Strassen, FlopsFromKernelCounts) {
    Params pr{4, 1, 200};
    auto c = strassen_counts(pr);
    EXPECT_EQ(pr.mult_flops(), 2 * 200 * 200 * 200 - 200 * 200);
    EXPECT_EQ(c.flops, 56 * pr.mult_flops() + 60 * pr.add_flops());
    EXPECT_NEAR(c.flops / 1e9, 0.896, 0.896 * 0.005);
    EXPECT_NEAR(strassen_counts({4, 0, 200}).flops / 1e9, 1.02, 1.02 * 0.005);
}

TEST(Strassen, FlopsDecreaseWithRecursion) {
    for (int p : {4, 8, 16, 32, 64, 128, 1024})
        for (int r = 1; (1 << r) <= p; ++r)
            EXPECT_LT(strassen_counts({p, r, 200}).flops, strassen_counts({p, r - 1, 200}).flops) << p << "," << r;
}

TEST(Strassen, RminValues) {
    EXPECT_EQ(r_min(64), 2);
    EXPECT_EQ(r_min(128), 3);
    EXPECT_EQ(r_min(256), 4);
    EXPECT_EQ(r_min(1024), 6);
    EXPECT_EQ(r_min(4), 1);
}

TEST(Strassen, RminMinimisesTasksAmongRecursiveRuns) {
    for (int p = 4; p <= 1024; p *= 2) {
        const int best = r_min(p);
        for (int r = 1; (1 << r) <= p; ++r)
            EXPECT_LE(strassen_counts({p, best, 200}).tasks, strassen_counts({p, r, 200}).tasks) << p << "," << r;
    }
    // without recursion the plain product has fewer tasks for small p
    EXPECT_LT(strassen_counts({16, 0, 200}).tasks, strassen_counts({16, 1, 200}).tasks);
}

TEST(Strassen, GraphShape) {
    auto g = build_from_trace(gen_strassen({8, 2, 200}));
    g.check_acyclic();
    // products of one level feed only additions of that level
    for (const auto& e : g.edges()) {
        const auto& a = g.task(e.from);
        const auto& b = g.task(e.to);
        if (a.kind == KernelKind::GEMM && b.kind == KernelKind::GEADD) EXPECT_EQ(a.phase, b.phase + 1);
    }
    const auto w = flop_weights(200);
    EXPECT_EQ(w(KernelKind::GEMM), 399);
    EXPECT_EQ(w(KernelKind::GEADD), 1);
}

TEST(Strassen, FrozenCriticalPaths) {
    // unit weights and flop weights (nb = 200), from the generator
    auto cp = [](int p, int r) {
        auto g = build_from_trace(gen_strassen({p, r, 200}));
        return std::pair{cp_length(g, WeightModel::unit()), cp_length(g, flop_weights(200))};
    };
    EXPECT_EQ(cp(4, 0), (std::pair<std::int64_t, std::int64_t>{4, 1596}));
    EXPECT_EQ(cp(4, 1), (std::pair<std::int64_t, std::int64_t>{7, 803}));
    EXPECT_EQ(cp(8, 2), (std::pair<std::int64_t, std::int64_t>{12, 808}));
    EXPECT_EQ(cp(16, 3), (std::pair<std::int64_t, std::int64_t>{17, 813}));
}
