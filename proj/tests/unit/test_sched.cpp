#include <gtest/gtest.h>

#include <sstream>

#include "tiledag/cholesky.hpp"
#include "tiledag/error.hpp"
#include "tiledag/qr.hpp"
#include "tiledag/sched.hpp"

using namespace tiledag;

namespace {

// Independent tasks under Cholesky weights, joined by EXPLICIT edges.
TaskGraph custom_graph(const std::vector<KernelKind>& kinds, const std::vector<std::pair<int, int>>& edges) {
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        Task t;
        t.id = static_cast<TaskId>(i);
        t.kind = kinds[i];
        t.writes = {TileRef{0, static_cast<int>(i), 0}};
        tasks.push_back(t);
    }
    std::vector<Edge> es;
    for (auto [f, t] : edges) es.push_back({static_cast<TaskId>(f), static_cast<TaskId>(t), EdgeCause::EXPLICIT});
    return TaskGraph(tasks, es);
}

// A=3, B=3, C=1, D=1 with C before D.
TaskGraph toy() {
    return custom_graph({KernelKind::TRSM, KernelKind::SYRK, KernelKind::POTRF, KernelKind::POTRF}, {{2, 3}});
}

TaskGraph chol5() { return build_from_trace(chol::gen_chol_fact(5)); }

TaskGraph qr_graph(int p, int q, const char* algo) {
    return build_from_trace(qr::tiled_trace(qr::elimination_list(p, q, *qr::TiledAlgo::parse(algo)), qr::Family::TT));
}

}  // namespace

TEST(ListSchedule, ToyIsNotOptimal) {
    auto g = toy();
    const auto w = WeightModel::cholesky();
    EXPECT_EQ(list_schedule(g, w, 2, Policy::MaxCP).makespan, 5);
    EXPECT_EQ(exhaustive_min_makespan(g, w, 2), 4);
}

TEST(ListSchedule, OneProcessorTakesTotalWeight) {
    const auto w = WeightModel::cholesky();
    for (int t = 1; t <= 6; ++t) {
        auto g = build_from_trace(chol::gen_chol_fact(t));
        for (auto pol : {Policy::MaxCP, Policy::MinCP, Policy::RandomCP})
            EXPECT_EQ(list_schedule(g, w, 1, pol, 7).makespan, g.total_weight(w));
    }
}

TEST(ListSchedule, GrasapFiveByFiveOnTwo) {
    auto g = build_from_trace(qr::grasap_graph(5, 5));
    EXPECT_EQ(list_schedule(g, WeightModel::qr_full(), 2, Policy::MaxCP).makespan, 256);
}

TEST(ListSchedule, ValidAndBracketedByBounds) {
    const auto wc = WeightModel::cholesky();
    const auto wq = WeightModel::qr_full();
    std::vector<std::pair<TaskGraph, WeightModel>> cases;
    cases.emplace_back(chol5(), wc);
    cases.emplace_back(build_from_trace(chol::gen_chol_fact(7, chol::FactVariant::LeftLooking)), wc);
    cases.emplace_back(qr_graph(6, 4, "greedy"), wq);
    cases.emplace_back(qr_graph(5, 5, "flattree"), wq);
    for (const auto& [g, w] : cases) {
        const auto cp = annotate_cp(g, w);
        for (int p = 1; p <= 8; ++p)
            for (auto pol : {Policy::MaxCP, Policy::MinCP, Policy::RandomCP})
                for (std::uint64_t seed : {1u, 2u, 3u}) {
                    auto s = list_schedule(g, cp, p, pol, seed);
                    EXPECT_TRUE(validate_schedule(g, w, s).empty());
                    EXPECT_GE(Rational(s.makespan), alap_bound(g, w, p));
                    EXPECT_GE(alap_bound(g, w, p), rooftop_bound(g, w, p));
                    EXPECT_LE(lower_bound_factor(s.makespan, p), alap_bound(g, w, p) * 2);
                }
    }
}

TEST(ListSchedule, Deterministic) {
    auto g = qr_graph(7, 3, "fibonacci");
    const auto w = WeightModel::qr_full();
    for (auto pol : {Policy::MaxCP, Policy::RandomCP}) {
        auto a = list_schedule(g, w, 3, pol, 42);
        auto b = list_schedule(g, w, 3, pol, 42);
        ASSERT_EQ(a.slots.size(), b.slots.size());
        for (std::size_t i = 0; i < a.slots.size(); ++i) {
            EXPECT_EQ(a.slots[i].proc, b.slots[i].proc);
            EXPECT_EQ(a.slots[i].start, b.slots[i].start);
        }
    }
}

TEST(ListSchedule, ValidatorCatchesBrokenSchedules) {
    auto g = chol5();
    const auto w = WeightModel::cholesky();
    auto s = list_schedule(g, w, 3, Policy::MaxCP);
    auto late = s;
    late.makespan += 1;
    EXPECT_FALSE(validate_schedule(g, w, late).empty());
    auto swapped = s;
    swapped.slots[1].start = 0;
    swapped.slots[1].finish = w(g.task(1).kind);
    EXPECT_FALSE(validate_schedule(g, w, swapped).empty());
}

TEST(ListSchedule, PolicyNames) {
    EXPECT_EQ(parse_policy("max"), Policy::MaxCP);
    EXPECT_EQ(parse_policy("min"), Policy::MinCP);
    EXPECT_EQ(parse_policy("rand"), Policy::RandomCP);
    EXPECT_THROW(parse_policy("fifo"), ContractError);
}

TEST(ListSchedule, ExhaustiveRefusesLargeGraphs) {
    EXPECT_THROW(exhaustive_min_makespan(chol5(), WeightModel::cholesky(), 2), ContractError);
}

TEST(SyncChol, FiveTiles) {
    EXPECT_EQ(sync_chol_schedule(5, 8, SyncVariant::Relaxed).makespan, 35);
    EXPECT_EQ(sync_chol_schedule(5, 1, SyncVariant::Grouped).makespan, 125);
    const auto w = WeightModel::cholesky();
    const auto maxcp = list_schedule(chol5(), w, 4, Policy::MaxCP).makespan;
    const auto relaxed = sync_chol_schedule(5, 4, SyncVariant::Relaxed).makespan;
    const auto grouped = sync_chol_schedule(5, 4, SyncVariant::Grouped).makespan;
    EXPECT_GE(grouped, relaxed);
    EXPECT_GE(relaxed, maxcp);
}

TEST(SyncChol, CriticalPaths) {
    const auto w = WeightModel::cholesky();
    for (int t = 2; t <= 12; ++t) {
        EXPECT_EQ(cp_length(sync_chol_graph(t, SyncVariant::Relaxed), w), 9 * t - 10);
        EXPECT_EQ(cp_length(sync_chol_graph(t, SyncVariant::Grouped), w), 13 * t - 18);
        const int p = ((t - 1) * (t - 1) + 1) / 2;
        EXPECT_EQ(sync_chol_schedule(t, std::max(p, 1), SyncVariant::Relaxed).makespan, 9 * t - 10) << t;
    }
}

TEST(Bounds, LostAreaCholFive) {
    auto cp = annotate_cp(chol5(), WeightModel::cholesky());
    auto prof = alap_profile(cp);
    const std::pair<int, std::int64_t> pairs[] = {{1, 0}, {2, 4}, {3, 11}, {4, 24}, {5, 45}};
    for (auto [p, la] : pairs) EXPECT_EQ(lost_area(prof, p), la) << "p=" << p;
    EXPECT_EQ(format_fixed(alap_bound(prof, 125, 2), 2), "64.50");
    EXPECT_EQ(format_fixed(alap_bound(prof, 125, 3), 2), "45.33");
    EXPECT_EQ(format_fixed(alap_bound(prof, 125, 4), 2), "37.25");
    EXPECT_EQ(alap_bound(prof, 125, 9), Rational(35));
    EXPECT_EQ(format_fixed(rooftop_bound(35, 125, 3), 2), "41.67");
    EXPECT_LT(rooftop_bound(35, 125, 3), alap_bound(prof, 125, 3));
}

TEST(Bounds, AlapBoundNotAlwaysMonotone) {
    // The lost area jumps when the ALAP tail threshold moves earlier.
    auto g = qr_graph(9, 4, "binarytree");
    const auto w = WeightModel::qr_full();
    EXPECT_EQ(alap_bound(g, w, 9), Rational(302, 3));
    EXPECT_EQ(alap_bound(g, w, 10), Rational(103));
    EXPECT_GE(Rational(list_schedule(g, w, 10, Policy::MaxCP).makespan), alap_bound(g, w, 10));
}

TEST(Bounds, AlapBoundNonincreasing) {
    for (const auto& g : {chol5(), qr_graph(8, 4, "greedy"), qr_graph(5, 5, "grasap:1")}) {
        const auto w = g.task(0).kind == KernelKind::POTRF ? WeightModel::cholesky() : WeightModel::qr_full();
        Rational prev = alap_bound(g, w, 1);
        EXPECT_EQ(prev, Rational(g.total_weight(w)));
        for (int p = 2; p <= 16; ++p) {
            const auto cur = alap_bound(g, w, p);
            EXPECT_LE(cur, prev);
            prev = cur;
        }
    }
}

TEST(Bounds, Singleton) {
    auto g = custom_graph({KernelKind::GEQRT}, {});
    const auto w = WeightModel::qr_full();
    auto prof = alap_profile(g, w);
    EXPECT_EQ(lost_area(prof, 3), 8);
    EXPECT_EQ(alap_bound(g, w, 3), Rational(4));
}

TEST(Bounds, TableRows) {
    auto rows = bounds_table(chol5(), WeightModel::cholesky(), {1, 5});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].speedup, Rational(1));
    EXPECT_EQ(format_fixed(rows[1].speedup, 2), "3.57");
    EXPECT_EQ(format_fixed(rows[1].efficiency, 2), "0.71");
}

TEST(Bounds, Factors) {
    EXPECT_EQ(lower_bound_factor(30, 2), Rational(20));
    EXPECT_EQ(lower_bound_factor(7, 1), Rational(7));
    EXPECT_DOUBLE_EQ(gamma_ub(2.0, 100, 10, 4), 8.0);
    EXPECT_DOUBLE_EQ(gamma_ub(2.0, 100, 50, 4), 4.0);
    EXPECT_THROW(rooftop_bound(1, 1, 0), ContractError);
}

TEST(Alpha, SmallSizes) {
    auto a = alpha_min(3);
    EXPECT_EQ(a.p_opt, 2);
    EXPECT_EQ(a.makespan, 17);
    EXPECT_DOUBLE_EQ(a.alpha, 2.0 / 9);
    EXPECT_EQ(alpha_min(4).p_opt, 4);
    EXPECT_THROW(alpha_min(2), ContractError);
}

TEST(Gantt, CsvRows) {
    auto g = toy();
    auto s = list_schedule(g, WeightModel::cholesky(), 2, Policy::MaxCP);
    std::ostringstream os;
    write_gantt_csv(os, g, s);
    EXPECT_EQ(os.str(),
              "proc,start,end,kind,i,j,k,l\n"
              "0,0,3,TRSM,,,,\n"
              "1,0,3,SYRK,,,,\n"
              "0,3,4,POTRF,,,,\n"
              "0,4,5,POTRF,,,,\n");
}
