#include <benchmark/benchmark.h>

#include "tiledag/cholesky.hpp"
#include "tiledag/critical_path.hpp"
#include "tiledag/qr.hpp"
#include "tiledag/sched.hpp"

using namespace tiledag;

namespace {

TaskGraph greedy_qr(int p) {
    return build_from_trace(qr::tiled_trace(qr::elimination_list(p, p / 2, *qr::TiledAlgo::parse("greedy")),
                                            qr::Family::TT));
}

}  // namespace

static void BM_BuildCholesky(benchmark::State& state) {
    const auto trace = chol::gen_chol_fact(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto g = build_from_trace(trace);
        benchmark::DoNotOptimize(g);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(trace.size()));
}

static void BM_BuildQr(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const auto trace = qr::tiled_trace(qr::elimination_list(p, p / 2, *qr::TiledAlgo::parse("greedy")),
                                       qr::Family::TT);
    for (auto _ : state) {
        auto g = build_from_trace(trace);
        benchmark::DoNotOptimize(g);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(trace.size()));
}

static void BM_AnnotateCp(benchmark::State& state) {
    const auto g = greedy_qr(static_cast<int>(state.range(0)));
    const auto w = WeightModel::qr_full();
    for (auto _ : state) {
        auto cp = annotate_cp(g, w);
        benchmark::DoNotOptimize(cp);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(g.size()));
}

static void BM_ListSchedule(benchmark::State& state) {
    const auto g = greedy_qr(static_cast<int>(state.range(0)));
    const auto cp = annotate_cp(g, WeightModel::qr_full());
    const int procs = static_cast<int>(state.range(1));
    for (auto _ : state) {
        auto s = list_schedule(g, cp, procs, Policy::MaxCP);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(g.size()));
}

BENCHMARK(BM_BuildCholesky)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_BuildQr)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_AnnotateCp)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_ListSchedule)->Args({16, 4})->Args({32, 16})->Args({64, 64});

BENCHMARK_MAIN();
