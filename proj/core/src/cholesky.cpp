#include "tiledag/cholesky.hpp"

#include "tiledag/critical_path.hpp"
#include "tiledag/error.hpp"

namespace tiledag::chol {

namespace {

using K = KernelKind;

TileRef tile(std::uint32_t m, int i, int j) { return TileRef{m, i, j}; }
TileRef a(int i, int j) { return tile(kA, i, j); }

// Visits lo..hi (inclusive) in the requested direction.
template <class F>
void sweep(int lo, int hi, LoopDir dir, F f) {
    if (dir == LoopDir::U)
        for (int k = lo; k <= hi; ++k) f(k);
    else
        for (int k = hi; k >= lo; --k) f(k);
}

void syrk_fact(TraceBuilder& tb, int j, int k, std::uint8_t ph) {
    tb.add(K::SYRK, {j, k}, {a(j, k), a(j, j)}, {a(j, j)}, ph);
}
void potrf(TraceBuilder& tb, int j, std::uint8_t ph) { tb.add(K::POTRF, {j}, {a(j, j)}, {a(j, j)}, ph); }
void gemm_fact(TraceBuilder& tb, int i, int j, int k, std::uint8_t ph) {
    tb.add(K::GEMM, {i, j, k}, {a(i, k), a(j, k), a(i, j)}, {a(i, j)}, ph);
}
void trsm(TraceBuilder& tb, int i, int j, std::uint8_t ph) {
    tb.add(K::TRSM, {i, j}, {a(j, j), a(i, j)}, {a(i, j)}, ph);
}

void step1(TraceBuilder& tb, int t, LoopDir dir) {
    for (int j = 0; j < t; ++j) {
        for (int k = 0; k < j; ++k) syrk_fact(tb, j, k, 1);
        potrf(tb, j, 1);
        for (int i = j + 1; i < t; ++i) sweep(0, j - 1, dir, [&](int k) { gemm_fact(tb, i, j, k, 1); });
        for (int i = j + 1; i < t; ++i) trsm(tb, i, j, 1);
    }
}

void copy_lower(TraceBuilder& tb, int t, std::uint32_t dst, std::uint8_t ph) {
    for (int j = 0; j < t; ++j)
        for (int i = j; i < t; ++i) tb.add(K::COPY, {i, j}, {a(i, j)}, {tile(dst, i, j)}, ph);
}

}  // namespace

Trace gen_chol_fact(int t, FactVariant variant) {
    require(t >= 1, "t must be at least 1");
    TraceBuilder tb;
    switch (variant) {
        case FactVariant::LeftLooking:
            step1(tb, t, LoopDir::U);
            break;
        case FactVariant::RightLooking:
            for (int k = 0; k < t; ++k) {
                potrf(tb, k, 1);
                for (int i = k + 1; i < t; ++i) trsm(tb, i, k, 1);
                for (int j = k + 1; j < t; ++j) {
                    syrk_fact(tb, j, k, 1);
                    for (int i = j + 1; i < t; ++i) gemm_fact(tb, i, j, k, 1);
                }
            }
            break;
        case FactVariant::Bordered:
            // Row j of L from the rows above it, then the diagonal block.
            for (int j = 0; j < t; ++j) {
                for (int k = 0; k < j; ++k) {
                    for (int m = 0; m < k; ++m) gemm_fact(tb, j, k, m, 1);
                    trsm(tb, j, k, 1);
                }
                for (int k = 0; k < j; ++k) syrk_fact(tb, j, k, 1);
                potrf(tb, j, 1);
            }
            break;
    }
    return tb.take();
}

Trace gen_chol_inversion(const InvConfig& cfg) {
    const int t = cfg.t;
    require(t >= 1, "t must be at least 1");
    const bool oop = cfg.placement == Placement::OutOfPlace;
    TraceBuilder tb;

    step1(tb, t, cfg.loop_dirs[0]);

    // Step 2: L^{-1}.
    if (!cfg.pipelined) tb.barrier(2);
    if (oop) copy_lower(tb, t, kB, 2);
    const std::uint32_t m2 = oop ? kB : kA;
    for (int j = t - 1; j >= 0; --j) {
        tb.add(K::TRTRI, {j}, {a(j, j)}, {a(j, j)}, 2);
        for (int i = t - 1; i > j; --i) {
            tb.add(K::TRMM, {i, j}, {a(i, i), a(i, j)}, {a(i, j)}, 2);
            sweep(j + 1, i - 1, cfg.loop_dirs[1], [&](int k) {
                tb.add(K::GEMM, {i, j, k}, {a(i, k), tile(m2, k, j), a(i, j)}, {a(i, j)}, 2);
            });
            tb.add(K::TRMM, {i, j}, {a(i, i), a(i, j)}, {a(i, j)}, 2);
        }
    }

    // Step 3: L^{-T} L^{-1}.
    if (!cfg.pipelined) tb.barrier(3);
    if (oop) copy_lower(tb, t, kC, 3);
    const std::uint32_t m3 = oop ? kC : kA;
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < i; ++j) tb.add(K::TRMM, {i, j}, {tile(m3, i, i), a(i, j)}, {a(i, j)}, 3);
        tb.add(K::LAUUM, {i}, {a(i, i)}, {a(i, i)}, 3);
        for (int j = 0; j < i; ++j)
            sweep(i + 1, t - 1, cfg.loop_dirs[2], [&](int k) {
                tb.add(K::GEMM, {i, j, k}, {tile(m3, k, i), tile(m3, k, j), a(i, j)}, {a(i, j)}, 3);
            });
        for (int k = i + 1; k < t; ++k)
            tb.add(K::SYRK, {i, k}, {tile(m3, k, i), a(i, i)}, {a(i, i)}, 3);
    }
    return tb.take();
}

std::int64_t chol_cp_oracle(int t, CpFormula which) {
    require(t >= 2, "closed forms are stated for t >= 2");
    const std::int64_t T = t;
    switch (which) {
        case CpFormula::Fact9tMinus10: return 9 * T - 10;
        case CpFormula::Step1: return 3 * T - 2;
        case CpFormula::Step2In: return 3 * T - 3;
        case CpFormula::Step2Out: return 2 * T - 1;
        case CpFormula::Step3In: return 3 * T - 2;
        case CpFormula::Step3Out: return T;
        case CpFormula::PipeIn: return 9 * T - 9;
        case CpFormula::PipeOut: return 5 * T - 2;
        case CpFormula::NoPipeIn: return 9 * T - 7;
        case CpFormula::NoPipeOut: return 6 * T - 3;
        case CpFormula::TrtriUUUIn: return T * T - 2 * T + 3;
        case CpFormula::TrtriUUUOut: return (T * T - T) / 2 + 2;
    }
    return 0;
}

std::int64_t step_cp(const TaskGraph& g, int step, const WeightModel& w) {
    auto sub = g.induced([&](const Task& t) { return t.phase == step && t.kind != KernelKind::BARRIER; });
    return cp_length(sub, w);
}

}  // namespace tiledag::chol
