#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <tuple>

#include "tiledag/cholesky.hpp"
#include "tiledag/critical_path.hpp"
#include "tiledag/error.hpp"

using namespace tiledag;
using namespace tiledag::chol;

namespace {

std::map<KernelKind, int> kind_counts(const Trace& trace) {
    std::map<KernelKind, int> m;
    for (const auto& t : trace) ++m[t.kind];
    return m;
}

struct Steps {
    std::int64_t s1, s2, s3, total;
};

Steps inversion_cps(int t, Placement pl, std::array<LoopDir, 3> dirs, bool pipelined) {
    InvConfig cfg{t, pl, dirs, pipelined};
    auto g = build_from_trace(gen_chol_inversion(cfg));
    const auto w = WeightModel::unit();
    return {step_cp(g, 1, w), step_cp(g, 2, w), step_cp(g, 3, w), cp_length(g, w)};
}

constexpr std::array<LoopDir, 3> kUDU{LoopDir::U, LoopDir::D, LoopDir::U};
constexpr std::array<LoopDir, 3> kUUU{LoopDir::U, LoopDir::U, LoopDir::U};

}  // namespace

TEST(CholFact, TaskCounts) {
    for (int t = 1; t <= 12; ++t)
        for (auto v : {FactVariant::Bordered, FactVariant::LeftLooking, FactVariant::RightLooking}) {
            auto c = kind_counts(gen_chol_fact(t, v));
            EXPECT_EQ(c[KernelKind::POTRF], t);
            EXPECT_EQ(c[KernelKind::TRSM], t * (t - 1) / 2);
            EXPECT_EQ(c[KernelKind::SYRK], t * (t - 1) / 2);
            EXPECT_EQ(c[KernelKind::GEMM], t * (t - 1) * (t - 2) / 6);
        }
    EXPECT_THROW(gen_chol_fact(0), ContractError);
}

TEST(CholFact, VariantsShareTaskMultiset) {
    for (int t = 1; t <= 8; ++t) {
        auto key = [](const Trace& tr) {
            std::vector<std::tuple<KernelKind, int, int, int>> v;
            for (const auto& x : tr) v.emplace_back(x.kind, x.idx[0], x.idx[1], x.idx[2]);
            std::sort(v.begin(), v.end());
            return v;
        };
        const auto r = key(gen_chol_fact(t, FactVariant::RightLooking));
        EXPECT_EQ(key(gen_chol_fact(t, FactVariant::LeftLooking)), r);
        EXPECT_EQ(key(gen_chol_fact(t, FactVariant::Bordered)), r);
    }
}

TEST(CholFact, LowerTilesOnly) {
    for (const auto& task : gen_chol_fact(6)) {
        for (const auto& r : task.reads) EXPECT_GE(r.row, r.col);
        for (const auto& w : task.writes) EXPECT_GE(w.row, w.col);
    }
}

TEST(CholFact, WeightedOracles) {
    const auto w = WeightModel::cholesky();
    EXPECT_EQ(cp_length(build_from_trace(gen_chol_fact(1)), w), 1);
    EXPECT_EQ(cp_length(build_from_trace(gen_chol_fact(4)), w), 26);
    auto g5 = build_from_trace(gen_chol_fact(5));
    EXPECT_EQ(g5.total_weight(w), 125);
    EXPECT_EQ(cp_length(g5, w), 35);
    for (int t = 2; t <= 50; ++t)
        EXPECT_EQ(cp_length(build_from_trace(gen_chol_fact(t)), w), chol_cp_oracle(t, CpFormula::Fact9tMinus10))
            << "t=" << t;
}

TEST(CholFact, VariantOrderingUnitWeights) {
    const auto w = WeightModel::unit();
    for (int t = 3; t <= 12; ++t) {
        const auto r = cp_length(build_from_trace(gen_chol_fact(t, FactVariant::RightLooking)), w);
        const auto l = cp_length(build_from_trace(gen_chol_fact(t, FactVariant::LeftLooking)), w);
        const auto b = cp_length(build_from_trace(gen_chol_fact(t, FactVariant::Bordered)), w);
        EXPECT_LE(r, l);
        EXPECT_LE(l, b);
    }
}

TEST(CholOracle, Values) {
    EXPECT_EQ(chol_cp_oracle(4, CpFormula::PipeIn), 27);
    EXPECT_EQ(chol_cp_oracle(4, CpFormula::NoPipeOut), 21);
    EXPECT_EQ(chol_cp_oracle(10, CpFormula::Fact9tMinus10), 80);
    EXPECT_EQ(chol_cp_oracle(6, CpFormula::TrtriUUUIn), 27);
    EXPECT_EQ(chol_cp_oracle(6, CpFormula::TrtriUUUOut), 17);
    EXPECT_THROW(chol_cp_oracle(1, CpFormula::Step1), ContractError);
}

TEST(CholInversion, StepCriticalPathsAtFour) {
    auto in = inversion_cps(4, Placement::InPlace, kUDU, false);
    EXPECT_EQ(in.s1, 10);
    EXPECT_EQ(in.s2, 9);
    EXPECT_EQ(in.s3, 10);
    auto out = inversion_cps(4, Placement::OutOfPlace, kUDU, false);
    EXPECT_EQ(out.s1, 10);
    EXPECT_EQ(out.s2, 7);
    EXPECT_EQ(out.s3, 4);
}

TEST(CholInversion, StepsMatchClosedForms) {
    for (int t = 2; t <= 30; ++t) {
        auto in = inversion_cps(t, Placement::InPlace, kUDU, true);
        EXPECT_EQ(in.s1, chol_cp_oracle(t, CpFormula::Step1));
        EXPECT_EQ(in.s2, chol_cp_oracle(t, CpFormula::Step2In));
        EXPECT_EQ(in.s3, chol_cp_oracle(t, CpFormula::Step3In));
        auto out = inversion_cps(t, Placement::OutOfPlace, kUDU, true);
        EXPECT_EQ(out.s1, chol_cp_oracle(t, CpFormula::Step1));
        EXPECT_EQ(out.s2, chol_cp_oracle(t, CpFormula::Step2Out));
        EXPECT_EQ(out.s3, chol_cp_oracle(t, CpFormula::Step3Out));
    }
}

TEST(CholInversion, UnpipelinedTotalsMatchClosedForms) {
    for (int t = 2; t <= 30; ++t) {
        EXPECT_EQ(inversion_cps(t, Placement::InPlace, kUDU, false).total, chol_cp_oracle(t, CpFormula::NoPipeIn));
        EXPECT_EQ(inversion_cps(t, Placement::OutOfPlace, kUDU, false).total,
                  chol_cp_oracle(t, CpFormula::NoPipeOut));
    }
}

TEST(CholInversion, PipelinedTotals) {
    for (int t = 2; t <= 30; ++t) {
        const auto in = inversion_cps(t, Placement::InPlace, kUDU, true).total;
        const auto out = inversion_cps(t, Placement::OutOfPlace, kUDU, true).total;
        EXPECT_EQ(out, chol_cp_oracle(t, CpFormula::PipeOut));
        // Frozen: one above the 9t-9 closed form (see the acceptance report).
        EXPECT_EQ(in, 9 * t - 8) << "t=" << t;
        EXPECT_LE(in, chol_cp_oracle(t, CpFormula::NoPipeIn));
        EXPECT_LE(out, chol_cp_oracle(t, CpFormula::NoPipeOut));
    }
}

TEST(CholInversion, TrtriLoopOrderUUU) {
    EXPECT_EQ(inversion_cps(6, Placement::InPlace, kUUU, true).s2, 27);
    for (int t = 2; t <= 20; ++t) {
        EXPECT_EQ(inversion_cps(t, Placement::InPlace, kUUU, true).s2, chol_cp_oracle(t, CpFormula::TrtriUUUIn));
        EXPECT_EQ(inversion_cps(t, Placement::OutOfPlace, kUUU, true).s2,
                  chol_cp_oracle(t, CpFormula::TrtriUUUOut));
    }
}

TEST(CholInversion, OutOfPlaceHasNoWarInsideSteps) {
    for (int t = 2; t <= 10; ++t) {
        InvConfig cfg{t, Placement::OutOfPlace, kUDU, true};
        auto g = build_from_trace(gen_chol_inversion(cfg));
        for (const auto& e : g.edges()) {
            const auto& a = g.task(e.from);
            const auto& b = g.task(e.to);
            if (e.cause != EdgeCause::WAR || a.kind == KernelKind::COPY || b.kind == KernelKind::COPY) continue;
            // Step-2 reads of A against Step-3 writes of A remain.
            EXPECT_FALSE(a.phase >= 2 && a.phase == b.phase) << a.label() << " -> " << b.label();
        }
        auto c = kind_counts(gen_chol_inversion(cfg));
        EXPECT_EQ(c[KernelKind::COPY], t * (t + 1));  // two lower-triangle copies
    }
}

TEST(CholInversion, KernelMix) {
    InvConfig cfg;
    cfg.t = 5;
    auto c = kind_counts(gen_chol_inversion(cfg));
    EXPECT_EQ(c[KernelKind::POTRF], 5);
    EXPECT_EQ(c[KernelKind::TRTRI], 5);
    EXPECT_EQ(c[KernelKind::LAUUM], 5);
    EXPECT_EQ(c[KernelKind::TRMM], 2 * 10 + 10);  // two per Step-2 tile, one per Step-3 tile
    EXPECT_EQ(c[KernelKind::BARRIER], 0);
    cfg.pipelined = false;
    EXPECT_EQ(kind_counts(gen_chol_inversion(cfg))[KernelKind::BARRIER], 2);
}
