#include <gtest/gtest.h>

#include <algorithm>

#include "tiledag/error.hpp"
#include "tiledag/qr.hpp"

using namespace tiledag;
using namespace tiledag::qr;

namespace {

constexpr CoarseAlgo kAll[] = {CoarseAlgo::SamehKuck, CoarseAlgo::Fibonacci, CoarseAlgo::Greedy};

}  // namespace

TEST(Coarse, SpotValues15x6) {
    auto sk = coarse_schedule(15, 6, CoarseAlgo::SamehKuck).table;
    EXPECT_EQ(sk.at(2, 1), 1);
    EXPECT_EQ(sk.at(3, 1), 2);
    EXPECT_EQ(sk.at(15, 6), 19);
    auto fib = coarse_schedule(15, 6, CoarseAlgo::Fibonacci).table;
    EXPECT_EQ(fib.at(2, 1), 5);
    EXPECT_EQ(fib.at(15, 6), 12);
    auto gr = coarse_schedule(15, 6, CoarseAlgo::Greedy).table;
    EXPECT_EQ(gr.at(2, 1), 4);
    EXPECT_EQ(gr.at(15, 6), 8);
}

TEST(Coarse, TableIsZeroOnAndAboveDiagonal) {
    for (auto algo : kAll) {
        auto t = coarse_schedule(9, 4, algo).table;
        for (int i = 1; i <= 9; ++i)
            for (int k = 1; k <= 4; ++k) {
                if (i <= k)
                    EXPECT_EQ(t.at(i, k), 0);
                else
                    EXPECT_GT(t.at(i, k), 0);
            }
    }
}

TEST(Coarse, OracleValues) {
    EXPECT_EQ(coarse_cp_oracle(15, 6, CoarseAlgo::SamehKuck), 19);
    EXPECT_EQ(coarse_cp_oracle(15, 6, CoarseAlgo::Fibonacci), 15);
    EXPECT_EQ(coarse_cp_oracle(6, 6, CoarseAlgo::SamehKuck), 9);
    EXPECT_EQ(coarse_cp_oracle(1, 1, CoarseAlgo::Fibonacci), 0);
    EXPECT_THROW(coarse_cp_oracle(3, 4, CoarseAlgo::Greedy), ContractError);
}

TEST(Coarse, FibonacciX) {
    EXPECT_EQ(fibonacci_x(1), 0);
    EXPECT_EQ(fibonacci_x(2), 1);
    EXPECT_EQ(fibonacci_x(15), 5);
    EXPECT_EQ(fibonacci_x(16), 5);
    EXPECT_EQ(fibonacci_x(17), 6);
    for (int p = 2; p <= 200; ++p) {
        const int x = fibonacci_x(p);
        EXPECT_GE(x * (x + 1) / 2, p - 1);
        EXPECT_LT((x - 1) * x / 2, p - 1);
    }
}

TEST(Coarse, ScheduleMatchesOracleAndValidates) {
    for (int p = 1; p <= 24; ++p)
        for (int q = 1; q <= p; ++q)
            for (auto algo : kAll) {
                auto res = coarse_schedule(p, q, algo);
                EXPECT_NO_THROW(validate(res.list)) << p << "x" << q;
                EXPECT_EQ(res.table.max(), coarse_cp_oracle(p, q, algo)) << p << "x" << q;
                // Steps are a valid timing of the list, never earlier than the tightest one.
                const auto tight = coarse_times(res.list);
                for (int i = 2; i <= p; ++i)
                    for (int k = 1; k < i && k <= q; ++k) EXPECT_LE(tight.at(i, k), res.table.at(i, k));
                if (algo == CoarseAlgo::Greedy) EXPECT_EQ(tight, res.table) << p << "x" << q;
            }
}

TEST(Coarse, GreedyIsNeverSlower) {
    for (int p = 2; p <= 30; ++p)
        for (int q = 1; q <= p; ++q) {
            const auto g = coarse_cp_oracle(p, q, CoarseAlgo::Greedy);
            EXPECT_LE(g, coarse_cp_oracle(p, q, CoarseAlgo::Fibonacci));
            EXPECT_LE(g, coarse_cp_oracle(p, q, CoarseAlgo::SamehKuck));
        }
}

TEST(Coarse, RowsTakeOnePartPerStep) {
    auto res = coarse_schedule(15, 6, CoarseAlgo::Greedy);
    for (std::size_t a = 0; a < res.list.entries.size(); ++a)
        for (std::size_t b = a + 1; b < res.list.entries.size(); ++b) {
            const auto& x = res.list.entries[a];
            const auto& y = res.list.entries[b];
            if (x.step != y.step) continue;
            EXPECT_NE(x.i, y.i);
            EXPECT_NE(x.i, y.piv);
            EXPECT_NE(x.piv, y.i);
            EXPECT_NE(x.piv, y.piv);
        }
}

TEST(Validate, RejectsBrokenLists) {
    EliminationList ok = flat_tree_list(3, 2);
    EXPECT_NO_THROW(validate(ok));

    auto missing = ok;
    missing.entries.pop_back();
    EXPECT_THROW(validate(missing), ContractError);

    auto twice = ok;
    twice.entries.push_back(twice.entries.back());
    EXPECT_THROW(validate(twice), ContractError);

    EliminationList early{3, 2, {{3, 2, 2, 0}, {2, 1, 1, 0}, {3, 1, 1, 0}}};
    EXPECT_THROW(validate(early), ContractError);

    EliminationList diag{2, 2, {{2, 1, 1, 0}, {2, 2, 2, 0}}};
    EXPECT_THROW(validate(diag), ContractError);

    EliminationList zeroed_pivot{3, 1, {{2, 1, 1, 0}, {3, 2, 1, 0}}};
    EXPECT_THROW(validate(zeroed_pivot), ContractError);
}

TEST(Normalize, PivotAboveAndSameTimes) {
    // Row 1 zeroed by row 3 in column 1: the relabeling swaps them.
    EliminationList up{3, 2, {{1, 3, 1, 0}, {2, 3, 1, 0}, {2, 1, 2, 0}}};
    EXPECT_THROW(validate(up), ContractError);
    auto n = normalize(up);
    EXPECT_NO_THROW(validate(n));
    for (const auto& e : n.entries) EXPECT_GT(e.i, e.piv);
    EXPECT_EQ(coarse_times(n).max(), coarse_times(up).max());

    for (auto algo : kAll) {
        auto l = coarse_schedule(12, 5, algo).list;
        auto m = normalize(l);
        EXPECT_EQ(m.entries, l.entries);
    }
}

TEST(Coarse, RejectsWideMatrices) {
    for (auto algo : kAll) {
        EXPECT_THROW(coarse_schedule(2, 3, algo), ContractError);
        EXPECT_THROW(coarse_schedule(0, 0, algo), ContractError);
    }
}
