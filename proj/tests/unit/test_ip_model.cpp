#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <tuple>

#include "tiledag/error.hpp"
#include "tiledag/ip_model.hpp"
#include "tiledag/qr.hpp"

using namespace tiledag;
using namespace tiledag::ip;

namespace {

TaskGraph tt_graph(int p, int q, const qr::TiledAlgo& algo) {
    return build_from_trace(qr::tiled_trace(qr::elimination_list(p, q, algo), qr::Family::TT));
}

bool cites(const Verdict& v, const std::string& group) {
    return std::any_of(v.violations.begin(), v.violations.end(), [&](const Violation& x) { return x.group == group; });
}

std::vector<qr::TiledAlgo> all_algos() {
    using Tag = qr::TiledAlgo::Tag;
    return {{Tag::FlatTree}, {Tag::Fibonacci}, {Tag::Greedy}, {Tag::BinaryTree}, {Tag::PlasmaTree, 2},
            {Tag::Asap},     {Tag::GrASAP}};
}

}  // namespace

TEST(IpModel, RejectsBadInstances) {
    EXPECT_THROW(emit_ip(2, 3, 10), ContractError);
    EXPECT_THROW(emit_ip(3, 2, 0), ContractError);
}

TEST(IpModel, TwoByTwoObligations) {
    auto m = emit_ip(2, 2, 20);
    // x_1_2 fixed to zero, one zeroing obligation for tile (2,1)
    ASSERT_EQ(m.group_size("10"), 1u);
    const auto& c10 = m.cons[static_cast<std::size_t>(
        std::find_if(m.cons.begin(), m.cons.end(), [](const Constraint& c) { return c.group == "10"; }) -
        m.cons.begin())];
    ASSERT_EQ(c10.terms.size(), 1u);
    EXPECT_EQ(m.vars[static_cast<std::size_t>(c10.terms[0].var)].name, "x_1_2");
    ASSERT_EQ(m.group_size("9"), 1u);
    const auto& c9 = *std::find_if(m.cons.begin(), m.cons.end(), [](const Constraint& c) { return c.group == "9"; });
    ASSERT_EQ(c9.terms.size(), 1u);
    EXPECT_EQ(m.vars[static_cast<std::size_t>(c9.terms[0].var)].name, "zh_2_1_1");
    EXPECT_EQ(c9.rhs, 1);
}

TEST(IpModel, FamilySizesMatchIndexRanges) {
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= p; ++q) {
            auto m = emit_ip(p, q, 50);
            std::size_t w = 0, z = 0, y = 0, dl14 = 0, trip = 0, trip_prev = 0;
            for (int k = 1; k <= q; ++k) {
                const std::size_t rk = static_cast<std::size_t>(p - k + 1);
                z += rk * rk;
                trip += rk * (rk - 1) * (rk - 2);
                if (k >= 2) {
                    const std::size_t rp = rk + 1;
                    trip_prev += rp * (rp - 1) * (rp - 2);
                }
                for (int l = 1; l < k; ++l) {
                    const std::size_t rl = static_cast<std::size_t>(p - l + 1);
                    w += rl;
                    y += rl * rl;
                    dl14 += rl * (rl - 1) * (rl - 2);
                }
            }
            EXPECT_EQ(m.family_size("x"), static_cast<std::size_t>(p * q));
            EXPECT_EQ(m.family_size("w"), w);
            EXPECT_EQ(m.family_size("z"), z);
            EXPECT_EQ(m.family_size("zh"), z);
            EXPECT_EQ(m.family_size("y"), y);
            EXPECT_EQ(m.family_size("yh"), y);
            EXPECT_EQ(m.family_size("dl1"), dl14);
            EXPECT_EQ(m.family_size("dl5"), trip);
            EXPECT_EQ(m.family_size("a1"), trip);
            EXPECT_EQ(m.family_size("f"), trip_prev);
            EXPECT_EQ(m.family_size("total"), 1u);
            // one obligation per sub-diagonal tile, one x fixed per tile above
            EXPECT_EQ(m.group_size("9"), static_cast<std::size_t>(q * p - q * (q + 1) / 2));
            EXPECT_EQ(m.group_size("10"), static_cast<std::size_t>(q * (q - 1) / 2));
            EXPECT_EQ(m.group_size("8"), static_cast<std::size_t>(q * p - q * (q - 1) / 2));
        }
}

TEST(IpModel, EmissionIsDeterministic) {
    std::ostringstream a, b;
    write_lp(a, emit_ip(4, 3, 40, {3}));
    write_lp(b, emit_ip(4, 3, 40, {3}));
    EXPECT_EQ(a.str(), b.str());
    const auto s = a.str();
    EXPECT_NE(s.find("Minimize\n obj: total_time\nSubject To\n"), std::string::npos);
    EXPECT_NE(s.find("\nBinary\n"), std::string::npos);
    EXPECT_NE(s.find(" g3_"), std::string::npos);
    EXPECT_NE(s.find(" gprec_order_"), std::string::npos);
    EXPECT_NE(s.find(" gcapacity_"), std::string::npos);
    EXPECT_EQ(s.substr(s.size() - 4), "End\n");
}

TEST(IpModel, SingleTileIsTriviallyFeasible) {
    auto g = tt_graph(1, 1, {qr::TiledAlgo::Tag::Greedy});
    auto s = list_schedule(g, WeightModel::qr_full(), 1, Policy::MaxCP);
    auto m = emit_ip(1, 1, s.makespan / 2);
    auto a = schedule_to_assignment(m, g, s);
    EXPECT_EQ(a.at("x_1_1"), 2);
    EXPECT_TRUE(check_feasible(m, a).feasible);
}

TEST(IpModel, GrasapFiveByFiveAtElevenProcessors) {
    auto g = tt_graph(5, 5, {qr::TiledAlgo::Tag::GrASAP});
    auto s = list_schedule(g, WeightModel::qr_full(), 11, Policy::MaxCP);
    EXPECT_EQ(s.makespan, 80);
    auto m = emit_ip(5, 5, s.makespan / 2, {11});
    auto a = schedule_to_assignment(m, g, s);
    auto v = check_feasible(m, a);
    EXPECT_TRUE(v.feasible) << (v.violations.empty() ? "" : v.violations.front().constraint);
    EXPECT_EQ(a.at("total_time"), 40);
}

TEST(IpModel, EarlyTtqrtViolatesTriangleGroup) {
    auto g = tt_graph(4, 3, {qr::TiledAlgo::Tag::Greedy});
    auto s = list_schedule(g, WeightModel::qr_full(), 4, Policy::MaxCP);
    auto m = emit_ip(4, 3, s.makespan / 2);
    auto a = schedule_to_assignment(m, g, s);
    ASSERT_TRUE(check_feasible(m, a).feasible);
    // move the first TTQRT of column 1 before its GEQRT finishes
    auto it = std::find_if(a.begin(), a.end(), [](const auto& kv) { return kv.first.rfind("z_", 0) == 0; });
    ASSERT_NE(it, a.end());
    it->second = 1;
    auto v = check_feasible(m, a);
    EXPECT_FALSE(v.feasible);
    EXPECT_TRUE(cites(v, "3"));
}

TEST(IpModel, OverCapacityIsReported) {
    auto g = tt_graph(4, 2, {qr::TiledAlgo::Tag::Greedy});
    auto s = list_schedule(g, WeightModel::qr_full(), 8, Policy::MaxCP);
    auto m = emit_ip(4, 2, s.makespan / 2, {1});
    auto v = check_feasible(m, schedule_to_assignment(m, g, s));
    EXPECT_FALSE(v.feasible);
    EXPECT_TRUE(cites(v, "capacity"));
}

TEST(IpModel, RejectsNonTtGraphs) {
    auto g = build_from_trace(
        qr::tiled_trace(qr::elimination_list(3, 2, {qr::TiledAlgo::Tag::FlatTree}), qr::Family::TS));
    auto s = list_schedule(g, WeightModel::qr_full(), 2, Policy::MaxCP);
    auto m = emit_ip(3, 2, s.makespan / 2);
    EXPECT_THROW(schedule_to_assignment(m, g, s), ContractError);
}

TEST(IpModel, EverySimulatorScheduleIsFeasible) {
    // one model per instance and processor count, with the longest makespan
    // as horizon; a larger T keeps every shorter schedule feasible
    for (int p = 1; p <= 5; ++p)
        for (int q = 1; q <= p; ++q)
            for (int procs : {1, 2, 3, 5, 8}) {
                std::vector<std::tuple<std::string, TaskGraph, Schedule>> runs;
                std::int64_t horizon = 0;
                for (const auto& algo : all_algos()) {
                    if (algo.tag == qr::TiledAlgo::Tag::PlasmaTree && algo.bs > p) continue;
                    auto g = tt_graph(p, q, algo);
                    for (Policy pol : {Policy::MaxCP, Policy::MinCP, Policy::RandomCP}) {
                        auto s = list_schedule(g, WeightModel::qr_full(), procs, pol, 7);
                        horizon = std::max(horizon, s.makespan / 2);
                        runs.emplace_back(algo.name(), g, std::move(s));
                    }
                }
                auto m = emit_ip(p, q, horizon, {procs});
                for (const auto& [name, g, s] : runs) {
                    auto v = check_feasible(m, schedule_to_assignment(m, g, s));
                    EXPECT_TRUE(v.feasible) << p << "x" << q << " " << name << " procs=" << procs << " "
                                            << (v.violations.empty() ? "" : v.violations[0].constraint);
                }
            }
}

TEST(IpModel, AssignmentRoundTrip) {
    Assignment a{{"x_1_1", 2}, {"z_2_1_1", 3}};
    std::ostringstream os;
    write_assignment(os, a);
    std::istringstream is("# comment\n\n" + os.str() + "zh_2_1_1 1.0\n");
    auto b = parse_assignment(is);
    EXPECT_EQ(b.at("x_1_1"), 2);
    EXPECT_EQ(b.at("zh_2_1_1"), 1);
    std::istringstream bad("x_1_1 two\n");
    EXPECT_THROW(parse_assignment(bad), ContractError);
    std::istringstream frac("x_1_1 2.5\n");
    EXPECT_THROW(parse_assignment(frac), ContractError);
}
