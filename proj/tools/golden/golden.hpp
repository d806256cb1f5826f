#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Published reference values for the table-reproducing commands. Rows of a
// tile table are 1-based tile rows; 0 marks cells on or above the diagonal.
namespace tiledag::golden {

using Grid = std::vector<std::vector<std::int64_t>>;

// 15 x 6 coarse steps.
extern const Grid kCoarseSamehKuck;
extern const Grid kCoarseFibonacci;
extern const Grid kCoarseGreedy;

// 15 x 6 tiled zeroed times (TTQRT completion).
extern const Grid kTiledFlatTree;
extern const Grid kTiledFibonacci;
extern const Grid kTiledGreedy;
extern const Grid kTiledBinaryTree;
extern const Grid kTiledPlasmaTree5;

// 15 x 3 tiled zeroed times.
extern const Grid kGreedy15x3;
extern const Grid kAsap15x3;

struct CpPair {
    int p, q;
    std::int64_t greedy, asap;
};
extern const std::vector<CpPair> kGreedyVsAsap;

struct P40Row {
    int q;
    std::int64_t greedy, plasma;
    int bs;
    std::int64_t fibonacci;
};
extern const std::vector<P40Row> kTheoretical40;

// Cholesky t = 5 bounds as printed (two decimals).
struct BoundsRow {
    int p;
    std::string t, s, e;
};
extern const std::vector<BoundsRow> kCholBounds5;
struct LostAreaPair {
    int p;
    std::int64_t la;
};
extern const std::vector<LostAreaPair> kLostArea5;

// 5 x 5 tiled QR schedule lengths.
struct Qr5Row {
    int procs;
    std::int64_t alap, optimal, grasap, greedy, fibonacci, flattree;
};
extern const std::vector<Qr5Row> kQr5x5;

struct RminRow {
    int p, r_min;
    double gflop_sw, gflop_gemm;
};
extern const std::vector<RminRow> kStrassenRmin;

struct TasksRow {
    int p, r;
    std::int64_t tasks, cp;  // cp as printed, not comparable with ours
};
extern const std::vector<TasksRow> kStrassenTasks;

struct Tasks128Row {
    int r;
    std::int64_t tasks;
    double gflop;
};
extern const std::vector<Tasks128Row> kStrassen128;
inline constexpr std::int64_t kTiledGemm128Tasks = 4177920;
inline constexpr double kTiledGemm128Gflop = 3.36e4;

// Scalars.
inline constexpr std::int64_t kGreedy20x6Cp = 136;
inline constexpr std::int64_t kGrasap20x6Cp = 134;
inline constexpr std::int64_t kFibonacci34x4Procs10 = 184;
inline constexpr std::int64_t kGrasap34x4AlapBound = 188;
inline constexpr std::int64_t kToyMaxCp = 5;
inline constexpr std::int64_t kToyOptimal = 4;

}  // namespace tiledag::golden
