#pragma once

#include <cstdint>

#include "tiledag/graph.hpp"
#include "tiledag/kernel.hpp"

namespace tiledag::strassen {

// Matrix ids of the operands; temporaries get fresh ids from kFirstTemp on.
inline constexpr std::uint32_t kA = 0;
inline constexpr std::uint32_t kB = 1;
inline constexpr std::uint32_t kC = 2;
inline constexpr std::uint32_t kFirstTemp = 3;

struct Params {
    int p = 1;      // tiles per side, a power of two
    int r = 0;      // recursion levels, 0 <= r <= log2(p)
    int nb = 200;   // tile order

    std::int64_t mult_flops() const;  // 2 nb^3 - nb^2
    std::int64_t add_flops() const;   // nb^2
    void check() const;               // throws ContractError
};

// C_ij += A_ik * B_kj for ascending k: n^3 GEMM tasks, one chain per tile.
Trace gen_tiled_gemm(int n);

// Recursive Strassen-Winograd: eight Phase-1 additions into fresh
// temporaries, seven recursive products into fresh temporaries, three
// temporary and four output additions, tiled_gemm at the cutoff. GEMM tasks
// carry (i, j, k) in tile coordinates of their operands, GEADD tasks (i, j);
// Task::phase is the recursion level (0 at the top).
Trace gen_strassen(const Params& params);

struct Counts {
    std::int64_t tasks = 0;
    std::int64_t mults = 0;
    std::int64_t adds = 0;
    std::int64_t flops = 0;
    std::int64_t temp_tiles = 0;
};

// Closed forms; identical to counting the generator's output.
Counts strassen_counts(const Params& params);

// Recursion depth minimising the task count from the continuous optimum,
// rounded up and clamped to at least one level.
int r_min(int p);

// GEMM weight (2 nb - 1) and GEADD weight 1: flop ratio with the addition
// normalised to one unit.
WeightModel flop_weights(int nb);

}  // namespace tiledag::strassen
