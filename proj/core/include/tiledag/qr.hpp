#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tiledag/critical_path.hpp"
#include "tiledag/graph.hpp"

// Tiled QR. Rows and columns are 1-based here: tile (i,k) with
// 1 <= i <= p, 1 <= k <= q.
namespace tiledag::qr {

// Matrix ids: each tile carries its main part (R / square data), the
// reflectors written by GEQRT, and the T factor of the elimination kernel.
inline constexpr std::uint32_t kMain = 0;
inline constexpr std::uint32_t kV = 1;
inline constexpr std::uint32_t kT = 2;

struct Elim {
    int i = 0;    // row whose tile (i,k) is zeroed
    int piv = 0;  // row that zeroes it
    int k = 0;    // column
    int step = 0; // coarse step for coarse algorithms, otherwise 0
    friend bool operator==(const Elim&, const Elim&) = default;
};

struct EliminationList {
    int p = 0;
    int q = 0;
    std::vector<Elim> entries;
};

// Dense (p x q) table of per-tile values, 0 where undefined.
class TileTable {
public:
    TileTable() = default;
    TileTable(int p, int q) : p_(p), q_(q), v_(static_cast<std::size_t>(p * q), 0) {}
    int p() const { return p_; }
    int q() const { return q_; }
    std::int64_t& at(int i, int k) { return v_[static_cast<std::size_t>((i - 1) * q_ + (k - 1))]; }
    std::int64_t at(int i, int k) const { return v_[static_cast<std::size_t>((i - 1) * q_ + (k - 1))]; }
    std::int64_t max() const;
    friend bool operator==(const TileTable&, const TileTable&) = default;

private:
    int p_ = 0;
    int q_ = 0;
    std::vector<std::int64_t> v_;
};

// ---- Elimination lists -------------------------------------------------

// Checks the ordering conditions: a row is used in column k only after it
// was zeroed in column k-1 (the row k entering column k included), a pivot
// is not yet zeroed, every sub-diagonal tile is zeroed exactly once and
// never the diagonal. Throws ContractError naming the first violation.
void validate(const EliminationList& list);

// Relabels rows so that every entry satisfies i > piv. Each swap renames the
// two rows for the remainder of the list, which leaves the schedule shape
// (and hence its time) unchanged.
EliminationList normalize(const EliminationList& list);

// Earliest coarse step of every entry when each row takes part in at most
// one transformation per step, in list order.
TileTable coarse_times(const EliminationList& list);

enum class CoarseAlgo { SamehKuck, Fibonacci, Greedy };

struct CoarseResult {
    TileTable table;   // coarse(i,k) for i > k
    EliminationList list;
};

CoarseResult coarse_schedule(int p, int q, CoarseAlgo algo);
std::int64_t coarse_cp_oracle(int p, int q, CoarseAlgo algo);
// Least x with x(x+1)/2 >= p-1.
int fibonacci_x(int p);

EliminationList flat_tree_list(int p, int q);
EliminationList plasma_tree_list(int p, int q, int bs);
inline EliminationList binary_tree_list(int p, int q) { return plasma_tree_list(p, q, 1); }

// ---- Tiled graphs ------------------------------------------------------

enum class Family { TT, TS };

// Column by column: factorization and update kernels, then the elimination
// kernels in list order. In the TS family, rows that are never pivots are
// eliminated by TSQRT/TSMQR while rows already triangularized fall back to
// TTQRT/TTMQR.
Trace tiled_trace(const EliminationList& list, Family family);

struct TiledAlgo {
    enum class Tag { FlatTree, Fibonacci, Greedy, BinaryTree, PlasmaTree, Asap, GrASAP };
    Tag tag = Tag::Greedy;
    int bs = 1;  // PlasmaTree domain size
    int i = 1;   // GrASAP: number of trailing Asap columns

    static std::optional<TiledAlgo> parse(std::string_view s);
    std::string name() const;
};

EliminationList elimination_list(int p, int q, const TiledAlgo& algo);

// Asap: in each column, whenever at least two rows are ready, the bottom 2s
// ready rows are paired (the s upper ones annihilate the s lower ones).
EliminationList asap_list(int p, int q);
// Greedy on columns 1..q-i, Asap on the last i columns.
EliminationList grasap_list(int p, int q, int i = 1);
Trace asap_graph(int p, int q);
Trace grasap_graph(int p, int q, int i = 1);

// Unbounded-processor completion times.
TileTable zeroed_times(const TaskGraph& g, const CpAnnotation& cp, int p, int q);
// Earliest and latest completion among the TTMQR(i, piv(i,k), k, j), j > k,
// of each elimination (0 where there is none).
std::pair<TileTable, TileTable> ttmqr_finish_range(const TaskGraph& g, const CpAnnotation& cp, int p,
                                                  int q);

// 10k + 6 coarse(i,k), valid for k <= q-1.
std::int64_t tiled_translation(int i, int k, const TileTable& coarse);

std::int64_t total_weight(int p, int q);  // 6pq^2 - 2q^3
bool verify_weight(const TaskGraph& g, int p, int q);

std::int64_t flattree_cp_oracle(int p, int q);
std::pair<std::int64_t, std::int64_t> fibonacci_cp_bounds(int p, int q);

// Convenience: build the graph for (p, q, algo, family) and return its cp.
std::int64_t tiled_cp(int p, int q, const TiledAlgo& algo, Family family = Family::TT);

}  // namespace tiledag::qr
