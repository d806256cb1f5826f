#include "tiledag/strassen.hpp"

#include <bit>
#include <cmath>

#include "tiledag/error.hpp"

namespace tiledag::strassen {

namespace {

using K = KernelKind;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    require(!__builtin_mul_overflow(a, b, &out), "count overflows 64 bits");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    require(!__builtin_add_overflow(a, b, &out), "count overflows 64 bits");
    return out;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) v = checked_mul(v, b);
    return v;
}

// Square block of n x n tiles at (row, col) of a matrix.
struct View {
    std::uint32_t matrix;
    int row;
    int col;
    int n;

    TileRef at(int i, int j) const { return {matrix, row + i, col + j}; }
    View quad(int qi, int qj) const { return {matrix, row + qi * n / 2, col + qj * n / 2, n / 2}; }
};

class Generator {
public:
    explicit Generator(TraceBuilder& tb) : tb_(tb) {}

    void gemm(const View& a, const View& b, const View& c, std::uint8_t level) {
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j)
                for (int k = 0; k < c.n; ++k)
                    tb_.add(K::GEMM, {i, j, k}, {a.at(i, k), b.at(k, j), c.at(i, j)}, {c.at(i, j)}, level);
    }

    void geadd(const View& x, const View& y, const View& z, std::uint8_t level) {
        for (int i = 0; i < z.n; ++i)
            for (int j = 0; j < z.n; ++j) tb_.add(K::GEADD, {i, j}, {x.at(i, j), y.at(i, j)}, {z.at(i, j)}, level);
    }

    View fresh(int n) { return {next_++, 0, 0, n}; }

    void gesw(const View& a, const View& b, const View& c, int levels, std::uint8_t level) {
        if (levels == 0) {
            gemm(a, b, c, level);
            return;
        }
        const int h = a.n / 2;
        const std::uint8_t lv = level;
        auto a11 = a.quad(0, 0), a12 = a.quad(0, 1), a21 = a.quad(1, 0), a22 = a.quad(1, 1);
        auto b11 = b.quad(0, 0), b12 = b.quad(0, 1), b21 = b.quad(1, 0), b22 = b.quad(1, 1);
        auto c11 = c.quad(0, 0), c12 = c.quad(0, 1), c21 = c.quad(1, 0), c22 = c.quad(1, 1);

        View t[8];
        for (auto& x : t) x = fresh(h);
        geadd(a21, a22, t[0], lv);
        geadd(t[0], a11, t[1], lv);
        geadd(a11, a21, t[2], lv);
        geadd(a12, t[1], t[3], lv);
        geadd(b12, b11, t[4], lv);
        geadd(b22, t[4], t[5], lv);
        geadd(b22, b12, t[6], lv);
        geadd(t[5], b21, t[7], lv);

        View q[7];
        for (auto& x : q) x = fresh(h);
        const auto nl = static_cast<std::uint8_t>(level + 1);
        gesw(t[1], t[5], q[0], levels - 1, nl);
        gesw(a11, b11, q[1], levels - 1, nl);
        gesw(a12, b21, q[2], levels - 1, nl);
        gesw(t[2], t[6], q[3], levels - 1, nl);
        gesw(t[0], t[4], q[4], levels - 1, nl);
        gesw(t[3], b22, q[5], levels - 1, nl);
        gesw(a22, t[7], q[6], levels - 1, nl);

        View u[3];
        for (auto& x : u) x = fresh(h);
        geadd(q[0], q[1], u[0], lv);
        geadd(u[0], q[3], u[1], lv);
        geadd(q[4], q[5], u[2], lv);
        geadd(q[1], q[2], c11, lv);
        geadd(u[0], u[2], c12, lv);
        geadd(u[1], q[6], c21, lv);
        geadd(u[1], q[4], c22, lv);
    }

private:
    TraceBuilder& tb_;
    std::uint32_t next_ = kFirstTemp;
};

}  // namespace

std::int64_t Params::mult_flops() const {
    const std::int64_t n = nb;
    return 2 * n * n * n - n * n;
}

std::int64_t Params::add_flops() const { return static_cast<std::int64_t>(nb) * nb; }

void Params::check() const {
    require(p >= 1 && std::has_single_bit(static_cast<unsigned>(p)), "p must be a power of two");
    require(r >= 0 && (1 << r) <= p, "recursion levels must satisfy 0 <= r <= log2(p)");
    require(nb >= 1 && nb <= 100000, "tile order must be in [1, 100000]");
}

Trace gen_tiled_gemm(int n) {
    require(n >= 1, "n must be at least 1");
    TraceBuilder tb;
    Generator gen(tb);
    gen.gemm({kA, 0, 0, n}, {kB, 0, 0, n}, {kC, 0, 0, n}, 0);
    return tb.take();
}

Trace gen_strassen(const Params& params) {
    params.check();
    TraceBuilder tb;
    Generator gen(tb);
    const int n = params.p;
    gen.gesw({kA, 0, 0, n}, {kB, 0, 0, n}, {kC, 0, 0, n}, params.r, 0);
    return tb.take();
}

Counts strassen_counts(const Params& params) {
    params.check();
    const std::int64_t p = params.p;
    const int r = params.r;
    Counts c;
    c.mults = checked_mul(ipow(7, r), ipow(p >> r, 3));
    for (int i = 0; i < r; ++i) {
        const std::int64_t side = p >> (r - i);
        const std::int64_t calls = ipow(7, r - i - 1);
        c.adds = checked_add(c.adds, checked_mul(15 * calls, side * side));
        c.temp_tiles = checked_add(c.temp_tiles, checked_mul(18 * calls, side * side));
    }
    c.tasks = checked_add(c.mults, c.adds);
    c.flops = checked_add(checked_mul(params.mult_flops(), c.mults), checked_mul(params.add_flops(), c.adds));
    return c;
}

int r_min(int p) {
    require(p >= 1, "p must be positive");
    const double x = std::log(p * std::log(8.0 / 7.0) / (5.0 * std::log(7.0 / 4.0))) / std::log(2.0);
    return std::max(1, static_cast<int>(std::ceil(x)));
}

WeightModel flop_weights(int nb) {
    require(nb >= 1, "tile order must be positive");
    return WeightModel::custom({{K::GEMM, 2 * static_cast<std::int64_t>(nb) - 1}, {K::GEADD, 1}});
}

}  // namespace tiledag::strassen
