#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Column calculus for the elimination of a single tiled column: a column
// holds the times at which its rows become available, sorted ascending,
// and an iterate holds the completion times of the eliminations.
namespace tiledag::qr {

class Column {
public:
    Column() = default;
    // Throws ContractError unless values are nonnegative and nondecreasing.
    explicit Column(std::vector<std::int64_t> values);

    const std::vector<std::int64_t>& values() const { return v_; }
    std::size_t size() const { return v_.size(); }
    bool empty() const { return v_.empty(); }
    // (a_i, n_i) pairs of the power notation a_1^{n_1} ... a_q^{n_q}.
    std::vector<std::pair<std::int64_t, int>> groups() const;

    friend bool operator==(const Column&, const Column&) = default;

private:
    std::vector<std::int64_t> v_;
};

// Elementwise partial order on columns of equal length.
bool column_leq(const Column& x, const Column& y);

// Smallest iterate under elimination weight w: rounds start as soon as two
// available rows exist and pair half of them; rows that arrive while a round
// runs join at its end, and a lone survivor waits for the next arrival.
Column optiter(const Column& a, std::int64_t w);

// True if c (length n-1) is an iterate of a: every round of m_h eliminations
// finishing at c_h started at c_h - w with at least 2 m_h rows available,
// counting arrivals by then, minus rows already eliminated and minus the
// survivors of rounds still running.
bool is_iterate(const Column& a, const Column& c, std::int64_t w);

}  // namespace tiledag::qr
