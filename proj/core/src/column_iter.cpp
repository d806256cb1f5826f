#include "tiledag/column_iter.hpp"

#include <algorithm>

#include "tiledag/error.hpp"

namespace tiledag::qr {

Column::Column(std::vector<std::int64_t> values) : v_(std::move(values)) {
    for (std::size_t i = 0; i < v_.size(); ++i) {
        require(v_[i] >= 0, "column values must be nonnegative");
        require(i == 0 || v_[i - 1] <= v_[i], "column values must be nondecreasing");
    }
}

std::vector<std::pair<std::int64_t, int>> Column::groups() const {
    std::vector<std::pair<std::int64_t, int>> g;
    for (auto x : v_) {
        if (g.empty() || g.back().first != x)
            g.emplace_back(x, 1);
        else
            ++g.back().second;
    }
    return g;
}

bool column_leq(const Column& x, const Column& y) {
    require(x.size() == y.size(), "columns must have equal length");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x.values()[i] > y.values()[i]) return false;
    return true;
}

Column optiter(const Column& a, std::int64_t w) {
    require(w >= 1, "elimination weight must be positive");
    const auto groups = a.groups();
    std::vector<std::int64_t> out;
    if (a.size() <= 1) return Column(out);

    std::size_t next = 0;
    std::int64_t b = groups.front().first;
    std::int64_t r = 0;  // rows available and alive at time b
    const auto target = static_cast<std::int64_t>(a.size()) - 1;
    std::int64_t eliminated = 0;
    while (eliminated < target) {
        while (next < groups.size() && groups[next].first <= b) r += groups[next++].second;
        if (r > 1) {
            const std::int64_t m = r / 2;
            out.insert(out.end(), static_cast<std::size_t>(m), b + w);
            r -= m;
            eliminated += m;
            b += w;
        } else {
            b = groups[next].first;
        }
    }
    return Column(std::move(out));
}

bool is_iterate(const Column& a, const Column& c, std::int64_t w) {
    require(w >= 1, "elimination weight must be positive");
    if (a.empty()) return false;
    if (c.size() != a.size() - 1) return false;
    if (c.empty()) return true;
    if (c.values().front() < a.values().front() + w) return false;
    const auto rounds = c.groups();
    std::int64_t eliminated = 0;
    for (std::size_t h = 0; h < rounds.size(); ++h) {
        const std::int64_t start = rounds[h].first - w;
        const auto arrived = static_cast<std::int64_t>(
            std::upper_bound(a.values().begin(), a.values().end(), start) - a.values().begin());
        std::int64_t busy = 0;
        for (std::size_t g = 0; g < h; ++g)
            if (rounds[g].first > start) busy += rounds[g].second;
        const std::int64_t avail = arrived - eliminated - busy;
        if (rounds[h].second > avail / 2) return false;
        eliminated += rounds[h].second;
    }
    return true;
}

}  // namespace tiledag::qr
