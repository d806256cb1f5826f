#include "tiledag/ip_model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "tiledag/error.hpp"

namespace tiledag::ip {

namespace {

struct Expr {
    std::map<int, std::int64_t> terms;
    std::int64_t constant = 0;

    Expr() = default;
    Expr(std::int64_t c) : constant(c) {}  // NOLINT(google-explicit-constructor)
    static Expr var(int v) {
        Expr e;
        e.terms[v] = 1;
        return e;
    }
    Expr& operator+=(const Expr& o) {
        for (auto [v, c] : o.terms) terms[v] += c;
        constant += o.constant;
        return *this;
    }
    Expr& operator*=(std::int64_t s) {
        for (auto& [v, c] : terms) c *= s;
        constant *= s;
        return *this;
    }
};

Expr operator+(Expr a, const Expr& b) { return a += b; }
Expr operator*(std::int64_t s, Expr a) { return a *= s; }
Expr operator-(Expr a, const Expr& b) { return a += -1 * b; }

std::string join(const char* prefix, std::initializer_list<int> idx) {
    std::string s = prefix;
    for (int i : idx) s += "_" + std::to_string(i);
    return s;
}

class Builder {
public:
    Builder(Model& m) : m_(m), p_(m.p), q_(m.q), T_(m.horizon), M_(m.horizon + 3) {}

    int add_var(const std::string& name, VarType type, std::int64_t ub) {
        require(!m_.index.contains(name), "duplicate variable " + name);
        const int id = static_cast<int>(m_.vars.size());
        m_.vars.push_back({name, type, 0, ub});
        m_.index.emplace(name, id);
        return id;
    }

    Expr ref(const std::string& name) const {
        auto it = m_.index.find(name);
        return it == m_.index.end() ? Expr() : Expr::var(it->second);
    }

    bool in_z(int i, int j, int k) const { return k >= 1 && k <= q_ && i >= k && j >= k && i <= p_ && j <= p_; }
    bool in_y(int i, int j, int k, int l) const {
        return l >= 1 && l < k && k <= q_ && i >= l && j >= l && i <= p_ && j <= p_;
    }

    Expr x(int i, int k) const { return ref(join("x", {i, k})); }
    Expr w(int i, int k, int l) const { return ref(join("w", {i, k, l})); }
    Expr z(int i, int j, int k) const { return ref(join("z", {i, j, k})); }
    Expr zh(int i, int j, int k) const { return ref(join("zh", {i, j, k})); }
    Expr y(int i, int j, int k, int l) const { return ref(join("y", {i, j, k, l})); }
    Expr yh(int i, int j, int k, int l) const { return ref(join("yh", {i, j, k, l})); }
    // (1 - ind_a - ind_b) M; M = T + 3 covers the largest gap constant
    Expr relax(const Expr& a, const Expr& b) const { return M_ * (Expr(1) - a - b); }

    void add(const std::string& group, const Expr& lhs, Sense s, const Expr& rhs) {
        Expr e = lhs - rhs;
        Constraint c;
        c.group = group;
        c.sense = s;
        c.rhs = -e.constant;
        for (auto [v, coef] : e.terms)
            if (coef != 0) c.terms.push_back({v, coef});
        if (c.terms.empty()) {
            const bool ok = s == Sense::LE ? 0 <= c.rhs : s == Sense::GE ? 0 >= c.rhs : c.rhs == 0;
            if (ok) return;
            // keep infeasible constants visible in the text
            c.terms.push_back({m_.find("total_time"), 0});
        }
        m_.cons.push_back(std::move(c));
    }
    void le(const std::string& g, const Expr& a, const Expr& b) { add(g, a, Sense::LE, b); }
    void ge(const std::string& g, const Expr& a, const Expr& b) { add(g, a, Sense::GE, b); }
    void eq(const std::string& g, const Expr& a, const Expr& b) { add(g, a, Sense::EQ, b); }

    std::int64_t M() const { return M_; }

private:
    Model& m_;
    int p_;
    int q_;
    std::int64_t T_;
    std::int64_t M_;
};

struct TaskVar {
    std::string name;
    std::string indicator;  // empty: the task always happens
    int duration;
};

std::vector<TaskVar> task_vars(int p, int q) {
    std::vector<TaskVar> out;
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i) out.push_back({join("x", {i, k}), "", 2});
    for (int k = 1; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i) out.push_back({join("w", {i, k, l}), "", 3});
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int j = k; j <= p; ++j)
                if (i != j) out.push_back({join("z", {i, j, k}), join("zh", {i, j, k}), 1});
    for (int k = 1; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i)
                for (int j = l; j <= p; ++j)
                    if (i != j) out.push_back({join("y", {i, j, k, l}), join("yh", {i, j, k, l}), 3});
    return out;
}

std::string cap_name(const std::string& var, std::int64_t t) { return "g_" + var + "_" + std::to_string(t); }

}  // namespace

int Model::find(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

std::string Model::constraint_name(std::size_t c) const {
    std::string g = cons[c].group;
    std::replace(g.begin(), g.end(), '-', '_');
    return "g" + g + "_" + std::to_string(c + 1);
}

std::size_t Model::family_size(const std::string& prefix) const {
    const std::string p = prefix + "_";
    return static_cast<std::size_t>(std::count_if(vars.begin(), vars.end(), [&](const Variable& v) {
        return v.name.compare(0, p.size(), p) == 0;
    }));
}

std::size_t Model::group_size(const std::string& group) const {
    return static_cast<std::size_t>(
        std::count_if(cons.begin(), cons.end(), [&](const Constraint& c) { return c.group == group; }));
}

Model emit_ip(int p, int q, std::int64_t horizon, const Options& opts) {
    require(q >= 1 && p >= q, "requires p >= q >= 1");
    require(horizon >= 1, "horizon T must be positive");
    require(opts.procs >= 0, "processor limit must be nonnegative");
    Model m;
    m.p = p;
    m.q = q;
    m.horizon = horizon;
    m.procs = opts.procs;
    Builder b(m);
    const std::int64_t T = horizon;
    const std::int64_t M = b.M();
    using VT = VarType;

    // ---- variables
    b.add_var("total_time", VT::Integer, T);
    for (int i = 1; i <= p; ++i)
        for (int k = 1; k <= q; ++k) b.add_var(join("x", {i, k}), VT::Integer, T);
    for (int k = 1; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i) b.add_var(join("w", {i, k, l}), VT::Integer, T);
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int j = k; j <= p; ++j) {
                b.add_var(join("z", {i, j, k}), VT::Integer, T);
                b.add_var(join("zh", {i, j, k}), VT::Binary, 1);
            }
    for (int k = 1; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i)
                for (int j = l; j <= p; ++j) {
                    b.add_var(join("y", {i, j, k, l}), VT::Integer, T);
                    b.add_var(join("yh", {i, j, k, l}), VT::Binary, 1);
                }
    auto distinct = [](int h, int i, int j) { return h != i && h != j && i != j; };
    for (int k = 2; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int h = l; h <= p; ++h)
                for (int i = l; i <= p; ++i)
                    for (int j = l; j <= p; ++j)
                        if (distinct(h, i, j))
                            for (const char* d : {"dl1", "dl2", "dl3", "dl4"})
                                b.add_var(join(d, {h, i, j, k, l}), VT::Binary, 1);
    for (int k = 1; k <= q; ++k)
        for (int h = k; h <= p; ++h)
            for (int i = k; i <= p; ++i)
                for (int j = k; j <= p; ++j)
                    if (distinct(h, i, j)) {
                        for (const char* d : {"dl5", "dl6", "a1", "a2", "b", "c1", "c"})
                            b.add_var(join(d, {h, i, j, k}), VT::Binary, 1);
                    }
    for (int k = 2; k <= q; ++k)
        for (int h = k - 1; h <= p; ++h)
            for (int i = k - 1; i <= p; ++i)
                for (int j = k - 1; j <= p; ++j)
                    if (distinct(h, i, j))
                        for (const char* d : {"d", "e", "f"}) b.add_var(join(d, {h, i, j, k}), VT::Binary, 1);

    // ---- 1. time gaps
    for (int k = 2; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i) {
                for (int l1 = 1; l1 < l; ++l1) {
                    b.ge("1a1", b.w(i, k, l), b.w(i, k, l1) + Expr(3));
                    for (int j = 1; j <= p; ++j)
                        if (j != i) b.ge("1a2", b.w(i, k, l), b.y(i, j, k, l1) + b.y(j, i, k, l1) + Expr(3));
                }
            }
    for (int k = 2; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = 1; i <= p; ++i)
                for (int j = 1; j <= p; ++j)
                    if (i != j && b.in_y(i, j, k, l))
                        b.le("1a3", b.w(i, k, l) + Expr(3),
                             b.y(i, j, k, l) + b.y(j, i, k, l) + b.relax(b.yh(i, j, k, l), b.yh(j, i, k, l)));
    for (int k = 2; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int l = 1; l < k; ++l) b.le("1a4", b.w(i, k, l) + Expr(2), b.x(i, k));
    for (int k = 2; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = k; i <= p; ++i)
                for (int j = k; j <= p; ++j)
                    if (i != j)
                        b.le("1a5", b.w(i, k, l) + Expr(1),
                             b.z(i, j, k) + b.z(j, i, k) + b.relax(b.zh(i, j, k), b.zh(j, i, k)));
    for (int k = 2; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int l = 1; l < k; ++l)
                for (int j = l; j <= p; ++j)
                    if (j != i) b.ge("1b2", b.x(i, k), b.y(i, j, k, l) + b.y(j, i, k, l) + Expr(2));
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int j = k; j <= p; ++j)
                if (j != i)
                    b.le("1b3", b.x(i, k) + Expr(1),
                         b.z(i, j, k) + b.z(j, i, k) + b.relax(b.zh(i, j, k), b.zh(j, i, k)));
    for (int k = 2; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int h = l; h <= p; ++h)
                for (int i = l; i <= p; ++i)
                    for (int j = l; j <= p; ++j) {
                        if (!distinct(h, i, j)) continue;
                        const Expr yij = b.y(i, j, k, l) + b.y(j, i, k, l);
                        const Expr yhi = b.y(h, i, k, l) + b.y(i, h, k, l);
                        const Expr yhj = b.y(h, j, k, l) + b.y(j, h, k, l);
                        const Expr rij = b.relax(b.yh(i, j, k, l), b.yh(j, i, k, l));
                        const Expr rhi = b.relax(b.yh(h, i, k, l), b.yh(i, h, k, l));
                        const Expr rhj = b.relax(b.yh(h, j, k, l), b.yh(j, h, k, l));
                        auto dl = [&](const char* n) { return M * b.ref(join(n, {h, i, j, k, l})); };
                        b.le("1c3", yij + Expr(3), yhi + rhi + dl("dl1"));
                        b.le("1c3", yhi + Expr(3), yij + rij + dl("dl2"));
                        b.le("1c3", b.ref(join("dl1", {h, i, j, k, l})) + b.ref(join("dl2", {h, i, j, k, l})),
                             Expr(1));
                        b.le("1c3", yij + Expr(3), yhj + rhj + dl("dl3"));
                        b.le("1c3", yhj + Expr(3), yij + rij + dl("dl4"));
                        b.le("1c3", b.ref(join("dl3", {h, i, j, k, l})) + b.ref(join("dl4", {h, i, j, k, l})),
                             Expr(1));
                    }
    for (int k = 2; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i)
                for (int j = l; j <= p; ++j) {
                    if (i == j) continue;
                    for (int h = k; h <= p; ++h) {
                        if (h != i && b.in_z(h, i, k))
                            b.le("1c4", b.y(i, j, k, l) + Expr(3),
                                 b.z(h, i, k) + b.z(i, h, k) + b.relax(b.zh(h, i, k), b.zh(i, h, k)));
                        if (h != j && b.in_z(h, j, k))
                            b.le("1c4", b.y(i, j, k, l) + Expr(3),
                                 b.z(h, j, k) + b.z(j, h, k) + b.relax(b.zh(h, j, k), b.zh(j, h, k)));
                    }
                }
    for (int k = 1; k <= q; ++k)
        for (int h = k; h <= p; ++h)
            for (int i = k; i <= p; ++i)
                for (int j = k; j <= p; ++j) {
                    if (!distinct(h, i, j)) continue;
                    auto dl = [&](const char* n) { return b.ref(join(n, {h, i, j, k})); };
                    b.le("1d4-case1", b.z(j, i, k) + Expr(1), b.z(h, i, k) + M * (Expr(1) - b.zh(h, i, k)) + M * dl("dl5"));
                    b.le("1d4-case1", b.z(h, i, k) + Expr(1), b.z(j, i, k) + M * (Expr(1) - b.zh(j, i, k)) + M * dl("dl6"));
                    b.le("1d4-case1", dl("dl5") + dl("dl6"), Expr(1));
                    b.le("1d4-case2", b.z(j, i, k) + Expr(1), b.z(i, h, k) + M * (Expr(1) - b.zh(i, h, k)));
                }

    // ---- 2. a tile cannot zero or update with itself
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i) b.eq("2", b.z(i, i, k), Expr(0));
    for (int k = 1; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i) b.eq("2", b.y(i, i, k, l), Expr(0));

    // ---- 3. both tiles of a TTQRT are triangles first
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int j = k; j <= p; ++j) {
                if (i == j) continue;
                const Expr r = M * (Expr(1) - b.zh(i, j, k)) + b.z(i, j, k);
                b.le("3", b.x(i, k), r);
                b.le("3", b.x(j, k), r);
            }

    // ---- 4. forced updates
    for (int k = 1; k < q; ++k)
        for (int i = k; i <= p; ++i)
            for (int l = k + 1; l <= q; ++l) b.le("4a", b.x(i, k), b.w(i, l, k) - Expr(3));
    for (int k = 1; k < q; ++k)
        for (int i = k; i <= p; ++i)
            for (int j = k; j <= p; ++j)
                if (i != j)
                    for (int l = k + 1; l <= q; ++l) b.le("4b", b.z(i, j, k), b.y(i, j, l, k) + b.y(j, i, l, k));

    // ---- 5. triangularization updates precede zeroing updates
    for (int k = 2; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i)
                for (int j = l; j <= p; ++j)
                    if (i != j)
                        b.le("5", b.w(i, k, l),
                             b.relax(b.yh(i, j, k, l), b.yh(j, i, k, l)) + b.y(i, j, k, l) + b.y(j, i, k, l));

    // ---- 6. no update after triangularization
    for (int k = 2; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int l = 1; l < k; ++l) {
                b.ge("6", b.x(i, k), b.w(i, k, l));
                for (int j = l; j <= p; ++j)
                    if (j != i) b.ge("6", b.x(i, k), b.y(i, j, k, l) + b.y(j, i, k, l));
            }

    // ---- 7. a zeroed tile zeroes nothing afterwards
    for (int k = 1; k <= q; ++k)
        for (int h = k; h <= p; ++h)
            for (int i = k; i <= p; ++i)
                for (int j = k; j <= p; ++j)
                    if (h != i && i != j)
                        b.ge("7", b.z(i, j, k) + M * (Expr(1) - b.zh(i, j, k)), b.z(h, i, k));

    // ---- 8, 9, 10
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i) b.ge("8", b.x(i, k), Expr(2));
    for (int k = 1; k <= q; ++k)
        for (int i = k + 1; i <= p; ++i) {
            Expr s;
            for (int j = k; j <= p; ++j)
                if (j != i) s += b.zh(i, j, k);
            b.eq("9", s, Expr(1));
        }
    for (int k = 1; k <= q; ++k)
        for (int i = 1; i < k && i <= p; ++i) b.eq("10", b.x(i, k), Expr(0));

    // ---- 11. indicators
    for (int k = 1; k <= q; ++k)
        for (int i = k; i <= p; ++i)
            for (int j = k; j <= p; ++j) {
                b.le("11", b.zh(i, j, k), b.z(i, j, k));
                b.ge("11", T * b.zh(i, j, k), b.z(i, j, k));
            }
    for (int k = 1; k <= q; ++k)
        for (int l = 1; l < k; ++l)
            for (int i = l; i <= p; ++i)
                for (int j = l; j <= p; ++j) {
                    b.le("11", b.yh(i, j, k, l), b.y(i, j, k, l));
                    b.ge("11", T * b.yh(i, j, k, l), b.y(i, j, k, l));
                }

    // ---- precedence block
    for (int k = 1; k <= q; ++k)
        for (int h = k; h <= p; ++h)
            for (int i = k; i <= p; ++i)
                for (int j = k; j <= p; ++j) {
                    if (!distinct(h, i, j)) continue;
                    auto v = [&](const char* n) { return b.ref(join(n, {h, i, j, k})); };
                    b.le("prec-a1", v("a1"), b.zh(h, i, k));
                    b.le("prec-a1", v("a1"), b.zh(j, i, k));
                    b.ge("prec-a1", v("a1") + Expr(1), b.zh(h, i, k) + b.zh(j, i, k));
                    b.le("prec-a2", v("a2"), b.zh(i, h, k));
                    b.le("prec-a2", v("a2"), b.zh(j, i, k));
                    b.ge("prec-a2", v("a2") + Expr(1), b.zh(i, h, k) + b.zh(j, i, k));
                    b.ge("prec-b", T * v("b"), b.z(h, i, k) - b.z(j, i, k));
                    b.le("prec-b", T * (v("b") - Expr(1)), b.z(h, i, k) - b.z(j, i, k));
                    b.le("prec-c1", v("c1"), v("a1"));
                    b.le("prec-c1", v("c1"), v("b"));
                    b.ge("prec-c1", v("c1") + Expr(1), v("a1") + v("b"));
                    b.ge("prec-c", v("c"), v("c1"));
                    b.ge("prec-c", v("c"), v("a2"));
                    b.le("prec-c", v("c"), v("c1") + v("a2"));
                }
    for (int k = 2; k <= q; ++k)
        for (int h = k - 1; h <= p; ++h)
            for (int i = k - 1; i <= p; ++i)
                for (int j = k - 1; j <= p; ++j) {
                    if (!distinct(h, i, j)) continue;
                    const int l = k - 1;
                    auto v = [&](const char* n) { return b.ref(join(n, {h, i, j, k})); };
                    const Expr uhi = b.yh(h, i, k, l) + b.yh(i, h, k, l);
                    const Expr uij = b.yh(j, i, k, l) + b.yh(i, j, k, l);
                    const Expr diff = b.y(h, i, k, l) + b.y(i, h, k, l) - b.y(j, i, k, l) - b.y(i, j, k, l);
                    b.le("prec-d", v("d"), uhi);
                    b.le("prec-d", v("d"), uij);
                    b.ge("prec-d", v("d") + Expr(1), uhi + uij);
                    b.ge("prec-e", T * v("e"), diff);
                    b.le("prec-e", T * (v("e") - Expr(1)), diff);
                    b.le("prec-f", v("f"), v("d"));
                    b.le("prec-f", v("f"), v("e"));
                    b.ge("prec-f", v("f") + Expr(1), v("d") + v("e"));
                }
    for (int k = 1; k + 1 <= q; ++k)
        for (int h = k; h <= p; ++h)
            for (int i = k; i <= p; ++i)
                for (int j = k; j <= p; ++j)
                    if (distinct(h, i, j))
                        b.le("prec-order", b.ref(join("c", {h, i, j, k})), b.ref(join("f", {h, i, j, k + 1})));

    // ---- objective bounds
    const Expr total = b.ref("total_time");
    for (const auto& v : std::vector<Variable>(m.vars)) {
        const char c0 = v.name[0];
        if ((c0 == 'w' || c0 == 'x' || c0 == 'y' || c0 == 'z') && v.name[1] == '_')
            b.ge("objective", total, b.ref(v.name));
    }

    // ---- capacity extension
    if (opts.procs > 0) {
        const auto tasks = task_vars(p, q);
        std::vector<Expr> running(static_cast<std::size_t>(T + 1));
        for (const auto& tv : tasks) {
            Expr count, when;
            for (std::int64_t t = tv.duration; t <= T; ++t) {
                const Expr g = Expr::var(b.add_var(cap_name(tv.name, t), VT::Binary, 1));
                count += g;
                when += t * g;
                for (std::int64_t s = t - tv.duration + 1; s <= t; ++s) running[static_cast<std::size_t>(s)] += g;
            }
            b.eq("capacity", when, b.ref(tv.name));
            b.eq("capacity", count, tv.indicator.empty() ? Expr(1) : b.ref(tv.indicator));
        }
        for (std::int64_t s = 1; s <= T; ++s)
            b.le("capacity", running[static_cast<std::size_t>(s)], Expr(opts.procs));
    }
    return m;
}

void write_lp(std::ostream& os, const Model& m) {
    os << "\\ tiled QR, TT kernels: p=" << m.p << " q=" << m.q << " T=" << m.horizon;
    if (m.procs > 0) os << " procs=" << m.procs;
    os << "\n\\ one time step = 2 weight units\n";
    os << "Minimize\n obj: total_time\nSubject To\n";
    for (std::size_t c = 0; c < m.cons.size(); ++c) {
        const auto& con = m.cons[c];
        os << ' ' << m.constraint_name(c) << ':';
        for (const auto& t : con.terms) {
            os << (t.coef < 0 ? " - " : " + ");
            const auto a = t.coef < 0 ? -t.coef : t.coef;
            if (a != 1) os << a << ' ';
            os << m.vars[static_cast<std::size_t>(t.var)].name;
        }
        os << (con.sense == Sense::LE ? " <= " : con.sense == Sense::GE ? " >= " : " = ") << con.rhs << '\n';
    }
    os << "Bounds\n";
    for (const auto& v : m.vars)
        if (v.type == VarType::Integer) os << ' ' << v.lb << " <= " << v.name << " <= " << v.ub << '\n';
    os << "General\n";
    for (const auto& v : m.vars)
        if (v.type == VarType::Integer) os << ' ' << v.name << '\n';
    os << "Binary\n";
    for (const auto& v : m.vars)
        if (v.type == VarType::Binary) os << ' ' << v.name << '\n';
    os << "End\n";
}

namespace {

std::int64_t lhs_value(const Constraint& c, const std::vector<std::int64_t>& val) {
    std::int64_t s = 0;
    for (const auto& t : c.terms) s += t.coef * val[static_cast<std::size_t>(t.var)];
    return s;
}

bool holds(const Constraint& c, std::int64_t lhs) {
    switch (c.sense) {
        case Sense::LE: return lhs <= c.rhs;
        case Sense::GE: return lhs >= c.rhs;
        case Sense::EQ: return lhs == c.rhs;
    }
    return false;
}

}  // namespace

Assignment schedule_to_assignment(const Model& m, const TaskGraph& g, const Schedule& s) {
    require(s.slots.size() == g.size(), "schedule does not match the graph");
    std::vector<std::int64_t> val(m.vars.size(), 0);
    auto set = [&](const std::string& name, std::int64_t v) {
        const int id = m.find(name);
        require(id >= 0, "task maps to unknown model variable " + name);
        val[static_cast<std::size_t>(id)] = v;
    };
    for (const auto& t : g.tasks()) {
        const auto& slot = s.slots[static_cast<std::size_t>(t.id)];
        require(slot.start % 2 == 0 && slot.finish % 2 == 0, "task " + t.label() + " is not aligned to time steps");
        const std::int64_t f = slot.finish / 2;
        require(f <= m.horizon, "task " + t.label() + " finishes after the horizon");
        const auto& x = t.idx;
        switch (t.kind) {
            case KernelKind::GEQRT: set(join("x", {x[0], x[1]}), f); break;
            case KernelKind::UNMQR: set(join("w", {x[0], x[2], x[1]}), f); break;
            case KernelKind::TTQRT:
                set(join("z", {x[0], x[1], x[2]}), f);
                set(join("zh", {x[0], x[1], x[2]}), 1);
                break;
            case KernelKind::TTMQR:
                set(join("y", {x[0], x[1], x[3], x[2]}), f);
                set(join("yh", {x[0], x[1], x[3], x[2]}), 1);
                break;
            default: throw ContractError("the model covers TT kernels only, found " + t.label());
        }
    }
    auto get = [&](const std::string& name) -> std::int64_t {
        const int id = m.find(name);
        return id < 0 ? 0 : val[static_cast<std::size_t>(id)];
    };
    auto put = [&](const std::string& name, bool v) { set(name, v ? 1 : 0); };

    const int p = m.p, q = m.q;
    auto distinct = [](int h, int i, int j) { return h != i && h != j && i != j; };
    for (int k = 1; k <= q; ++k)
        for (int h = k; h <= p; ++h)
            for (int i = k; i <= p; ++i)
                for (int j = k; j <= p; ++j) {
                    if (!distinct(h, i, j)) continue;
                    auto n = [&](const char* f) { return join(f, {h, i, j, k}); };
                    const bool a1 = get(join("zh", {h, i, k})) && get(join("zh", {j, i, k}));
                    const bool a2 = get(join("zh", {i, h, k})) && get(join("zh", {j, i, k}));
                    const bool bb = get(join("z", {h, i, k})) > get(join("z", {j, i, k}));
                    put(n("a1"), a1);
                    put(n("a2"), a2);
                    put(n("b"), bb);
                    put(n("c1"), a1 && bb);
                    put(n("c"), (a1 && bb) || a2);
                }
    for (int k = 2; k <= q; ++k)
        for (int h = k - 1; h <= p; ++h)
            for (int i = k - 1; i <= p; ++i)
                for (int j = k - 1; j <= p; ++j) {
                    if (!distinct(h, i, j)) continue;
                    const int l = k - 1;
                    auto n = [&](const char* f) { return join(f, {h, i, j, k}); };
                    const bool d = (get(join("yh", {h, i, k, l})) || get(join("yh", {i, h, k, l}))) &&
                                   (get(join("yh", {j, i, k, l})) || get(join("yh", {i, j, k, l})));
                    const bool e = get(join("y", {h, i, k, l})) + get(join("y", {i, h, k, l})) >
                                   get(join("y", {j, i, k, l})) + get(join("y", {i, j, k, l}));
                    put(n("d"), d);
                    put(n("e"), e);
                    put(n("f"), d && e);
                }
    // Each disjunction binary (coefficient -M) relaxes the one constraint it appears in
    // when that constraint fails without it.
    for (const auto& c : m.cons) {
        if (c.group != "1c3" && c.group != "1d4-case1") continue;
        for (const auto& t : c.terms) {
            const auto& name = m.vars[static_cast<std::size_t>(t.var)].name;
            if (name.rfind("dl", 0) == 0 && c.sense == Sense::LE && t.coef == -(m.horizon + 3)) {
                if (!holds(c, lhs_value(c, val))) val[static_cast<std::size_t>(t.var)] = 1;
            }
        }
    }
    std::int64_t total = 0;
    for (std::size_t v = 0; v < m.vars.size(); ++v) {
        const auto& n = m.vars[v].name;
        if ((n[0] == 'w' || n[0] == 'x' || n[0] == 'y' || n[0] == 'z') && n[1] == '_') total = std::max(total, val[v]);
    }
    set("total_time", total);
    if (m.procs > 0)
        for (const auto& tv : task_vars(p, q)) {
            const std::int64_t f = get(tv.name);
            if (f > 0) set(cap_name(tv.name, f), 1);
        }

    Assignment a;
    for (std::size_t v = 0; v < m.vars.size(); ++v)
        if (val[v] != 0) a.emplace(m.vars[v].name, val[v]);
    return a;
}

Verdict check_feasible(const Model& m, const Assignment& a) {
    Verdict out;
    std::vector<std::int64_t> val(m.vars.size(), 0);
    for (const auto& [name, v] : a) {
        const int id = m.find(name);
        if (id < 0) {
            out.violations.push_back({name, "bounds", v, 0});
            continue;
        }
        val[static_cast<std::size_t>(id)] = v;
    }
    for (std::size_t v = 0; v < m.vars.size(); ++v) {
        const auto& var = m.vars[v];
        if (val[v] < var.lb) out.violations.push_back({var.name, "bounds", val[v], var.lb});
        if (val[v] > var.ub) out.violations.push_back({var.name, "bounds", val[v], var.ub});
    }
    for (std::size_t c = 0; c < m.cons.size(); ++c) {
        const auto lhs = lhs_value(m.cons[c], val);
        if (!holds(m.cons[c], lhs)) out.violations.push_back({m.constraint_name(c), m.cons[c].group, lhs, m.cons[c].rhs});
    }
    out.feasible = out.violations.empty();
    return out;
}

Assignment parse_assignment(std::istream& is) {
    Assignment a;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name) || name[0] == '#' || name[0] == '\\') continue;
        double v = 0;
        std::string rest;
        require(static_cast<bool>(ls >> v) && !(ls >> rest),
                "line " + std::to_string(lineno) + ": expected \"name value\"");
        const auto iv = static_cast<std::int64_t>(std::llround(v));
        require(static_cast<double>(iv) == v || std::abs(v - static_cast<double>(iv)) < 1e-6,
                "line " + std::to_string(lineno) + ": value of " + name + " is not integral");
        a[name] = iv;
    }
    return a;
}

void write_assignment(std::ostream& os, const Assignment& a) {
    for (const auto& [name, v] : a) os << name << ' ' << v << '\n';
}

}  // namespace tiledag::ip
