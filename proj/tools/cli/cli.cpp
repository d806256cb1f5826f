#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "golden.hpp"
#include "tiledag/cholesky.hpp"
#include "tiledag/error.hpp"
#include "tiledag/ip_model.hpp"
#include "tiledag/qr.hpp"
#include "tiledag/sched.hpp"
#include "tiledag/strassen.hpp"

namespace tiledag::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("TILEDAG_OUT_DIR"); dir && *dir) return std::filesystem::path(dir) / p;
    }
    return p;
}

std::ofstream open_output(const std::filesystem::path& p) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw ContractError("cannot open '" + p.string() + "' for writing");
    return f;
}

// Collects --check comparisons.
class Checker {
public:
    explicit Checker(std::ostream& err) : err_(err) {}

    template <class A, class B>
    void expect(const std::string& cell, const A& expected, const B& actual) {
        ++cells_;
        if (expected == actual) return;
        ++bad_;
        err_ << "mismatch " << cell << ": expected " << expected << ", got " << actual << "\n";
    }
    void expect_at_most(const std::string& cell, std::int64_t limit, std::int64_t actual) {
        ++cells_;
        if (actual <= limit) return;
        ++bad_;
        err_ << "mismatch " << cell << ": expected at most " << limit << ", got " << actual << "\n";
    }
    void expect_rel(const std::string& cell, double expected, double actual, double tol) {
        ++cells_;
        if (std::abs(actual - expected) <= tol * std::abs(expected)) return;
        ++bad_;
        err_ << "mismatch " << cell << ": expected " << expected << ", got " << actual << " (tolerance "
             << tol * 100 << "%)\n";
    }
    int finish() const {
        if (cells_ == 0) {
            err_ << "check: no reference values for this invocation\n";
            return kOk;
        }
        if (bad_ == 0) {
            err_ << "check: " << cells_ << " cells match\n";
            return kOk;
        }
        err_ << "check: " << bad_ << " of " << cells_ << " cells differ\n";
        return kCheckFailed;
    }

private:
    std::ostream& err_;
    int cells_ = 0;
    int bad_ = 0;
};

std::string cell(const std::string& table, int i, int k) {
    return table + "(" + std::to_string(i) + "," + std::to_string(k) + ")";
}

void check_grid(Checker& c, const std::string& name, const golden::Grid& ref, const qr::TileTable& t) {
    for (int i = 1; i <= t.p() && i <= static_cast<int>(ref.size()); ++i)
        for (int k = 1; k <= t.q() && k < i; ++k) c.expect(cell(name, i, k), ref[i - 1][k - 1], t.at(i, k));
}

void write_tile_table(std::ostream& os, const qr::TileTable& t) {
    os << "i";
    for (int k = 1; k <= t.q(); ++k) os << "," << k;
    os << "\n";
    for (int i = 1; i <= t.p(); ++i) {
        os << i;
        for (int k = 1; k <= t.q(); ++k) {
            os << ",";
            if (i > k) os << t.at(i, k);
        }
        os << "\n";
    }
}

void write_list(std::ostream& os, const qr::EliminationList& list) {
    os << "k,i,piv,step\n";
    for (const auto& e : list.entries) os << e.k << "," << e.i << "," << e.piv << "," << e.step << "\n";
}

qr::TiledAlgo parse_algo(const std::string& name, int bs) {
    std::string s = name;
    if ((s == "plasmatree" || s == "plasma") && bs > 0) s += ":" + std::to_string(bs);
    auto a = qr::TiledAlgo::parse(s);
    if (!a) throw UsageError("unknown algorithm '" + name + "'");
    return *a;
}

qr::Family parse_family(const std::string& s) {
    if (s == "tt") return qr::Family::TT;
    if (s == "ts") return qr::Family::TS;
    throw UsageError("unknown kernel family '" + s + "' (expected tt or ts)");
}

TaskGraph qr_graph(int p, int q, const qr::TiledAlgo& algo, qr::Family family) {
    return build_from_trace(qr::tiled_trace(qr::elimination_list(p, q, algo), family));
}

// Golden column of the 5 x 5 schedule-length table for an algorithm, if any.
using Qr5Column = std::int64_t golden::Qr5Row::*;

Qr5Column qr5_column(const qr::TiledAlgo& a) {
    using Tag = qr::TiledAlgo::Tag;
    switch (a.tag) {
        case Tag::GrASAP: return a.i == 1 ? &golden::Qr5Row::grasap : nullptr;
        case Tag::Greedy: return &golden::Qr5Row::greedy;
        case Tag::Fibonacci: return &golden::Qr5Row::fibonacci;
        case Tag::FlatTree: return &golden::Qr5Row::flattree;
        default: return nullptr;
    }
}

const golden::Qr5Row* qr5_row(int procs) {
    for (const auto& r : golden::kQr5x5)
        if (r.procs == procs) return &r;
    return nullptr;
}

std::int64_t ceil_rational(const Rational& r) {
    std::int64_t q = r.numerator() / r.denominator();
    if (q * r.denominator() < r.numerator()) ++q;
    return q;
}

// ---- Subcommands -----------------------------------------------------------

struct Common {
    std::string out;
    bool check = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "Write CSV to this file instead of standard output");
    sub->add_flag("--check", c.check, "Compare against published reference values; exit 3 on mismatch");
}

chol::FactVariant parse_fact_variant(const std::string& s) {
    if (s == "right") return chol::FactVariant::RightLooking;
    if (s == "left") return chol::FactVariant::LeftLooking;
    if (s == "bordered") return chol::FactVariant::Bordered;
    throw UsageError("unknown variant '" + s + "' (expected right, left or bordered)");
}

std::array<chol::LoopDir, 3> parse_dirs(const std::string& s) {
    if (s.size() != 3) throw UsageError("--dirs takes three letters from {U, D}");
    std::array<chol::LoopDir, 3> d{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (s[i] == 'U' || s[i] == 'u')
            d[i] = chol::LoopDir::U;
        else if (s[i] == 'D' || s[i] == 'd')
            d[i] = chol::LoopDir::D;
        else
            throw UsageError("--dirs takes three letters from {U, D}");
    }
    return d;
}

struct CholCp {
    Common c;
    std::string t = "2..10";
    bool inversion = false;
    bool out_of_place = false;
    bool barriers = false;
    std::string dirs = "UDU";
    std::string variant = "right";
    std::string weights = "cholesky";
};

int chol_cp(const CholCp& o, std::ostream& os, std::ostream& err) {
    Checker chk(err);
    const auto ts = parse_int_list(o.t);
    if (!o.inversion) {
        const auto variant = parse_fact_variant(o.variant);
        WeightModel w = o.weights == "unit" ? WeightModel::unit() : WeightModel::cholesky();
        if (o.weights != "unit" && o.weights != "cholesky") throw UsageError("--weights is unit or cholesky");
        os << "t,variant,weights,cp\n";
        for (int t : ts) {
            const auto cp = cp_length(build_from_trace(chol::gen_chol_fact(t, variant)), w);
            os << t << "," << o.variant << "," << o.weights << "," << cp << "\n";
            if (o.c.check && t >= 2 && variant == chol::FactVariant::RightLooking && o.weights == "cholesky")
                chk.expect("cp(t=" + std::to_string(t) + ")", chol::chol_cp_oracle(t, chol::CpFormula::Fact9tMinus10),
                           cp);
        }
        return o.c.check ? chk.finish() : kOk;
    }
    chol::InvConfig cfg;
    cfg.placement = o.out_of_place ? chol::Placement::OutOfPlace : chol::Placement::InPlace;
    cfg.loop_dirs = parse_dirs(o.dirs);
    cfg.pipelined = !o.barriers;
    const auto w = WeightModel::unit();
    os << "t,step1,step2,step3,total\n";
    for (int t : ts) {
        cfg.t = t;
        auto g = build_from_trace(chol::gen_chol_inversion(cfg));
        const auto s1 = chol::step_cp(g, 1, w), s2 = chol::step_cp(g, 2, w), s3 = chol::step_cp(g, 3, w);
        const auto total = cp_length(g, w);
        os << t << "," << s1 << "," << s2 << "," << s3 << "," << total << "\n";
        if (!o.c.check || t < 2) continue;
        using F = chol::CpFormula;
        const bool in = !o.out_of_place;
        const auto tag = [&](const char* what) { return std::string(what) + "(t=" + std::to_string(t) + ")"; };
        if (o.dirs == "UDU") {
            chk.expect(tag("step1"), chol::chol_cp_oracle(t, F::Step1), s1);
            chk.expect(tag("step2"), chol::chol_cp_oracle(t, in ? F::Step2In : F::Step2Out), s2);
            chk.expect(tag("step3"), chol::chol_cp_oracle(t, in ? F::Step3In : F::Step3Out), s3);
            const F tf = o.barriers ? (in ? F::NoPipeIn : F::NoPipeOut) : (in ? F::PipeIn : F::PipeOut);
            chk.expect(tag("total"), chol::chol_cp_oracle(t, tf), total);
        } else if (o.dirs == "UUU" && in) {
            chk.expect(tag("step2"), chol::chol_cp_oracle(t, F::TrtriUUUIn), s2);
        }
    }
    return o.c.check ? chk.finish() : kOk;
}

struct CholBounds {
    Common c;
    int t = 5;
    std::string procs = "1..10";
};

int chol_bounds(const CholBounds& o, std::ostream& os, std::ostream& err) {
    Checker chk(err);
    auto g = build_from_trace(chol::gen_chol_fact(o.t));
    const auto rows = bounds_table(g, WeightModel::cholesky(), parse_int_list(o.procs));
    os << "p,lost_area,T_p,S_p,E_p,T_roof\n";
    for (const auto& r : rows) {
        const auto tp = format_fixed(r.t_alap, 2), sp = format_fixed(r.speedup, 2), ep = format_fixed(r.efficiency, 2);
        os << r.p << "," << r.lost_area << "," << tp << "," << sp << "," << ep << "," << format_fixed(r.t_roof, 2)
           << "\n";
        if (!o.c.check || o.t != 5) continue;
        const std::string p = "(p=" + std::to_string(r.p) + ")";
        for (const auto& ref : golden::kCholBounds5) {
            if (ref.p != r.p) continue;
            chk.expect("T" + p, ref.t, tp);
            chk.expect("S" + p, ref.s, sp);
            chk.expect("E" + p, ref.e, ep);
        }
        for (const auto& ref : golden::kLostArea5)
            if (ref.p == r.p) chk.expect("LA" + p, ref.la, r.lost_area);
    }
    return o.c.check ? chk.finish() : kOk;
}

struct QrCoarse {
    Common c;
    int p = 15;
    int q = 6;
    std::string algo = "greedy";
    bool list = false;
};

int qr_coarse(const QrCoarse& o, std::ostream& os, std::ostream& err) {
    qr::CoarseAlgo a;
    const golden::Grid* ref = nullptr;
    if (o.algo == "sameh-kuck" || o.algo == "samehkuck" || o.algo == "flattree") {
        a = qr::CoarseAlgo::SamehKuck;
        ref = &golden::kCoarseSamehKuck;
    } else if (o.algo == "fibonacci") {
        a = qr::CoarseAlgo::Fibonacci;
        ref = &golden::kCoarseFibonacci;
    } else if (o.algo == "greedy") {
        a = qr::CoarseAlgo::Greedy;
        ref = &golden::kCoarseGreedy;
    } else {
        throw UsageError("unknown coarse algorithm '" + o.algo + "' (expected sameh-kuck, fibonacci or greedy)");
    }
    auto res = qr::coarse_schedule(o.p, o.q, a);
    if (o.list)
        write_list(os, res.list);
    else
        write_tile_table(os, res.table);
    if (!o.c.check) return kOk;
    Checker chk(err);
    if (o.p == 15 && o.q == 6) check_grid(chk, "coarse", *ref, res.table);
    return chk.finish();
}

struct QrTiled {
    Common c;
    int p = 15;
    int q = 6;
    std::string algo = "greedy";
    int bs = 0;
    std::string family = "tt";
    bool list = false;
};

int qr_tiled(const QrTiled& o, std::ostream& os, std::ostream& err) {
    const auto algo = parse_algo(o.algo, o.bs);
    const auto family = parse_family(o.family);
    const auto list = qr::elimination_list(o.p, o.q, algo);
    auto g = build_from_trace(qr::tiled_trace(list, family));
    const auto table = qr::zeroed_times(g, annotate_cp(g, WeightModel::qr_tt()), o.p, o.q);
    if (o.list)
        write_list(os, list);
    else
        write_tile_table(os, table);
    if (!o.c.check) return kOk;
    Checker chk(err);
    using Tag = qr::TiledAlgo::Tag;
    if (family == qr::Family::TT && o.p == 15) {
        const golden::Grid* ref = nullptr;
        if (o.q == 6) {
            switch (algo.tag) {
                case Tag::FlatTree: ref = &golden::kTiledFlatTree; break;
                case Tag::Fibonacci: ref = &golden::kTiledFibonacci; break;
                case Tag::Greedy: ref = &golden::kTiledGreedy; break;
                case Tag::BinaryTree: ref = &golden::kTiledBinaryTree; break;
                case Tag::PlasmaTree:
                    if (algo.bs == 1) ref = &golden::kTiledBinaryTree;
                    if (algo.bs == 5) ref = &golden::kTiledPlasmaTree5;
                    break;
                default: break;
            }
        } else if (o.q <= 3) {
            if (algo.tag == Tag::Greedy) ref = &golden::kGreedy15x3;
            if (algo.tag == Tag::Asap) ref = &golden::kAsap15x3;
        }
        if (ref) check_grid(chk, "zeroed", *ref, table);
    }
    return chk.finish();
}

struct QrCpTable {
    Common c;
    int p = 40;
    std::string q = "1..40";
    std::string algos = "greedy,fibonacci,plasmatree";
    int bs = 0;
    std::string family = "tt";
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> v;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) v.push_back(item);
    return v;
}

int qr_cp_table(const QrCpTable& o, std::ostream& os, std::ostream& err) {
    const auto family = parse_family(o.family);
    const auto w = WeightModel::qr_tt();
    Checker chk(err);
    os << "p,q,algo,bs,cp\n";
    for (int q : parse_int_list(o.q)) {
        for (const auto& name : split_commas(o.algos)) {
            const bool best = (name == "plasmatree" || name == "plasma") && o.bs <= 0;
            std::int64_t cp = 0;
            int bs = 0;
            qr::TiledAlgo algo;
            if (best) {
                for (int b = 1; b <= o.p; ++b) {
                    const auto c = cp_length(qr_graph(o.p, q, parse_algo("plasmatree", b), family), w);
                    if (bs == 0 || c < cp) cp = c, bs = b;
                }
                algo = parse_algo("plasmatree", bs);
            } else {
                algo = parse_algo(name, o.bs);
                cp = cp_length(qr_graph(o.p, q, algo, family), w);
                if (algo.tag == qr::TiledAlgo::Tag::PlasmaTree) bs = algo.bs;
            }
            std::string label = algo.name();
            label = label.substr(0, label.find(':'));
            os << o.p << "," << q << "," << label << ",";
            if (bs) os << bs;
            os << "," << cp << "\n";
            if (!o.c.check || family != qr::Family::TT) continue;
            const std::string where = label + "(" + std::to_string(o.p) + "x" + std::to_string(q) + ")";
            using Tag = qr::TiledAlgo::Tag;
            if (o.p == 40) {
                for (const auto& r : golden::kTheoretical40) {
                    if (r.q != q) continue;
                    if (algo.tag == Tag::Greedy) chk.expect(where, r.greedy, cp);
                    if (algo.tag == Tag::Fibonacci) chk.expect(where, r.fibonacci, cp);
                    if (algo.tag == Tag::PlasmaTree && (best || bs == r.bs)) chk.expect(where, r.plasma, cp);
                }
            }
            for (const auto& r : golden::kGreedyVsAsap) {
                if (r.p != o.p || r.q != q) continue;
                if (algo.tag == Tag::Greedy) chk.expect(where, r.greedy, cp);
                if (algo.tag == Tag::Asap) chk.expect(where, r.asap, cp);
            }
            if (o.p == 20 && q == 6) {
                if (algo.tag == Tag::Greedy) chk.expect(where, golden::kGreedy20x6Cp, cp);
                if (algo.tag == Tag::GrASAP && algo.i == 1) chk.expect(where, golden::kGrasap20x6Cp, cp);
            }
        }
    }
    return o.c.check ? chk.finish() : kOk;
}

struct QrBounds {
    Common c;
    int p = 5;
    int q = 5;
    std::string algo = "grasap";
    int bs = 0;
    std::string procs = "1..14";
};

int qr_bounds(const QrBounds& o, std::ostream& os, std::ostream& err) {
    const auto algo = parse_algo(o.algo, o.bs);
    const auto w = WeightModel::qr_tt();
    auto g = qr_graph(o.p, o.q, algo, qr::Family::TT);
    auto cp = annotate_cp(g, w);
    auto prof = alap_profile(cp);
    Checker chk(err);
    os << "procs,cp,t_seq,lost_area,alap_bound,alap_ceil,rooftop,maxcp_makespan\n";
    for (int p : parse_int_list(o.procs)) {
        const auto la = lost_area(prof, p);
        const auto tp = alap_bound(prof, cp.total_weight, p);
        const auto roof = rooftop_bound(cp.cp_length, cp.total_weight, p);
        const auto ms = list_schedule(g, cp, p, Policy::MaxCP).makespan;
        const auto ceil = ceil_rational(tp);
        os << p << "," << cp.cp_length << "," << cp.total_weight << "," << la << "," << format_fixed(tp, 2) << ","
           << ceil << "," << format_fixed(roof, 2) << "," << ms << "\n";
        if (!o.c.check || algo.tag != qr::TiledAlgo::Tag::GrASAP || algo.i != 1) continue;
        const std::string where = "alap(procs=" + std::to_string(p) + ")";
        if (o.p == 5 && o.q == 5)
            if (const auto* r = qr5_row(p)) chk.expect(where, r->alap, ceil);
        if (o.p == 34 && o.q == 4 && p == 10) chk.expect(where, golden::kGrasap34x4AlapBound, ceil);
    }
    return o.c.check ? chk.finish() : kOk;
}

struct Sched {
    Common c;
    std::string algo = "grasap";
    int p = 5;
    int q = 5;
    int bs = 0;
    int t = 5;
    std::string family = "tt";
    std::string sync = "none";
    std::string procs = "1..14";
    std::string policy = "max";
    std::uint64_t seed = 0;
    std::string gantt;
};

int sched(const Sched& o, std::ostream& os, std::ostream& err) {
    const auto policy = parse_policy(o.policy);
    const auto procs = parse_int_list(o.procs);
    if (!o.gantt.empty() && procs.size() != 1) throw UsageError("--gantt needs a single --procs value");
    const bool chol = o.algo == "cholesky";
    std::optional<SyncVariant> sync;
    if (o.sync == "grouped")
        sync = SyncVariant::Grouped;
    else if (o.sync == "relaxed")
        sync = SyncVariant::Relaxed;
    else if (o.sync != "none")
        throw UsageError("--sync is none, grouped or relaxed");
    if (sync && !chol) throw UsageError("--sync applies to --algo cholesky only");

    TaskGraph g;
    WeightModel w = WeightModel::cholesky();
    qr::TiledAlgo algo;
    if (chol) {
        g = sync ? sync_chol_graph(o.t, *sync) : build_from_trace(chol::gen_chol_fact(o.t));
    } else {
        algo = parse_algo(o.algo, o.bs);
        g = qr_graph(o.p, o.q, algo, parse_family(o.family));
        w = WeightModel::qr_tt();
    }
    auto cp = annotate_cp(g, w);
    Checker chk(err);
    os << "procs,policy,seed,makespan,cp,t_seq\n";
    for (int p : procs) {
        const auto s = list_schedule(g, cp, p, policy, o.seed);
        if (auto bad = validate_schedule(g, w, s); !bad.empty()) throw ContractError("invalid schedule: " + bad.front());
        os << p << "," << o.policy << "," << o.seed << "," << s.makespan << "," << cp.cp_length << ","
           << cp.total_weight << "\n";
        if (!o.gantt.empty()) {
            auto f = open_output(resolve_output(o.gantt));
            write_gantt_csv(f, g, s);
        }
        if (!o.c.check || chol || policy != Policy::MaxCP || o.family != "tt") continue;
        const std::string where = algo.name() + "(procs=" + std::to_string(p) + ")";
        if (o.p == 5 && o.q == 5)
            if (auto col = qr5_column(algo))
                if (const auto* r = qr5_row(p)) chk.expect(where, r->*col, s.makespan);
        if (o.p == 34 && o.q == 4 && p == 10 && algo.tag == qr::TiledAlgo::Tag::Fibonacci)
            chk.expect(where, golden::kFibonacci34x4Procs10, s.makespan);
    }
    return o.c.check ? chk.finish() : kOk;
}

struct Alpha {
    Common c;
    std::string t = "3..12";
};

int alpha(const Alpha& o, std::ostream& os, std::ostream& err) {
    err << "alpha: p_opt is the least p whose MaxCP schedule (right-looking, Cholesky weights) reaches 9t-10\n";
    Checker chk(err);
    os << "t,p_opt,alpha,makespan\n";
    for (int t : parse_int_list(o.t)) {
        const auto r = alpha_min(t);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", r.alpha);
        os << r.t << "," << r.p_opt << "," << buf << "," << r.makespan << "\n";
        // Only the upper limit is published: ceil((t-1)^2 / 2) processors always suffice.
        const int limit = ((t - 1) * (t - 1) + 1) / 2;
        chk.expect_at_most("p_opt(t=" + std::to_string(t) + ")", limit, r.p_opt);
    }
    return o.c.check ? chk.finish() : kOk;
}

struct StrassenCount {
    Common c;
    std::string p = "4,8,16,32,64";
    std::string r = "all";
    int nb = 200;
    std::string weights = "unit";
    std::int64_t cp_limit = 2'000'000;
};

int strassen_count(const StrassenCount& o, std::ostream& os, std::ostream& err) {
    if (o.weights != "unit" && o.weights != "flops") throw UsageError("--weights is unit or flops");
    const auto w = o.weights == "unit" ? WeightModel::unit() : strassen::flop_weights(o.nb);
    Checker chk(err);
    os << "p,r,tasks,flops,cp,temp_tiles\n";
    for (int p : parse_int_list(o.p)) {
        int levels = 0;
        while ((1 << levels) < p) ++levels;
        std::vector<int> rs;
        if (o.r == "all") {
            for (int r = 0; r <= levels; ++r) rs.push_back(r);
        } else if (o.r == "min") {
            rs.push_back(strassen::r_min(p));
        } else {
            rs = parse_int_list(o.r);
        }
        for (int r : rs) {
            const strassen::Params prm{p, r, o.nb};
            const auto c = strassen::strassen_counts(prm);
            os << p << "," << r << "," << c.tasks << "," << c.flops << ",";
            if (c.tasks <= o.cp_limit) os << cp_length(build_from_trace(strassen::gen_strassen(prm)), w);
            os << "," << c.temp_tiles << "\n";
            if (!o.c.check || o.nb != 200) continue;
            const std::string where = "(p=" + std::to_string(p) + ",r=" + std::to_string(r) + ")";
            for (const auto& ref : golden::kStrassenTasks)
                if (ref.p == p && ref.r == r) chk.expect("tasks" + where, ref.tasks, c.tasks);
            if (p == 128) {
                for (const auto& ref : golden::kStrassen128) {
                    if (ref.r != r) continue;
                    chk.expect("tasks" + where, ref.tasks, c.tasks);
                    chk.expect_rel("gflop" + where, ref.gflop, c.flops / 1e9, 0.005);
                }
            }
            for (const auto& ref : golden::kStrassenRmin) {
                if (ref.p != p) continue;
                if (r == ref.r_min) chk.expect_rel("gflop_sw" + where, ref.gflop_sw, c.flops / 1e9, 0.005);
                if (r == 0) chk.expect_rel("gflop_gemm" + where, ref.gflop_gemm, c.flops / 1e9, 0.005);
            }
        }
        if (o.c.check && o.nb == 200)
            for (const auto& ref : golden::kStrassenRmin)
                if (ref.p == p) chk.expect("r_min(p=" + std::to_string(p) + ")", ref.r_min, strassen::r_min(p));
    }
    return o.c.check ? chk.finish() : kOk;
}

struct IpOpts {
    Common c;
    int p = 2;
    int q = 2;
    std::int64_t horizon = 0;
    int procs = 0;
    std::string algo = "grasap";
    std::string policy = "max";
    std::string stem;
    std::string assignment;
    std::string dump;
};

struct Simulated {
    TaskGraph g;
    Schedule s;
};

Simulated simulate_tt(const IpOpts& o) {
    auto algo = parse_algo(o.algo, 0);
    Simulated r{qr_graph(o.p, o.q, algo, qr::Family::TT), {}};
    const int procs = o.procs > 0 ? o.procs : static_cast<int>(std::max<std::size_t>(1, r.g.size()));
    r.s = list_schedule(r.g, WeightModel::qr_tt(), procs, parse_policy(o.policy));
    return r;
}

std::int64_t default_horizon(const IpOpts& o) {
    if (o.horizon > 0) return o.horizon;
    return std::max<std::int64_t>(1, simulate_tt(o).s.makespan / 2);
}

int ip_emit(const IpOpts& o, std::ostream& os, std::ostream&) {
    const auto horizon = default_horizon(o);
    const auto m = ip::emit_ip(o.p, o.q, horizon, {o.procs});
    const std::string stem = o.stem.empty() ? "qr_" + std::to_string(o.p) + "x" + std::to_string(o.q) : o.stem;
    const auto path = resolve_output(stem + ".lp");
    auto f = open_output(path);
    ip::write_lp(f, m);
    os << "p,q,horizon,procs,variables,constraints,path\n";
    os << o.p << "," << o.q << "," << horizon << "," << o.procs << "," << m.vars.size() << "," << m.cons.size() << ","
       << path.string() << "\n";
    return kOk;
}

int ip_check(const IpOpts& o, std::ostream& os, std::ostream& err) {
    ip::Assignment a;
    std::int64_t horizon = o.horizon;
    if (!o.assignment.empty()) {
        if (horizon <= 0) throw UsageError("--horizon is required with --assignment");
        std::ifstream f(o.assignment);
        if (!f) throw ContractError("cannot read '" + o.assignment + "'");
        a = ip::parse_assignment(f);
    }
    std::optional<Simulated> sim;
    if (o.assignment.empty()) {
        sim = simulate_tt(o);
        if (horizon <= 0) horizon = std::max<std::int64_t>(1, sim->s.makespan / 2);
    }
    const auto m = ip::emit_ip(o.p, o.q, horizon, {o.procs});
    if (sim) a = ip::schedule_to_assignment(m, sim->g, sim->s);
    if (!o.dump.empty()) {
        auto f = open_output(resolve_output(o.dump));
        ip::write_assignment(f, a);
    }
    const auto v = ip::check_feasible(m, a);
    os << "constraint,group,lhs,rhs\n";
    for (const auto& x : v.violations) os << x.constraint << "," << x.group << "," << x.lhs << "," << x.rhs << "\n";
    err << (v.feasible ? "feasible" : "infeasible") << " (" << v.violations.size() << " violations)\n";
    return v.feasible ? kOk : kCheckFailed;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    auto to_int = [&](const std::string& x) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(x, &used);
            if (used == x.size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError("bad integer list '" + s + "'");
    };
    for (const auto& item : split_commas(s)) {
        if (auto dots = item.find(".."); dots != std::string::npos) {
            const int lo = to_int(item.substr(0, dots));
            const int hi = to_int(item.substr(dots + 2));
            if (lo > hi) throw UsageError("empty range '" + item + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(to_int(item));
        }
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Task graphs, critical paths and schedules of tiled dense linear algebra", "tiledag"};
    app.require_subcommand(1);

    CholCp chol_cp_o;
    auto* s_chol_cp = app.add_subcommand("chol-cp", "Critical paths of Cholesky factorization or inversion");
    add_common(s_chol_cp, chol_cp_o.c);
    s_chol_cp->add_option("--t", chol_cp_o.t, "Tiles per side (list or range)")->capture_default_str();
    s_chol_cp->add_flag("--inversion", chol_cp_o.inversion, "Full inversion, unit weights, per-step columns");
    s_chol_cp->add_flag("--out-of-place", chol_cp_o.out_of_place, "Out-of-place inversion");
    s_chol_cp->add_flag("--barriers", chol_cp_o.barriers, "Barriers between inversion steps");
    s_chol_cp->add_option("--dirs", chol_cp_o.dirs, "Loop directions of steps 1-3")->capture_default_str();
    s_chol_cp->add_option("--variant", chol_cp_o.variant, "right, left or bordered")->capture_default_str();
    s_chol_cp->add_option("--weights", chol_cp_o.weights, "cholesky or unit")->capture_default_str();

    CholBounds chol_bounds_o;
    auto* s_chol_bounds = app.add_subcommand("chol-bounds", "ALAP-derived and Rooftop bounds for Cholesky");
    add_common(s_chol_bounds, chol_bounds_o.c);
    s_chol_bounds->add_option("--t", chol_bounds_o.t, "Tiles per side")->capture_default_str();
    s_chol_bounds->add_option("--procs", chol_bounds_o.procs, "Processor counts")->capture_default_str();

    QrCoarse qr_coarse_o;
    auto* s_qr_coarse = app.add_subcommand("qr-coarse", "Coarse-grain elimination steps");
    add_common(s_qr_coarse, qr_coarse_o.c);
    s_qr_coarse->add_option("--p", qr_coarse_o.p, "Tile rows")->capture_default_str();
    s_qr_coarse->add_option("--q", qr_coarse_o.q, "Tile columns")->capture_default_str();
    s_qr_coarse->add_option("--algo", qr_coarse_o.algo, "sameh-kuck, fibonacci or greedy")->capture_default_str();
    s_qr_coarse->add_flag("--list", qr_coarse_o.list, "Print the elimination list instead of the table");

    QrTiled qr_tiled_o;
    auto* s_qr_tiled = app.add_subcommand("qr-tiled", "Zeroed-time table of a tiled QR algorithm");
    add_common(s_qr_tiled, qr_tiled_o.c);
    s_qr_tiled->add_option("--p", qr_tiled_o.p, "Tile rows")->capture_default_str();
    s_qr_tiled->add_option("--q", qr_tiled_o.q, "Tile columns")->capture_default_str();
    s_qr_tiled->add_option("--algo", qr_tiled_o.algo,
                           "flattree, fibonacci, greedy, binarytree, plasmatree, asap, grasap[:i]")
        ->capture_default_str();
    s_qr_tiled->add_option("--bs", qr_tiled_o.bs, "PlasmaTree domain size");
    s_qr_tiled->add_option("--family", qr_tiled_o.family, "tt or ts")->capture_default_str();
    s_qr_tiled->add_flag("--list", qr_tiled_o.list, "Print the elimination list instead of the table");

    QrCpTable qr_cp_o;
    auto* s_qr_cp = app.add_subcommand("qr-cp-table", "Critical paths of tiled QR algorithms over q");
    add_common(s_qr_cp, qr_cp_o.c);
    s_qr_cp->add_option("--p", qr_cp_o.p, "Tile rows")->capture_default_str();
    s_qr_cp->add_option("--q", qr_cp_o.q, "Tile columns (list or range)")->capture_default_str();
    s_qr_cp->add_option("--algos", qr_cp_o.algos, "Comma-separated algorithms")->capture_default_str();
    s_qr_cp->add_option("--bs", qr_cp_o.bs, "PlasmaTree domain size (default: best over 1..p)");
    s_qr_cp->add_option("--family", qr_cp_o.family, "tt or ts")->capture_default_str();

    QrBounds qr_bounds_o;
    auto* s_qr_bounds = app.add_subcommand("qr-bounds", "ALAP-derived and Rooftop bounds for tiled QR");
    add_common(s_qr_bounds, qr_bounds_o.c);
    s_qr_bounds->add_option("--p", qr_bounds_o.p, "Tile rows")->capture_default_str();
    s_qr_bounds->add_option("--q", qr_bounds_o.q, "Tile columns")->capture_default_str();
    s_qr_bounds->add_option("--algo", qr_bounds_o.algo, "Tiled algorithm")->capture_default_str();
    s_qr_bounds->add_option("--bs", qr_bounds_o.bs, "PlasmaTree domain size");
    s_qr_bounds->add_option("--procs", qr_bounds_o.procs, "Processor counts")->capture_default_str();

    Sched sched_o;
    auto* s_sched = app.add_subcommand("sched", "List scheduling on a bounded number of processors");
    add_common(s_sched, sched_o.c);
    s_sched->add_option("--algo", sched_o.algo, "Tiled QR algorithm, or cholesky")->capture_default_str();
    s_sched->add_option("--p", sched_o.p, "QR tile rows")->capture_default_str();
    s_sched->add_option("--q", sched_o.q, "QR tile columns")->capture_default_str();
    s_sched->add_option("--bs", sched_o.bs, "PlasmaTree domain size");
    s_sched->add_option("--family", sched_o.family, "tt or ts")->capture_default_str();
    s_sched->add_option("--t", sched_o.t, "Cholesky tiles per side")->capture_default_str();
    s_sched->add_option("--sync", sched_o.sync, "Cholesky synchronization: none, grouped or relaxed")
        ->capture_default_str();
    s_sched->add_option("--procs", sched_o.procs, "Processor counts")->capture_default_str();
    s_sched->add_option("--policy", sched_o.policy, "max, min or rand")->capture_default_str();
    s_sched->add_option("--seed", sched_o.seed, "Seed of the rand policy")->capture_default_str();
    s_sched->add_option("--gantt", sched_o.gantt, "Write the schedule as Gantt CSV to this file");

    Alpha alpha_o;
    auto* s_alpha = app.add_subcommand("alpha", "Fewest processors reaching the Cholesky critical path");
    add_common(s_alpha, alpha_o.c);
    s_alpha->add_option("--t", alpha_o.t, "Tiles per side")->capture_default_str();

    StrassenCount strassen_o;
    auto* s_strassen = app.add_subcommand("strassen-count", "Task and flop counts of tiled Strassen-Winograd");
    add_common(s_strassen, strassen_o.c);
    s_strassen->add_option("--p", strassen_o.p, "Tiles per side (powers of two)")->capture_default_str();
    s_strassen->add_option("--r", strassen_o.r, "Recursion levels: list, all, or min")->capture_default_str();
    s_strassen->add_option("--nb", strassen_o.nb, "Tile order")->capture_default_str();
    s_strassen->add_option("--weights", strassen_o.weights, "cp weights: unit or flops")->capture_default_str();
    s_strassen->add_option("--cp-limit", strassen_o.cp_limit, "Leave cp empty above this many tasks")
        ->capture_default_str();

    IpOpts emit_o;
    auto* s_emit = app.add_subcommand("ip-emit", "Write the integer program of a tiled QR instance");
    add_common(s_emit, emit_o.c);
    IpOpts check_o;
    auto* s_check = app.add_subcommand("ip-check", "Check an assignment against the integer program");
    add_common(s_check, check_o.c);
    for (auto [sub, o] : {std::pair{s_emit, &emit_o}, std::pair{s_check, &check_o}}) {
        sub->add_option("--p", o->p, "Tile rows")->capture_default_str();
        sub->add_option("--q", o->q, "Tile columns")->capture_default_str();
        sub->add_option("--horizon", o->horizon, "Horizon T in model steps (default: simulated makespan / 2)");
        sub->add_option("--procs", o->procs, "Processor limit (0: none)")->capture_default_str();
        sub->add_option("--algo", o->algo, "Algorithm of the simulated schedule")->capture_default_str();
        sub->add_option("--policy", o->policy, "Policy of the simulated schedule")->capture_default_str();
    }
    s_emit->add_option("--stem", emit_o.stem, "Model file stem (default qr_<p>x<q>)");
    s_check->add_option("--assignment", check_o.assignment, "File of 'name value' lines");
    s_check->add_option("--dump", check_o.dump, "Write the checked assignment to this file");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kUsage;
    }

    auto dispatch = [&](const Common& c, const std::function<int(std::ostream&)>& fn) {
        if (c.out.empty()) return fn(out);
        std::ostringstream buf;
        const int rc = fn(buf);
        auto f = open_output(resolve_output(c.out));
        f << buf.str();
        return rc;
    };
    try {
        if (s_chol_cp->parsed())
            return dispatch(chol_cp_o.c, [&](std::ostream& os) { return chol_cp(chol_cp_o, os, err); });
        if (s_chol_bounds->parsed())
            return dispatch(chol_bounds_o.c, [&](std::ostream& os) { return chol_bounds(chol_bounds_o, os, err); });
        if (s_qr_coarse->parsed())
            return dispatch(qr_coarse_o.c, [&](std::ostream& os) { return qr_coarse(qr_coarse_o, os, err); });
        if (s_qr_tiled->parsed())
            return dispatch(qr_tiled_o.c, [&](std::ostream& os) { return qr_tiled(qr_tiled_o, os, err); });
        if (s_qr_cp->parsed())
            return dispatch(qr_cp_o.c, [&](std::ostream& os) { return qr_cp_table(qr_cp_o, os, err); });
        if (s_qr_bounds->parsed())
            return dispatch(qr_bounds_o.c, [&](std::ostream& os) { return qr_bounds(qr_bounds_o, os, err); });
        if (s_sched->parsed()) return dispatch(sched_o.c, [&](std::ostream& os) { return sched(sched_o, os, err); });
        if (s_alpha->parsed()) return dispatch(alpha_o.c, [&](std::ostream& os) { return alpha(alpha_o, os, err); });
        if (s_strassen->parsed())
            return dispatch(strassen_o.c, [&](std::ostream& os) { return strassen_count(strassen_o, os, err); });
        if (s_emit->parsed()) return dispatch(emit_o.c, [&](std::ostream& os) { return ip_emit(emit_o, os, err); });
        if (s_check->parsed())
            return dispatch(check_o.c, [&](std::ostream& os) { return ip_check(check_o, os, err); });
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return kContractError;
    } catch (const CycleError& e) {
        err << "error: " << e.what() << "\n";
        return kContractError;
    }
    return kUsage;
}

}  // namespace tiledag::cli
