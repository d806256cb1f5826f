#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tiledag/critical_path.hpp"
#include "tiledag/graph.hpp"

namespace tiledag {

using Rational = boost::rational<std::int64_t>;

struct Slot {
    int proc = 0;
    std::int64_t start = 0;
    std::int64_t finish = 0;
};

struct Schedule {
    int procs = 0;
    std::vector<Slot> slots;  // indexed by task id
    std::int64_t makespan = 0;
};

enum class Policy { MaxCP, MinCP, RandomCP };

// Event-driven list scheduling. At every decision instant the ready tasks
// are handed to idle processors (lowest index first) in policy order; ties
// on priority go to the lowest task id. RandomCP draws uniformly among the
// ready tasks from a mt19937_64 seeded with `seed`. Zero-weight tasks run
// instantly and do not hold a processor.
Schedule list_schedule(const TaskGraph& g, const WeightModel& w, int procs, Policy policy,
                       std::uint64_t seed = 0);
Schedule list_schedule(const TaskGraph& g, const CpAnnotation& cp, int procs, Policy policy,
                       std::uint64_t seed = 0);

// Empty when the schedule is valid; otherwise one message per violation
// (overlap on a processor, broken precedence, wrong duration, bad makespan).
std::vector<std::string> validate_schedule(const TaskGraph& g, const WeightModel& w, const Schedule& s);

// Minimum makespan over every schedule, by enumerating all topological
// orders through the serial schedule-generation scheme (which reaches every
// active schedule). Exponential; refuses graphs with more than 10 tasks.
std::int64_t exhaustive_min_makespan(const TaskGraph& g, const WeightModel& w, int procs);

Policy parse_policy(const std::string& s);

// ---- Synchronized Cholesky schedules -----------------------------------

enum class SyncVariant { Grouped, Relaxed };

// Right-looking factorization split into kernel groups per column. Each
// synchronization joins every task of the group before it to every task of
// the group after it (EXPLICIT edges). Grouped synchronizes after POTRF,
// TRSM, GEMM and SYRK; Relaxed only after POTRF and TRSM, with GEMM and SYRK
// in one group that may overlap the next column. Scheduled MaxCP.
TaskGraph sync_chol_graph(int t, SyncVariant variant);
Schedule sync_chol_schedule(int t, int procs, SyncVariant variant);

// ---- Bounds --------------------------------------------------------------

// tau_p is the end of the last stretch where the ALAP profile needs more
// than p processors (0 if it never does); LA_p is the idle area of p
// processors after tau_p.
std::int64_t lost_area(const AlapProfile& profile, int procs);
// max(cp, (T_seq + LA_p) / p)
Rational alap_bound(const AlapProfile& profile, std::int64_t t_seq, int procs);
Rational alap_bound(const TaskGraph& g, const WeightModel& w, int procs);
// max(cp, T_seq / p)
Rational rooftop_bound(std::int64_t cp, std::int64_t t_seq, int procs);
Rational rooftop_bound(const TaskGraph& g, const WeightModel& w, int procs);
// Any list schedule is within (2 - 1/p) of optimal, so makespan / (2 - 1/p)
// bounds the optimum from below.
Rational lower_bound_factor(std::int64_t makespan, int procs);
// gamma_seq * T / max(T / P, cp)
double gamma_ub(double gamma_seq, std::int64_t t_seq, std::int64_t cp, int procs);

struct BoundsRow {
    int p = 0;
    std::int64_t lost_area = 0;
    Rational t_alap;
    Rational t_roof;
    Rational speedup;     // T_seq / T_alap
    Rational efficiency;  // speedup / p
};

std::vector<BoundsRow> bounds_table(const TaskGraph& g, const WeightModel& w, const std::vector<int>& procs);

struct AlphaResult {
    int t = 0;
    int p_opt = 0;
    double alpha = 0;  // p_opt / t^2
    std::int64_t makespan = 0;
};

// Smallest p for which MaxCP list scheduling of the right-looking Cholesky
// factorization (Cholesky weights) reaches 9t-10, searched upward from 1.
AlphaResult alpha_min(int t);

// ---- Output ----------------------------------------------------------------

std::string format_fixed(const Rational& r, int decimals);
// "proc,start,end,kind,i,j,k,l" rows, ordered by start then processor.
void write_gantt_csv(std::ostream& os, const TaskGraph& g, const Schedule& s);

}  // namespace tiledag
