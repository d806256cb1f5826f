#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tiledag/graph.hpp"
#include "tiledag/sched.hpp"

// Integer program for the TT tiled QR of a p x q tile matrix. One model time
// step is two weight units, so GEQRT, TTQRT, UNMQR and TTMQR last 2, 1, 3
// and 3 steps. Variables hold completion steps, 0 meaning "never done":
//   x_i_k      GEQRT of tile (i,k)
//   w_i_k_l    UNMQR of tile (i,k) with the reflectors of x_i_l, l < k
//   z_i_j_k    TTQRT zeroing tile (i,k) with tile (j,k)
//   y_i_j_k_l  TTMQR of tiles (i,k),(j,k) following z_i_j_l, l < k
// with indicators zh/yh, disjunction binaries dl1..dl6, precedence
// auxiliaries a1, a2, b, c1, c, d, e, f, and total_time.
namespace tiledag::ip {

enum class VarType { Integer, Binary };
enum class Sense { LE, GE, EQ };

struct Variable {
    std::string name;
    VarType type = VarType::Integer;
    std::int64_t lb = 0;
    std::int64_t ub = 0;
};

struct Term {
    int var = 0;
    std::int64_t coef = 0;
};

struct Constraint {
    std::string group;  // "1a1" ... "11", "prec-*", "objective", "capacity"
    std::vector<Term> terms;
    Sense sense = Sense::LE;
    std::int64_t rhs = 0;
};

struct Options {
    // Processor limit per time step; 0 leaves the model without one.
    int procs = 0;
};

struct Model {
    int p = 0;
    int q = 0;
    std::int64_t horizon = 0;  // T, in model steps
    int procs = 0;
    std::vector<Variable> vars;
    std::vector<Constraint> cons;
    std::map<std::string, int> index;

    int find(const std::string& name) const;  // -1 if absent
    std::string constraint_name(std::size_t c) const;
    // Number of variables whose name starts with prefix + "_".
    std::size_t family_size(const std::string& prefix) const;
    std::size_t group_size(const std::string& group) const;
};

// Requires p >= q >= 1 and T >= 1; a horizon from any schedule of the
// instance (its makespan / 2) keeps the model feasible.
Model emit_ip(int p, int q, std::int64_t horizon, const Options& opts = {});

// CPLEX LP text with Minimize / Subject To / Bounds / General / Binary
// sections. Constraint names are "g<group>_<n>". Deterministic.
void write_lp(std::ostream& os, const Model& m);

using Assignment = std::map<std::string, std::int64_t>;

// Completion steps from a schedule of a graph made of TT kernels only
// (GEQRT, UNMQR, TTQRT, TTMQR). Indicators and auxiliaries follow their
// definitions; capacity variables are filled when the model has them.
// Throws ContractError for other kernels or odd start times.
Assignment schedule_to_assignment(const Model& m, const TaskGraph& g, const Schedule& s);

struct Violation {
    std::string constraint;  // "g3_17", or the variable name for bounds
    std::string group;       // constraint group, or "bounds"
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

struct Verdict {
    bool feasible = true;
    std::vector<Violation> violations;
};

// Missing variables read as 0; unknown names are reported as "bounds".
Verdict check_feasible(const Model& m, const Assignment& a);

// "name value" lines; blank lines and lines starting with '#' or '\' are
// skipped. Throws ContractError on malformed lines.
Assignment parse_assignment(std::istream& is);
void write_assignment(std::ostream& os, const Assignment& a);

}  // namespace tiledag::ip
