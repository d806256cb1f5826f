#pragma once

#include <array>
#include <cstdint>

#include "tiledag/graph.hpp"

namespace tiledag::chol {

// Matrix ids used by the generators.
inline constexpr std::uint32_t kA = 0;
inline constexpr std::uint32_t kB = 1;  // out-of-place copy read by Step 2
inline constexpr std::uint32_t kC = 2;  // out-of-place copy read by Step 3

enum class FactVariant { Bordered, LeftLooking, RightLooking };
enum class Placement { InPlace, OutOfPlace };
enum class LoopDir { U, D };  // ascending / descending index

struct InvConfig {
    int t = 1;
    Placement placement = Placement::InPlace;
    std::array<LoopDir, 3> loop_dirs{LoopDir::U, LoopDir::D, LoopDir::U};
    bool pipelined = true;
};

// Task::phase carries the step number (1, 2, 3); COPY and BARRIER tasks
// carry the step they precede.
Trace gen_chol_fact(int t, FactVariant variant = FactVariant::RightLooking);
Trace gen_chol_inversion(const InvConfig& cfg);

enum class CpFormula {
    Fact9tMinus10,
    Step1,
    Step2In,
    Step2Out,
    Step3In,
    Step3Out,
    PipeIn,
    PipeOut,
    NoPipeIn,
    NoPipeOut,
    TrtriUUUIn,
    TrtriUUUOut,
};

// Closed-form critical path lengths; t >= 2.
std::int64_t chol_cp_oracle(int t, CpFormula which);

// Unit-weight critical path of the tasks of one inversion step.
std::int64_t step_cp(const TaskGraph& g, int step, const WeightModel& w);

}  // namespace tiledag::chol
