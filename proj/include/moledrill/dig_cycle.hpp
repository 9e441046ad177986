#pragma once

// Six-phase digging sequence and the multi-cycle timeline built from it.
//
//   1 forelimbs rear, folded bit advances    4 bit spins CW, blades fold, bit retracts
//   2 bit spins CCW, blades open             5 forelimbs come forward, feet gathered
//   3 expanded bit drills                    6 feet spread and sweep debris back
//
// The drill and the forelimbs share the bore, so the forelimbs may only move forward
// while the bit is folded, and the bit may only drill once fully open.

#include "moledrill/bit_kinematics.hpp"
#include "moledrill/drilling.hpp"
#include "moledrill/quantities.hpp"

#include <string_view>
#include <vector>

namespace moledrill {

enum class DigPhase {
    ForelimbsRearBitAdvance = 1,
    ExpandBlades = 2,
    Drill = 3,
    FoldBladesRetract = 4,
    ForelimbsForwardGathered = 5,
    SpreadAndSweepBack = 6,
};

std::string_view to_string(DigPhase phase);

inline int phase_number(DigPhase phase) { return static_cast<int>(phase); }

/// Cyclic successor without any guard.
DigPhase successor(DigPhase phase);

/// Successor of `current`, checked against the interlocks using the bit state at the
/// end of `current`. Throws SequenceError naming the guard.
DigPhase step(DigPhase current, const BitState& bit);

struct CyclePlan {
    double depth_per_cycle_m = 0.030;
    double target_depth_m = 0.300;
    double forelimb_sweep_time_s = 10.0;  // phases 5 and 6 together; artifact default
    double bit_advance_time_s = 10.0;     // artifact default

    friend bool operator==(const CyclePlan&, const CyclePlan&) = default;
};

void validate(const CyclePlan& plan);

/// Seconds to drill `depth_m` at `rop_m_hr`.
double drill_phase_duration(double depth_m, double rop_m_hr);

struct TimelineEntry {
    DigPhase phase;
    double start_s;
    double duration_s;
    double depth_after_m;
    double debris_removed_n;
    BitMode bit_mode_start;
    BitMode bit_mode_end;

    friend bool operator==(const TimelineEntry&, const TimelineEntry&) = default;
};

struct TimelineTotals {
    double elapsed_s = 0.0;
    int cycles = 0;
    double net_advance_rate_m_hr = 0.0;
    double debris_removed_n = 0.0;

    friend bool operator==(const TimelineTotals&, const TimelineTotals&) = default;
};

struct DigTimeline {
    std::vector<TimelineEntry> entries;
    TimelineTotals totals;

    friend bool operator==(const DigTimeline&, const DigTimeline&) = default;
};

/// Repeats the sequence until the target depth is reached. The last cycle drills only
/// the remaining depth and clears proportionally less debris.
DigTimeline simulate(const CyclePlan& plan, const OperatingPoint& op, const BitGeometry& geom, const SoilSpec& soil,
                     double transition_rpm);

}  // namespace moledrill
