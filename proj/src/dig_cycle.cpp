#include "moledrill/dig_cycle.hpp"

#include "moledrill/errors.hpp"
#include "moledrill/forelimb.hpp"

#include <cmath>
#include <string>

namespace moledrill {

std::string_view to_string(DigPhase phase) {
    switch (phase) {
        case DigPhase::ForelimbsRearBitAdvance: return "forelimbs_rear_bit_advance";
        case DigPhase::ExpandBlades: return "expand_blades";
        case DigPhase::Drill: return "drill";
        case DigPhase::FoldBladesRetract: return "fold_blades_retract";
        case DigPhase::ForelimbsForwardGathered: return "forelimbs_forward_gathered";
        case DigPhase::SpreadAndSweepBack: return "spread_and_sweep_back";
    }
    return "?";
}

DigPhase successor(DigPhase phase) {
    return static_cast<DigPhase>(phase_number(phase) % 6 + 1);
}

DigPhase step(DigPhase current, const BitState& bit) {
    const DigPhase next = successor(current);
    if ((next == DigPhase::ForelimbsForwardGathered || next == DigPhase::SpreadAndSweepBack) &&
        bit.mode != BitMode::Folded)
        throw SequenceError("forelimbs_require_folded_bit",
                            "cannot enter " + std::string(to_string(next)) + " with bit " + to_string(bit.mode));
    if (next == DigPhase::Drill && bit.mode != BitMode::Expanded)
        throw SequenceError("drill_requires_expanded_bit",
                            "cannot enter drill with bit " + std::string(to_string(bit.mode)));
    return next;
}

void validate(const CyclePlan& p) {
    if (!(std::isfinite(p.depth_per_cycle_m) && p.depth_per_cycle_m > 0))
        throw ValidationError("depth_per_cycle", "must be > 0");
    if (!(std::isfinite(p.target_depth_m) && p.target_depth_m >= 0))
        throw ValidationError("target_depth", "must be >= 0");
    if (!(std::isfinite(p.forelimb_sweep_time_s) && p.forelimb_sweep_time_s >= 0))
        throw ValidationError("forelimb_sweep_time", "must be >= 0");
    if (!(std::isfinite(p.bit_advance_time_s) && p.bit_advance_time_s >= 0))
        throw ValidationError("bit_advance_time", "must be >= 0");
}

double drill_phase_duration(double depth_m, double rop_m_hr) {
    if (!(rop_m_hr > 0)) throw InfeasibleRateError("drill_phase_duration: rop must be > 0");
    if (!(depth_m >= 0)) throw DomainError("drill_phase_duration: depth must be >= 0");
    return depth_m / rop_m_hr * 3600.0;
}

DigTimeline simulate(const CyclePlan& plan, const OperatingPoint& op, const BitGeometry& geom, const SoilSpec& soil,
                     double transition_rpm) {
    validate(plan);
    if (!(op.rop_m_hr > 0)) throw InfeasibleRateError("simulate: operating point has zero penetration rate");

    const double transition_s = transition_duration(geom, transition_rpm);
    const double stroke_turns = geom.max_travel_m / geom.screw_pitch_m;

    // Absorbs the rounding in target/depth_per_cycle so 0.3 / 0.03 is ten cycles, not eleven.
    const double exact_cycles = plan.target_depth_m / plan.depth_per_cycle_m;
    const int cycles = plan.target_depth_m > 0 ? static_cast<int>(std::ceil(exact_cycles * (1.0 - 1e-12))) : 0;

    DigTimeline timeline;
    timeline.entries.reserve(static_cast<std::size_t>(cycles) * 6);

    double clock = 0.0;
    double depth = 0.0;
    BitState bit = folded_state(geom);
    DigPhase phase = DigPhase::SpreadAndSweepBack;  // the cycle starts from the end of a previous sweep

    for (int c = 0; c < cycles; ++c) {
        const bool last = c + 1 == cycles;
        const double increment =
            last ? plan.target_depth_m - static_cast<double>(cycles - 1) * plan.depth_per_cycle_m : plan.depth_per_cycle_m;

        for (int k = 0; k < 6; ++k) {
            phase = step(phase, bit);
            const BitMode mode_start = bit.mode;
            double duration = 0.0;
            double debris = 0.0;
            switch (phase) {
                case DigPhase::ForelimbsRearBitAdvance:
                    duration = plan.bit_advance_time_s;
                    break;
                case DigPhase::ExpandBlades:
                    bit = travel_from_rotation(stroke_turns, Rotation::CounterClockwise, geom, bit);
                    duration = transition_s;
                    break;
                case DigPhase::Drill:
                    duration = drill_phase_duration(increment, op.rop_m_hr);
                    depth = last ? plan.target_depth_m : depth + increment;
                    break;
                case DigPhase::FoldBladesRetract:
                    bit = travel_from_rotation(stroke_turns, Rotation::Clockwise, geom, bit);
                    duration = transition_s;
                    break;
                case DigPhase::ForelimbsForwardGathered:
                    // Gathered advance and spread-sweep are timed as one forelimb block.
                    duration = 0.0;
                    break;
                case DigPhase::SpreadAndSweepBack:
                    duration = plan.forelimb_sweep_time_s;
                    debris = debris_weight(increment, geom, soil);
                    break;
            }
            timeline.entries.push_back({phase, clock, duration, depth, debris, mode_start, bit.mode});
            clock += duration;
            timeline.totals.debris_removed_n += debris;
        }
    }

    timeline.totals.cycles = cycles;
    timeline.totals.elapsed_s = clock;
    timeline.totals.net_advance_rate_m_hr = clock > 0 ? plan.target_depth_m / clock * 3600.0 : 0.0;
    return timeline;
}

}  // namespace moledrill
