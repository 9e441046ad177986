#include "moledrill/bit_kinematics.hpp"

#include "moledrill/errors.hpp"

#include <algorithm>
#include <cmath>

namespace moledrill {

BitState bit_state_at(double travel_m, const BitGeometry& geom) {
    BitState s;
    s.travel_m = std::clamp(travel_m, 0.0, geom.max_travel_m);
    double angle = std::clamp(s.travel_m / geom.pinion_radius_m, 0.0, kPi / 2.0);
    // A stroke sized for exactly a quarter turn can land an ulp short of it.
    if (kPi / 2.0 - angle <= 1e-12) angle = kPi / 2.0;
    s.blade_angle_rad = angle;
    s.diameter_m = s.blade_angle_rad == kPi / 2.0
                       ? geom.expanded_diameter_m
                       : geom.folded_diameter_m +
                             (geom.expanded_diameter_m - geom.folded_diameter_m) * std::sin(s.blade_angle_rad);
    if (s.blade_angle_rad == 0.0)
        s.mode = BitMode::Folded;
    else if (s.blade_angle_rad == kPi / 2.0)
        s.mode = BitMode::Expanded;
    else
        s.mode = BitMode::Transitioning;
    return s;
}

BitState travel_from_rotation(double turns, Rotation direction, const BitGeometry& geom, const BitState& state) {
    if (!(turns >= 0)) throw DomainError("travel_from_rotation: turns must be >= 0");
    const double delta = geom.screw_pitch_m * turns;
    const double target = direction == Rotation::CounterClockwise ? state.travel_m + delta : state.travel_m - delta;
    BitState next = bit_state_at(target, geom);
    next.saturated = target < 0.0 || target > geom.max_travel_m;
    return next;
}

double expansion_ratio(const BitGeometry& geom) {
    return geom.expanded_diameter_m / geom.folded_diameter_m;
}

double transition_duration(const BitGeometry& geom, double rpm) {
    if (!(rpm > 0)) throw DomainError("transition_duration: rpm must be > 0");
    const double turns = geom.max_travel_m / geom.screw_pitch_m;
    return turns / rpm * 60.0;
}

const char* to_string(BitMode mode) {
    switch (mode) {
        case BitMode::Folded: return "folded";
        case BitMode::Transitioning: return "transitioning";
        case BitMode::Expanded: return "expanded";
    }
    return "?";
}

}  // namespace moledrill
