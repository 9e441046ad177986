#pragma once

#include "moledrill/quantities.hpp"

namespace moledrill {

enum class BitMode { Folded, Transitioning, Expanded };

/// Spin direction seen from behind the bit. CCW drives the middle part forward and opens the blades.
enum class Rotation { Clockwise, CounterClockwise };

/// Position of the screw-driven middle part and the blade pose it implies.
struct BitState {
    double travel_m = 0.0;
    double blade_angle_rad = 0.0;  // 0 folded, pi/2 fully open
    double diameter_m = 0.0;
    BitMode mode = BitMode::Folded;
    bool saturated = false;  // last move hit an end of the stroke

    friend bool operator==(const BitState&, const BitState&) = default;
};

/// State at a given travel; travel is clamped into [0, max_travel].
BitState bit_state_at(double travel_m, const BitGeometry& geom);

inline BitState folded_state(const BitGeometry& geom) { return bit_state_at(0.0, geom); }

/// Advances the screw by `turns` revolutions. Hitting either end of the stroke sets
/// `saturated`; beyond that point the wheels take over and the bit spins freely.
BitState travel_from_rotation(double turns, Rotation direction, const BitGeometry& geom, const BitState& state);

double expansion_ratio(const BitGeometry& geom);

/// Seconds for a full-stroke expansion (or fold) at constant speed.
double transition_duration(const BitGeometry& geom, double rpm);

const char* to_string(BitMode mode);

}  // namespace moledrill
