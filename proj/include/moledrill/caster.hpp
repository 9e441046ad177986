#pragma once

// Static torque balance of the spring-loaded caster wheels that let the bit keep
// spinning once the expansion screw bottoms out.

#include <vector>

namespace moledrill {

/// Lengths in mm and forces in N, matching how the wheel set is specified.
struct CasterSpec {
    double spring_rate_n_per_mm = 0.077;
    double spring_compression_mm = 5.0;  // travel from 30 deg to 0 deg
    double inclination_deg = 30.0;
    double contact_patch_mm = 7.0;
    double spring_arm_mm = 10.0;
    double cornering_force_n = 2.4;
    double static_friction = 0.9;
    double kinetic_friction = 0.75;
    double rise_time_constant_s = 0.05;  // illustrative rise curve only

    friend bool operator==(const CasterSpec&, const CasterSpec&) = default;
};

struct CasterBalance {
    double spring_force_n = 0.0;
    double pneumatic_trail_mm = 0.0;
    double self_aligning_torque_nm = 0.0;
    double slip_steer_torque_nm = 0.0;
    double net_torque_nm = 0.0;  // slip-steer minus self-aligning
    bool aligns = false;         // net torque strictly negative
    bool on_boundary = false;    // net torque exactly zero
};

void validate(const CasterSpec& spec);

/// Hooke's law retaining force.
double spring_force(const CasterSpec& spec);

CasterBalance balance(const CasterSpec& spec);

/// Cornering force at which the two torques cancel.
double threshold_cornering_force(const CasterSpec& spec);

struct RiseSample {
    double time_s;
    double cornering_force_n;
};

/// First-order saturating build-up of cornering force after wall contact. Not a
/// validated dynamic model; emitted for plotting only.
std::vector<RiseSample> cornering_rise_curve(const CasterSpec& spec, double duration_s, double step_s);

}  // namespace moledrill
