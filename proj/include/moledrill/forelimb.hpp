#pragma once

// Quasi-static model of the debris-removal forelimbs.

#include "moledrill/quantities.hpp"

#include <utility>
#include <vector>

namespace moledrill {

/// Measured push capacity at one testbed width.
struct PushSample {
    double width_mm;
    double opening_deg;
    double max_force_n;

    friend bool operator==(const PushSample&, const PushSample&) = default;
};

/// Published push-test table: widths 40..200 mm.
std::vector<PushSample> default_push_table();

struct ForelimbSpec {
    double actuator_force_n = 80.0;   // per linear actuator
    double servo_torque_nm = 2.5;
    double pinion_radius_m = 0.010;
    double transmission = 0.0;        // sine-model coefficient, see fit_k_trans
    std::vector<PushSample> push_table = default_push_table();

    friend bool operator==(const ForelimbSpec&, const ForelimbSpec&) = default;
};

void validate(const ForelimbSpec& spec);

/// Forefoot opening angle for a borehole width, interpolated linearly in the table.
/// Throws DomainError outside the tabulated widths.
double alpha_for_width(double width_mm, const ForelimbSpec& spec);

/// Least-squares coefficient k of F(alpha) = 2 * F_m * k * sin(alpha) against the table.
double fit_k_trans(const ForelimbSpec& spec);

double max_push_force(double opening_deg, const ForelimbSpec& spec);

struct PullForces {
    double servo_n;
    double linear_n;
};

/// Steady pull capacity of each drive taken alone.
PullForces pull_forces(const ForelimbSpec& spec);

/// Weight of loosened debris cut by one drilling pass of the expanded bit.
double debris_weight(double depth_m, const BitGeometry& geom, const SoilSpec& soil);

struct PushResidual {
    PushSample sample;
    double model_force_n;
    double relative_error;
};

std::vector<PushResidual> push_residuals(const ForelimbSpec& spec);

}  // namespace moledrill
