#pragma once

// Drilling chain: weight on bit -> torque -> motor speed -> rotary-speed function ->
// normalized weight -> penetration rate -> specific energy.

#include "moledrill/quantities.hpp"

namespace moledrill {

struct OperatingPoint {
    double wob_n = 0.0;
    double torque_nm = 0.0;
    double rpm = 0.0;
    double r_value = 0.0;
    double wbar = 0.0;
    double rop_m_hr = 0.0;
    double specific_energy_pa = 0.0;

    friend bool operator==(const OperatingPoint&, const OperatingPoint&) = default;
};

/// Friction torque of a flat bit: mu * D * WOB / 3.
double torque_from_wob(double wob_n, const SoilSpec& soil, const BitGeometry& geom);

/// Linear DC-motor curve seen through the transmission. Throws StallError above eta * tau_s.
double motor_rpm(double torque_nm, const MotorSpec& motor);

/// Galle-Woods rotary-speed function. Continuous at rest: r(0) = 0.
double rotary_speed_r(double rpm, FormationCondition condition);

double normalized_wob(double wob_n, const BitGeometry& geom, const GalleConstants& galle);

/// ROP in m/hr. The formation-drillability factor is taken as wbar^0.6.
double galle_rop(double wbar, double r_value, const GalleConstants& galle);

/// Teale specific energy in Pa. rop in m/hr; throws InfeasibleRateError when rop <= 0.
double specific_energy(double wob_n, double rpm, double torque_nm, double rop_m_hr, const BitGeometry& geom);

/// WOB at which torque reaches the stall limit eta * tau_s.
double stall_wob(const SoilSpec& soil, const MotorSpec& motor, const BitGeometry& geom);

/// Evaluates the full chain in order. Throws StallError or InfeasibleRateError.
OperatingPoint solve_operating_point(double wob_n, const SoilSpec& soil, const MotorSpec& motor,
                                     const BitGeometry& geom, const GalleConstants& galle);

}  // namespace moledrill
