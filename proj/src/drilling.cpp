#include "moledrill/drilling.hpp"

#include "moledrill/errors.hpp"

#include <cmath>
#include <string>

namespace moledrill {

double torque_from_wob(double wob_n, const SoilSpec& soil, const BitGeometry& geom) {
    if (!(wob_n >= 0)) throw DomainError("torque_from_wob: wob must be >= 0, got " + std::to_string(wob_n));
    return soil.friction * geom.expanded_diameter_m * wob_n / 3.0;
}

double motor_rpm(double torque_nm, const MotorSpec& motor) {
    if (!(torque_nm >= 0)) throw DomainError("motor_rpm: torque must be >= 0");
    const double limit = motor.efficiency * motor.stall_torque_nm;
    if (torque_nm > limit)
        throw StallError("motor stalls: torque " + std::to_string(torque_nm) + " N*m exceeds eta*tau_s = " +
                         std::to_string(limit) + " N*m");
    return (motor.stall_torque_nm - torque_nm / motor.efficiency) * motor.no_load_rpm / motor.stall_torque_nm;
}

double rotary_speed_r(double rpm, FormationCondition condition) {
    if (rpm <= 0) return 0.0;
    const double exponent = condition == FormationCondition::Soft ? 0.428 : 0.750;
    const double coefficient = condition == FormationCondition::Soft ? 0.2 : 0.5;
    const double damp = std::exp(-100.0 / (rpm * rpm));
    return damp * std::pow(rpm, exponent) + coefficient * rpm * (1.0 - damp);
}

double normalized_wob(double wob_n, const BitGeometry& geom, const GalleConstants& galle) {
    if (!(wob_n >= 0)) throw DomainError("normalized_wob: wob must be >= 0");
    return galle.wbar_scale * wob_n / diameter_in(galle.diameter_unit, geom.expanded_diameter_m);
}

double galle_rop(double wbar, double r_value, const GalleConstants& galle) {
    if (!(wbar >= 0) || !(r_value >= 0)) throw DomainError("galle_rop: wbar and r must be >= 0");
    return galle.calibration_scale * std::pow(wbar, 0.6) * std::pow(wbar, galle.weight_exponent) * r_value /
           std::pow(galle.dullness, galle.dullness_exponent);
}

double specific_energy(double wob_n, double rpm, double torque_nm, double rop_m_hr, const BitGeometry& geom) {
    if (!(rop_m_hr > 0)) throw InfeasibleRateError("specific energy undefined at zero penetration rate");
    const double area = contact_area(geom);
    const double rev_per_s = rpm / 60.0;
    const double rop_m_s = rop_m_hr / 3600.0;
    return wob_n / area + 2.0 * kPi * rev_per_s * torque_nm / (area * rop_m_s);
}

double stall_wob(const SoilSpec& soil, const MotorSpec& motor, const BitGeometry& geom) {
    return 3.0 * motor.efficiency * motor.stall_torque_nm / (soil.friction * geom.expanded_diameter_m);
}

OperatingPoint solve_operating_point(double wob_n, const SoilSpec& soil, const MotorSpec& motor,
                                     const BitGeometry& geom, const GalleConstants& galle) {
    OperatingPoint p;
    p.wob_n = wob_n;
    p.torque_nm = torque_from_wob(wob_n, soil, geom);
    p.rpm = motor_rpm(p.torque_nm, motor);
    p.r_value = rotary_speed_r(p.rpm, soil.condition);
    p.wbar = normalized_wob(wob_n, geom, galle);
    p.rop_m_hr = galle_rop(p.wbar, p.r_value, galle);
    p.specific_energy_pa = specific_energy(wob_n, p.rpm, p.torque_nm, p.rop_m_hr, geom);
    return p;
}

}  // namespace moledrill
