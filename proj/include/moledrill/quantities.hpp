#pragma once

// Value records shared by every model. Units are SI throughout (N, m, s, Pa, kg);
// rotational speed is the one exception and is carried in rev/min.

#include <string>
#include <string_view>

namespace moledrill {

inline constexpr double kGravity = 9.81;  // m/s^2
inline constexpr double kPi = 3.14159265358979323846;

/// Branch of the rotary-speed function: soft or hard formation.
enum class FormationCondition { Soft, Hard };

struct SoilSpec {
    double compressive_strength_pa = 4.0e6;
    double density_kg_m3 = 650.0;
    double friction = 0.45;  // bit-soil kinetic friction
    FormationCondition condition = FormationCondition::Soft;
    // Loosened-to-in-place weight ratio of excavated debris. 1.232 reproduces a 7.55 N
    // debris load per 30 mm cycle at 650 kg/m^3.
    double bulking = 1.232;

    friend bool operator==(const SoilSpec&, const SoilSpec&) = default;
};

struct MotorSpec {
    double stall_torque_nm = 8.83;
    double no_load_rpm = 200.0;
    double efficiency = 0.84;  // motor-to-bit transfer efficiency

    friend bool operator==(const MotorSpec&, const MotorSpec&) = default;
};

/// How the bit-soil contact area entering the specific-energy balance is computed.
enum class AreaConvention { FullCircle, Annulus, Effective };

struct BitGeometry {
    double folded_diameter_m = 0.0934;
    double expanded_diameter_m = 0.202;
    int inner_blades = 3;
    int expandable_blades = 3;
    AreaConvention area_convention = AreaConvention::FullCircle;
    double effective_area_m2 = 0.0;  // read only for AreaConvention::Effective

    // Expansion drive. Not published values: a 2 mm/rev screw, a 10 mm stroke, and a
    // pinion sized so the full stroke sweeps the blades through a quarter turn.
    double screw_pitch_m = 0.002;
    double pinion_radius_m = 0.010 / (kPi / 2.0);
    double max_travel_m = 0.010;

    friend bool operator==(const BitGeometry&, const BitGeometry&) = default;
};

/// Unit in which the bit diameter enters the normalized-weight formula.
enum class LengthUnit { Millimeters, Inches, Meters };

/// Constants of the Galle-Woods penetration-rate correlation.
struct GalleConstants {
    double dullness = 565.6;
    double weight_exponent = 1.0;
    double dullness_exponent = 0.5;
    double wbar_scale = 7.88;
    LengthUnit diameter_unit = LengthUnit::Millimeters;
    double calibration_scale = 1.0;

    friend bool operator==(const GalleConstants&, const GalleConstants&) = default;
};

/// One row of a constant-load drilling session.
struct ExperimentRecord {
    std::string label;
    double wob_n = 0.0;
    double drilled_depth_m = 0.0;
    double duration_s = 600.0;
    double rpm = 0.0;
    double reported_specific_energy_pa = 0.0;
    bool outlier = false;

    double measured_rop_m_hr() const { return drilled_depth_m / duration_s * 3600.0; }
};

// Throw ValidationError naming the first field that breaks its bound.
void validate(const SoilSpec& soil);
void validate(const MotorSpec& motor);
void validate(const BitGeometry& geom);
void validate(const GalleConstants& galle);
void validate(const ExperimentRecord& record);

double contact_area(const BitGeometry& geom);

double diameter_in(LengthUnit unit, double meters);

std::string_view to_string(FormationCondition c);
std::string_view to_string(AreaConvention c);
std::string_view to_string(LengthUnit u);
FormationCondition parse_formation_condition(std::string_view text);
AreaConvention parse_area_convention(std::string_view text);
LengthUnit parse_length_unit(std::string_view text);

}  // namespace moledrill
