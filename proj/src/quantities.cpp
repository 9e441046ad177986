#include "moledrill/quantities.hpp"

#include "moledrill/errors.hpp"

#include <cmath>
#include <string>

namespace moledrill {

namespace {

void require(bool ok, const char* field, const char* bound) {
    if (!ok) throw ValidationError(field, bound);
}

bool finite_all(std::initializer_list<double> values) {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

void validate(const SoilSpec& s) {
    require(std::isfinite(s.compressive_strength_pa) && s.compressive_strength_pa > 0, "sigma_c", "must be > 0");
    require(std::isfinite(s.density_kg_m3) && s.density_kg_m3 > 0, "gamma_c", "must be > 0");
    require(std::isfinite(s.friction) && s.friction > 0 && s.friction < 2, "mu", "must lie in (0, 2)");
    require(std::isfinite(s.bulking) && s.bulking >= 1, "bulking", "must be >= 1");
}

void validate(const MotorSpec& m) {
    require(std::isfinite(m.stall_torque_nm) && m.stall_torque_nm > 0, "tau_s", "must be > 0");
    require(std::isfinite(m.no_load_rpm) && m.no_load_rpm > 0, "omega_n", "must be > 0");
    require(std::isfinite(m.efficiency) && m.efficiency > 0 && m.efficiency <= 1, "eta", "must lie in (0, 1]");
}

void validate(const BitGeometry& g) {
    require(finite_all({g.folded_diameter_m, g.expanded_diameter_m}), "d_folded", "must be finite");
    require(g.folded_diameter_m > 0, "d_folded", "must be > 0");
    require(g.expanded_diameter_m > g.folded_diameter_m, "d_expanded", "must exceed d_folded");
    require(g.inner_blades >= 1, "blade_count_inner", "must be >= 1");
    require(g.expandable_blades >= 1, "blade_count_expandable", "must be >= 1");
    require(std::isfinite(g.screw_pitch_m) && g.screw_pitch_m > 0, "screw_pitch", "must be > 0");
    require(std::isfinite(g.pinion_radius_m) && g.pinion_radius_m > 0, "pinion_radius", "must be > 0");
    require(std::isfinite(g.max_travel_m) && g.max_travel_m > 0, "max_travel", "must be > 0");
    if (g.area_convention == AreaConvention::Effective)
        require(std::isfinite(g.effective_area_m2) && g.effective_area_m2 > 0, "effective_area",
                "must be > 0 when area_convention = effective");
}

void validate(const GalleConstants& c) {
    require(std::isfinite(c.dullness) && c.dullness > 0, "a", "must be > 0");
    require(std::isfinite(c.weight_exponent), "k_exp", "must be finite");
    require(std::isfinite(c.dullness_exponent) && c.dullness_exponent > 0, "p_exp", "must be > 0");
    require(std::isfinite(c.wbar_scale) && c.wbar_scale > 0, "wbar_scale", "must be > 0");
    require(std::isfinite(c.calibration_scale) && c.calibration_scale > 0, "s_cal", "must be > 0");
}

void validate(const ExperimentRecord& r) {
    require(std::isfinite(r.duration_s) && r.duration_s > 0, "duration", "must be > 0");
    require(std::isfinite(r.drilled_depth_m) && r.drilled_depth_m >= 0, "drilled_depth", "must be >= 0");
    require(std::isfinite(r.rpm) && r.rpm >= 0, "rpm", "must be >= 0");
    require(std::isfinite(r.wob_n) && r.wob_n >= 0, "wob", "must be >= 0");
}

double contact_area(const BitGeometry& geom) {
    const double outer = geom.expanded_diameter_m / 2.0;
    const double inner = geom.folded_diameter_m / 2.0;
    switch (geom.area_convention) {
        case AreaConvention::FullCircle: return kPi * outer * outer;
        case AreaConvention::Annulus: return kPi * (outer * outer - inner * inner);
        case AreaConvention::Effective: return geom.effective_area_m2;
    }
    return 0.0;
}

double diameter_in(LengthUnit unit, double meters) {
    switch (unit) {
        case LengthUnit::Millimeters: return meters * 1000.0;
        case LengthUnit::Inches: return meters / 0.0254;
        case LengthUnit::Meters: return meters;
    }
    return meters;
}

std::string_view to_string(FormationCondition c) {
    return c == FormationCondition::Soft ? "soft" : "hard";
}

std::string_view to_string(AreaConvention c) {
    switch (c) {
        case AreaConvention::FullCircle: return "full_circle";
        case AreaConvention::Annulus: return "annulus";
        case AreaConvention::Effective: return "effective";
    }
    return "?";
}

std::string_view to_string(LengthUnit u) {
    switch (u) {
        case LengthUnit::Millimeters: return "mm";
        case LengthUnit::Inches: return "in";
        case LengthUnit::Meters: return "m";
    }
    return "?";
}

FormationCondition parse_formation_condition(std::string_view text) {
    if (text == "soft") return FormationCondition::Soft;
    if (text == "hard") return FormationCondition::Hard;
    throw ConfigError("condition: expected soft|hard, got '" + std::string(text) + "'", "condition");
}

AreaConvention parse_area_convention(std::string_view text) {
    if (text == "full_circle") return AreaConvention::FullCircle;
    if (text == "annulus") return AreaConvention::Annulus;
    if (text == "effective") return AreaConvention::Effective;
    throw ConfigError("area_convention: expected full_circle|annulus|effective, got '" + std::string(text) + "'",
                      "area_convention");
}

LengthUnit parse_length_unit(std::string_view text) {
    if (text == "mm") return LengthUnit::Millimeters;
    if (text == "in") return LengthUnit::Inches;
    if (text == "m") return LengthUnit::Meters;
    throw ConfigError("d_unit: expected mm|in|m, got '" + std::string(text) + "'", "d_unit");
}

}  // namespace moledrill
