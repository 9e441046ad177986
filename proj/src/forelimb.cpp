#include "moledrill/forelimb.hpp"

#include "moledrill/errors.hpp"

#include <cmath>
#include <string>

namespace moledrill {

namespace {
double sin_deg(double deg) { return std::sin(deg * kPi / 180.0); }
}  // namespace

std::vector<PushSample> default_push_table() {
    return {
        {40.0, 57.0, 35.56},
        {80.0, 76.0, 38.26},
        {120.0, 94.0, 39.90},
        {160.0, 112.0, 39.98},
        {200.0, 135.0, 33.93},
    };
}

void validate(const ForelimbSpec& s) {
    if (!(s.actuator_force_n > 0)) throw ValidationError("f_m", "must be > 0");
    if (!(s.servo_torque_nm > 0)) throw ValidationError("tau_m", "must be > 0");
    if (!(s.pinion_radius_m > 0)) throw ValidationError("r_pinion_fl", "must be > 0");
    if (!std::isfinite(s.transmission) || s.transmission < 0) throw ValidationError("k_trans", "must be >= 0");
    for (std::size_t i = 1; i < s.push_table.size(); ++i) {
        if (!(s.push_table[i].width_mm > s.push_table[i - 1].width_mm))
            throw ValidationError("table4", "widths must be strictly increasing");
        if (!(s.push_table[i].opening_deg > s.push_table[i - 1].opening_deg))
            throw ValidationError("table4", "opening angles must be strictly increasing");
    }
}

double alpha_for_width(double width_mm, const ForelimbSpec& spec) {
    const auto& t = spec.push_table;
    if (t.empty()) throw DomainError("alpha_for_width: empty push table");
    if (!(width_mm >= t.front().width_mm && width_mm <= t.back().width_mm))
        throw DomainError("alpha_for_width: width " + std::to_string(width_mm) + " mm outside [" +
                          std::to_string(t.front().width_mm) + ", " + std::to_string(t.back().width_mm) + "]");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (width_mm <= t[i].width_mm) {
            const double u = (width_mm - t[i - 1].width_mm) / (t[i].width_mm - t[i - 1].width_mm);
            return t[i - 1].opening_deg + u * (t[i].opening_deg - t[i - 1].opening_deg);
        }
    }
    return t.front().opening_deg;  // single-row table
}

double fit_k_trans(const ForelimbSpec& spec) {
    // A single row is accepted: it is an exact one-point fit.
    double cross = 0.0;
    double norm = 0.0;
    for (const auto& row : spec.push_table) {
        const double s = sin_deg(row.opening_deg);
        cross += s * row.max_force_n;
        norm += s * s;
    }
    if (spec.push_table.empty() || !(norm > 0))
        throw FitError("fit_k_trans: push table has no rows with nonzero sin(alpha)");
    return cross / (2.0 * spec.actuator_force_n * norm);
}

double max_push_force(double opening_deg, const ForelimbSpec& spec) {
    if (!(opening_deg >= 0 && opening_deg <= 180)) throw DomainError("max_push_force: alpha must lie in [0, 180]");
    return 2.0 * spec.actuator_force_n * spec.transmission * sin_deg(opening_deg);
}

PullForces pull_forces(const ForelimbSpec& spec) {
    return {spec.servo_torque_nm / spec.pinion_radius_m, 2.0 * spec.actuator_force_n};
}

double debris_weight(double depth_m, const BitGeometry& geom, const SoilSpec& soil) {
    if (!(depth_m >= 0)) throw DomainError("debris_weight: depth must be >= 0");
    const double radius = geom.expanded_diameter_m / 2.0;
    return kPi * radius * radius * depth_m * soil.density_kg_m3 * soil.bulking * kGravity;
}

std::vector<PushResidual> push_residuals(const ForelimbSpec& spec) {
    std::vector<PushResidual> out;
    out.reserve(spec.push_table.size());
    for (const auto& row : spec.push_table) {
        const double model = max_push_force(row.opening_deg, spec);
        out.push_back({row, model, (model - row.max_force_n) / row.max_force_n});
    }
    return out;
}

}  // namespace moledrill
