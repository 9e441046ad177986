#include "moledrill/caster.hpp"

#include "moledrill/errors.hpp"

#include <cmath>

namespace moledrill {

namespace {
constexpr double kMmToM = 1e-3;
}

void validate(const CasterSpec& s) {
    auto positive = [](double v, const char* field) {
        if (!(std::isfinite(v) && v > 0)) throw ValidationError(field, "must be > 0");
    };
    positive(s.spring_rate_n_per_mm, "k_spring");
    positive(s.spring_compression_mm, "delta_x");
    positive(s.contact_patch_mm, "l_cp");
    positive(s.spring_arm_mm, "a_m");
    positive(s.rise_time_constant_s, "rise_time_constant");
    if (!(s.inclination_deg > 0 && s.inclination_deg < 90)) throw ValidationError("theta", "must lie in (0, 90)");
    if (!(std::isfinite(s.cornering_force_n) && s.cornering_force_n >= 0))
        throw ValidationError("f_c", "must be >= 0");
    if (!(s.static_friction >= 0) || !std::isfinite(s.static_friction))
        throw ValidationError("mu_s_wheel", "must be >= 0");
    if (!(s.kinetic_friction >= 0) || !std::isfinite(s.kinetic_friction))
        throw ValidationError("mu_k_wheel", "must be >= 0");
}

double spring_force(const CasterSpec& spec) {
    return spec.spring_rate_n_per_mm * spec.spring_compression_mm;
}

CasterBalance balance(const CasterSpec& spec) {
    CasterBalance b;
    b.spring_force_n = spring_force(spec);
    b.pneumatic_trail_mm = spec.contact_patch_mm / 4.0;
    b.self_aligning_torque_nm = 2.0 * spec.cornering_force_n * b.pneumatic_trail_mm * kMmToM;
    b.slip_steer_torque_nm = 2.0 * b.spring_force_n * spec.spring_arm_mm * kMmToM;
    b.net_torque_nm = b.slip_steer_torque_nm - b.self_aligning_torque_nm;
    // Ties within rounding of the larger torque count as an exact tie.
    const double scale = std::fmax(b.slip_steer_torque_nm, b.self_aligning_torque_nm);
    if (std::fabs(b.net_torque_nm) <= 1e-12 * scale) b.net_torque_nm = 0.0;
    b.aligns = b.net_torque_nm < 0.0;
    b.on_boundary = b.net_torque_nm == 0.0;
    return b;
}

double threshold_cornering_force(const CasterSpec& spec) {
    return spring_force(spec) * spec.spring_arm_mm / (spec.contact_patch_mm / 4.0);
}

std::vector<RiseSample> cornering_rise_curve(const CasterSpec& spec, double duration_s, double step_s) {
    if (!(step_s > 0) || !(duration_s >= 0)) throw DomainError("cornering_rise_curve: need step > 0, duration >= 0");
    std::vector<RiseSample> samples;
    const auto count = static_cast<std::size_t>(std::floor(duration_s / step_s + 1e-9));
    samples.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        const double t = static_cast<double>(i) * step_s;
        samples.push_back({t, spec.cornering_force_n * (1.0 - std::exp(-t / spec.rise_time_constant_s))});
    }
    return samples;
}

}  // namespace moledrill
