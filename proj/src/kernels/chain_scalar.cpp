#include "moledrill/kernels/chain_kernel.hpp"

#include "moledrill/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace moledrill::kernels {

ChainParams make_chain_params(const SoilSpec& soil, const MotorSpec& motor, const BitGeometry& geom,
                              const GalleConstants& galle) {
    const bool soft = soil.condition == FormationCondition::Soft;
    return ChainParams{
        .friction_diameter = soil.friction * geom.expanded_diameter_m,
        .stall_torque_nm = motor.stall_torque_nm,
        .no_load_rpm = motor.no_load_rpm,
        .efficiency = motor.efficiency,
        .torque_limit_nm = motor.efficiency * motor.stall_torque_nm,
        .r_exponent = soft ? 0.428 : 0.750,
        .r_coefficient = soft ? 0.2 : 0.5,
        .wbar_scale = galle.wbar_scale,
        .diameter_in_unit = diameter_in(galle.diameter_unit, geom.expanded_diameter_m),
        .calibration_scale = galle.calibration_scale,
        .weight_exponent = galle.weight_exponent,
        .dullness_term = std::pow(galle.dullness, galle.dullness_exponent),
        .area_m2 = contact_area(geom),
    };
}

std::string_view to_string(KernelPath path) {
    return path == KernelPath::Avx2 ? "avx2" : "scalar";
}

void evaluate_chain_scalar(std::span<const double> wob_n, const ChainParams& p, const ChainOutputs& out) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < wob_n.size(); ++i) {
        const double wob = wob_n[i];
        const double torque = p.friction_diameter * wob / 3.0;
        out.torque_nm[i] = torque;
        out.wbar[i] = p.wbar_scale * wob / p.diameter_in_unit;
        if (torque > p.torque_limit_nm) {
            out.rpm[i] = out.r_value[i] = out.rop_m_hr[i] = out.specific_energy_pa[i] = nan;
            out.status[i] = ChainStatus::Stall;
            continue;
        }
        const double rpm = (p.stall_torque_nm - torque / p.efficiency) * p.no_load_rpm / p.stall_torque_nm;
        double r = 0.0;
        if (rpm > 0) {
            const double damp = std::exp(-100.0 / (rpm * rpm));
            r = damp * std::pow(rpm, p.r_exponent) + p.r_coefficient * rpm * (1.0 - damp);
        }
        const double wbar = out.wbar[i];
        const double rop = p.calibration_scale * std::pow(wbar, 0.6) * std::pow(wbar, p.weight_exponent) * r /
                           p.dullness_term;
        out.rpm[i] = rpm;
        out.r_value[i] = r;
        out.rop_m_hr[i] = rop;
        if (!(rop > 0)) {
            out.specific_energy_pa[i] = nan;
            out.status[i] = ChainStatus::ZeroRate;
            continue;
        }
        const double rev_per_s = rpm / 60.0;
        const double rop_m_s = rop / 3600.0;
        out.specific_energy_pa[i] = wob / p.area_m2 + 2.0 * kPi * rev_per_s * torque / (p.area_m2 * rop_m_s);
        out.status[i] = ChainStatus::Ok;
    }
}

#ifndef MOLEDRILL_HAVE_AVX2_KERNEL
void evaluate_chain_avx2(std::span<const double> wob_n, const ChainParams& params, const ChainOutputs& out) {
    evaluate_chain_scalar(wob_n, params, out);
}
#endif

bool avx2_available() {
#if defined(MOLEDRILL_HAVE_AVX2_KERNEL) && (defined(__x86_64__) || defined(__i386__))
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported;
#else
    return false;
#endif
}

KernelPath active_path() {
    if (const char* forced = std::getenv("MOLEDRILL_SIMD"); forced && std::string(forced) == "scalar")
        return KernelPath::Scalar;
    return avx2_available() ? KernelPath::Avx2 : KernelPath::Scalar;
}

void evaluate_chain(std::span<const double> wob_n, const ChainParams& params, const ChainOutputs& out,
                    KernelPath path) {
    if (out.torque_nm.size() < wob_n.size() || out.rpm.size() < wob_n.size() || out.r_value.size() < wob_n.size() ||
        out.wbar.size() < wob_n.size() || out.rop_m_hr.size() < wob_n.size() ||
        out.specific_energy_pa.size() < wob_n.size() || out.status.size() < wob_n.size())
        throw DomainError("evaluate_chain: output spans shorter than input");
    if (path == KernelPath::Avx2 && avx2_available())
        evaluate_chain_avx2(wob_n, params, out);
    else
        evaluate_chain_scalar(wob_n, params, out);
}

}  // namespace moledrill::kernels
