// Compiled with -mavx2 only (no FMA), so every vector op rounds exactly like its scalar
// counterpart. exp/pow go through libm lane by lane for the same reason.

#include "moledrill/kernels/chain_kernel.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace moledrill::kernels {

void evaluate_chain_avx2(std::span<const double> wob_n, const ChainParams& p, const ChainOutputs& out) {
    constexpr std::size_t kLanes = 4;
    const std::size_t n = wob_n.size();
    const std::size_t body = n - n % kLanes;

    const __m256d friction_diameter = _mm256_set1_pd(p.friction_diameter);
    const __m256d three = _mm256_set1_pd(3.0);
    const __m256d limit = _mm256_set1_pd(p.torque_limit_nm);
    const __m256d stall_torque = _mm256_set1_pd(p.stall_torque_nm);
    const __m256d efficiency = _mm256_set1_pd(p.efficiency);
    const __m256d no_load = _mm256_set1_pd(p.no_load_rpm);
    const __m256d wbar_scale = _mm256_set1_pd(p.wbar_scale);
    const __m256d diameter = _mm256_set1_pd(p.diameter_in_unit);
    const __m256d coefficient = _mm256_set1_pd(p.r_coefficient);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d scale = _mm256_set1_pd(p.calibration_scale);
    const __m256d dullness = _mm256_set1_pd(p.dullness_term);
    const __m256d area = _mm256_set1_pd(p.area_m2);
    const __m256d sixty = _mm256_set1_pd(60.0);
    const __m256d hour = _mm256_set1_pd(3600.0);
    const __m256d two_pi = _mm256_set1_pd(2.0 * kPi);
    const __m256d nan = _mm256_set1_pd(std::numeric_limits<double>::quiet_NaN());

    alignas(32) double rpm_lane[kLanes];
    alignas(32) double wbar_lane[kLanes];
    alignas(32) double damp_lane[kLanes];
    alignas(32) double pow_rpm_lane[kLanes];
    alignas(32) double pow06_lane[kLanes];
    alignas(32) double powk_lane[kLanes];

    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d wob = _mm256_loadu_pd(wob_n.data() + i);
        const __m256d torque = _mm256_div_pd(_mm256_mul_pd(friction_diameter, wob), three);
        const __m256d wbar = _mm256_div_pd(_mm256_mul_pd(wbar_scale, wob), diameter);
        const __m256d stalled = _mm256_cmp_pd(torque, limit, _CMP_GT_OQ);

        const __m256d rpm = _mm256_div_pd(
            _mm256_mul_pd(_mm256_sub_pd(stall_torque, _mm256_div_pd(torque, efficiency)), no_load), stall_torque);
        const __m256d turning = _mm256_cmp_pd(rpm, zero, _CMP_GT_OQ);

        _mm256_store_pd(rpm_lane, rpm);
        _mm256_store_pd(wbar_lane, wbar);
        for (std::size_t l = 0; l < kLanes; ++l) {
            const double w = rpm_lane[l];
            if (w > 0) {
                damp_lane[l] = std::exp(-100.0 / (w * w));
                pow_rpm_lane[l] = std::pow(w, p.r_exponent);
            } else {
                damp_lane[l] = 0.0;
                pow_rpm_lane[l] = 0.0;
            }
            pow06_lane[l] = std::pow(wbar_lane[l], 0.6);
            powk_lane[l] = std::pow(wbar_lane[l], p.weight_exponent);
        }
        const __m256d damp = _mm256_load_pd(damp_lane);
        __m256d r = _mm256_add_pd(_mm256_mul_pd(damp, _mm256_load_pd(pow_rpm_lane)),
                                  _mm256_mul_pd(_mm256_mul_pd(coefficient, rpm), _mm256_sub_pd(one, damp)));
        r = _mm256_blendv_pd(zero, r, turning);

        const __m256d rop = _mm256_div_pd(
            _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(scale, _mm256_load_pd(pow06_lane)), _mm256_load_pd(powk_lane)),
                          r),
            dullness);
        const __m256d moving = _mm256_cmp_pd(rop, zero, _CMP_GT_OQ);

        const __m256d rev_per_s = _mm256_div_pd(rpm, sixty);
        const __m256d rop_m_s = _mm256_div_pd(rop, hour);
        const __m256d rotary = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(two_pi, rev_per_s), torque),
                                             _mm256_mul_pd(area, rop_m_s));
        __m256d energy = _mm256_add_pd(_mm256_div_pd(wob, area), rotary);
        energy = _mm256_blendv_pd(nan, energy, moving);

        _mm256_storeu_pd(out.torque_nm.data() + i, torque);
        _mm256_storeu_pd(out.wbar.data() + i, wbar);
        _mm256_storeu_pd(out.rpm.data() + i, _mm256_blendv_pd(rpm, nan, stalled));
        _mm256_storeu_pd(out.r_value.data() + i, _mm256_blendv_pd(r, nan, stalled));
        _mm256_storeu_pd(out.rop_m_hr.data() + i, _mm256_blendv_pd(rop, nan, stalled));
        _mm256_storeu_pd(out.specific_energy_pa.data() + i, _mm256_blendv_pd(energy, nan, stalled));

        const int stall_bits = _mm256_movemask_pd(stalled);
        const int moving_bits = _mm256_movemask_pd(moving);
        for (std::size_t l = 0; l < kLanes; ++l) {
            ChainStatus s = ChainStatus::Ok;
            if (stall_bits & (1 << l))
                s = ChainStatus::Stall;
            else if (!(moving_bits & (1 << l)))
                s = ChainStatus::ZeroRate;
            out.status[i + l] = s;
        }
    }

    if (body < n) {
        const ChainOutputs tail{out.torque_nm.subspan(body),  out.rpm.subspan(body),
                                out.r_value.subspan(body),    out.wbar.subspan(body),
                                out.rop_m_hr.subspan(body),   out.specific_energy_pa.subspan(body),
                                out.status.subspan(body)};
        evaluate_chain_scalar(wob_n.subspan(body), p, tail);
    }
}

}  // namespace moledrill::kernels
