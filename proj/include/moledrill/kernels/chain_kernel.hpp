#pragma once

// Batched evaluation of the drilling chain over many WOB values. A scalar reference
// and an AVX2 variant produce bit-identical results; the variant is picked at runtime.

#include "moledrill/quantities.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace moledrill::kernels {

enum class ChainStatus : std::uint8_t { Ok = 0, Stall = 1, ZeroRate = 2 };

/// Per-batch constants, flattened from the model records.
struct ChainParams {
    double friction_diameter;   // mu * D (m)
    double stall_torque_nm;
    double no_load_rpm;
    double efficiency;
    double torque_limit_nm;     // eta * tau_s
    double r_exponent;
    double r_coefficient;
    double wbar_scale;
    double diameter_in_unit;    // D in the normalized-weight unit
    double calibration_scale;
    double weight_exponent;
    double dullness_term;       // a^P
    double area_m2;
};

ChainParams make_chain_params(const SoilSpec& soil, const MotorSpec& motor, const BitGeometry& geom,
                              const GalleConstants& galle);

/// Structure-of-arrays output; every span must be at least as long as the input.
struct ChainOutputs {
    std::span<double> torque_nm;
    std::span<double> rpm;
    std::span<double> r_value;
    std::span<double> wbar;
    std::span<double> rop_m_hr;
    std::span<double> specific_energy_pa;
    std::span<ChainStatus> status;
};

enum class KernelPath { Scalar, Avx2 };

std::string_view to_string(KernelPath path);

void evaluate_chain_scalar(std::span<const double> wob_n, const ChainParams& params, const ChainOutputs& out);

/// Only callable when avx2_available() is true.
void evaluate_chain_avx2(std::span<const double> wob_n, const ChainParams& params, const ChainOutputs& out);

/// Compiled in and supported by the running CPU.
bool avx2_available();

/// Fastest available path; MOLEDRILL_SIMD=scalar in the environment forces the reference.
KernelPath active_path();

void evaluate_chain(std::span<const double> wob_n, const ChainParams& params, const ChainOutputs& out,
                    KernelPath path);

inline void evaluate_chain(std::span<const double> wob_n, const ChainParams& params, const ChainOutputs& out) {
    evaluate_chain(wob_n, params, out, active_path());
}

}  // namespace moledrill::kernels
