#pragma once

// WOB sweeps, calibration of the penetration-rate scale against drilling sessions, and
// location of the operating point whose specific energy equals the soil strength.

#include "moledrill/config.hpp"
#include "moledrill/drilling.hpp"
#include "moledrill/kernels/chain_kernel.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace moledrill {

struct SweepResult {
    std::vector<OperatingPoint> grid;          // strictly increasing WOB
    std::optional<double> crossing_wob_n;      // lowest WOB where e_s = sigma_c
    std::optional<OperatingPoint> optimum;
    bool truncated_at_stall = false;           // nodes past the stall load were dropped
};

/// Grid nodes wob_min + i*step up to wob_max. The crossing is refined by bisection to
/// |e_s - sigma_c| <= 1 Pa. Throws DomainError on an empty or inverted range.
SweepResult sweep(double wob_min_n, double wob_max_n, double step_n, const Config& config,
                  kernels::KernelPath path = kernels::active_path());

struct RecordResidual {
    std::string label;
    double wob_n;
    double measured_rop_m_hr;
    double model_rop_m_hr;     // calibrated, using the record's measured RPM
    double relative_error;     // (model - measured) / measured
};

struct CalibrationReport {
    double s_cal = 1.0;
    std::vector<RecordResidual> residuals;  // included records only, input order
    std::vector<std::string> excluded;      // labels of skipped records
};

/// Log-space least squares for the ROP scale: s = exp(mean(log(measured / model@s=1))).
/// Records flagged as outliers or with zero depth/RPM are excluded. Throws CalibrationError
/// with fewer than two usable records.
CalibrationReport fit_s_cal(const std::vector<ExperimentRecord>& records, const Config& config);

struct OptimumReport {
    CalibrationReport calibration;
    SweepResult sweep;
};

/// Calibrates, then sweeps the configured range with the fitted scale.
OptimumReport optimum_report(const Config& config, const std::vector<ExperimentRecord>& records);

/// Spearman rank correlation with average ranks for ties. NaN when either side is constant.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

inline constexpr const char* kSweepCsvHeader = "wob_n,torque_nm,rpm,r,rop_m_hr,e_s_pa";

void write_sweep_csv(std::ostream& out, const SweepResult& result);

}  // namespace moledrill
