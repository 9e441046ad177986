#include "moledrill/optimizer.hpp"

#include "moledrill/errors.hpp"
#include "moledrill/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace moledrill {

namespace {

constexpr double kCrossingTolerancePa = 1.0;

OperatingPoint solve(double wob, const Config& c) {
    return solve_operating_point(wob, c.soil, c.motor, c.bit, c.galle);
}

/// Bisection on e_s(w) - target between two loads that straddle it.
OperatingPoint bisect_crossing(double lo, double hi, double target, const Config& config) {
    OperatingPoint lo_point = solve(lo, config);
    OperatingPoint hi_point = solve(hi, config);
    const bool decreasing = lo_point.specific_energy_pa > hi_point.specific_energy_pa;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const OperatingPoint p = solve(mid, config);
        const double excess = p.specific_energy_pa - target;
        if (std::fabs(excess) <= kCrossingTolerancePa || mid == lo || mid == hi) return p;
        if ((excess > 0) == decreasing) {
            lo = mid;
            lo_point = p;
        } else {
            hi = mid;
            hi_point = p;
        }
    }
    return std::fabs(lo_point.specific_energy_pa - target) < std::fabs(hi_point.specific_energy_pa - target)
               ? lo_point
               : hi_point;
}

std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

SweepResult sweep(double wob_min_n, double wob_max_n, double step_n, const Config& config, kernels::KernelPath path) {
    if (!(wob_min_n > 0) || !(wob_max_n > wob_min_n) || !(step_n > 0))
        throw DomainError("sweep: need 0 < wob_min < wob_max and step > 0");

    // Node count from the range rather than accumulated steps, so grids are reproducible.
    const auto intervals = static_cast<std::size_t>(std::floor((wob_max_n - wob_min_n) / step_n + 1e-9));
    std::vector<double> wobs(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) wobs[i] = wob_min_n + static_cast<double>(i) * step_n;

    const std::size_t n = wobs.size();
    std::vector<double> torque(n), rpm(n), r(n), wbar(n), rop(n), energy(n);
    std::vector<kernels::ChainStatus> status(n);
    kernels::evaluate_chain(wobs, kernels::make_chain_params(config.soil, config.motor, config.bit, config.galle),
                            {torque, rpm, r, wbar, rop, energy, status}, path);

    SweepResult result;
    result.grid.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (status[i] == kernels::ChainStatus::Stall) {
            result.truncated_at_stall = true;
            break;
        }
        if (status[i] == kernels::ChainStatus::ZeroRate)
            throw InfeasibleRateError("sweep: zero penetration rate at WOB " + format_fixed(wobs[i], 3) + " N");
        result.grid.push_back({wobs[i], torque[i], rpm[i], r[i], wbar[i], rop[i], energy[i]});
    }

    const double target = config.soil.compressive_strength_pa;
    for (std::size_t i = 0; i < result.grid.size(); ++i) {
        const double here = result.grid[i].specific_energy_pa - target;
        if (here == 0.0) {
            result.crossing_wob_n = result.grid[i].wob_n;
            result.optimum = result.grid[i];
            break;
        }
        if (i + 1 < result.grid.size()) {
            const double next = result.grid[i + 1].specific_energy_pa - target;
            if ((here > 0) != (next > 0) && next != 0.0) {
                result.optimum = bisect_crossing(result.grid[i].wob_n, result.grid[i + 1].wob_n, target, config);
                result.crossing_wob_n = result.optimum->wob_n;
                break;
            }
        }
    }
    return result;
}

CalibrationReport fit_s_cal(const std::vector<ExperimentRecord>& records, const Config& config) {
    GalleConstants unscaled = config.galle;
    unscaled.calibration_scale = 1.0;

    struct Usable {
        const ExperimentRecord* record;
        double measured;
        double model;
    };
    std::vector<Usable> usable;
    CalibrationReport report;
    for (const auto& rec : records) {
        if (rec.outlier || !(rec.drilled_depth_m > 0) || !(rec.rpm > 0)) {
            report.excluded.push_back(rec.label);
            continue;
        }
        const double wbar = normalized_wob(rec.wob_n, config.bit, unscaled);
        const double model = galle_rop(wbar, rotary_speed_r(rec.rpm, config.soil.condition), unscaled);
        if (!(model > 0)) {
            report.excluded.push_back(rec.label);
            continue;
        }
        usable.push_back({&rec, rec.measured_rop_m_hr(), model});
    }
    if (usable.size() < 2)
        throw CalibrationError("calibration needs at least 2 usable records, got " + std::to_string(usable.size()));

    double log_sum = 0.0;
    for (const auto& u : usable) log_sum += std::log(u.measured / u.model);
    report.s_cal = std::exp(log_sum / static_cast<double>(usable.size()));

    for (const auto& u : usable) {
        const double model = report.s_cal * u.model;
        report.residuals.push_back(
            {u.record->label, u.record->wob_n, u.measured, model, (model - u.measured) / u.measured});
    }
    return report;
}

OptimumReport optimum_report(const Config& config, const std::vector<ExperimentRecord>& records) {
    OptimumReport out;
    out.calibration = fit_s_cal(records, config);
    Config calibrated = config;
    calibrated.galle.calibration_scale = out.calibration.s_cal;
    out.sweep = sweep(config.sweep.wob_min_n, config.sweep.wob_max_n, config.sweep.step_n, calibrated);
    return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("spearman: need two equal-length series (n >= 2)");
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << kSweepCsvHeader << '\n';
    for (const auto& p : result.grid) {
        out << format_fixed(p.wob_n, 3) << ',' << format_fixed(p.torque_nm, 6) << ',' << format_fixed(p.rpm, 4)
            << ',' << format_fixed(p.r_value, 6) << ',' << format_fixed(p.rop_m_hr, 6) << ','
            << format_fixed(p.specific_energy_pa, 1) << '\n';
    }
}

}  // namespace moledrill
