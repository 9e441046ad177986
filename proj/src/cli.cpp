#include "moledrill/cli.hpp"

#include "moledrill/caster.hpp"
#include "moledrill/config.hpp"
#include "moledrill/datasets.hpp"
#include "moledrill/dig_cycle.hpp"
#include "moledrill/errors.hpp"
#include "moledrill/forelimb.hpp"
#include "moledrill/format.hpp"
#include "moledrill/optimizer.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>

namespace moledrill::cli {

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    bool json = false;
    std::string csv_out;
    double tolerance = 0.35;
};

std::string default_data_path() { return std::string(MOLEDRILL_DATA_DIR) + "/table3.csv"; }

Config resolve_config(const GlobalOptions& g) {
    std::string path = g.config_path;
    if (path.empty())
        if (const char* env = std::getenv("MOLEDRILL_CONFIG"); env && *env) path = env;
    if (path.empty()) return load_config("", g.overrides);
    return load_config_file(path, g.overrides);
}

std::vector<ExperimentRecord> load_records(const std::string& path, bool include_outliers) {
    DrillTableOptions options;
    if (include_outliers) options.outlier_labels.clear();
    return load_drill_table(path.empty() ? default_data_path() : path, options);
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

/// Writes CSV either to the named file or, for "-", to `out`.
template <class Writer>
void emit_csv(const std::string& target, std::ostream& out, Writer&& write) {
    if (target == "-") {
        write(out);
        return;
    }
    std::ofstream file(target, std::ios::binary);
    if (!file) throw ConfigError("cannot write '" + target + "'", target);
    write(file);
}

Json point_json(const OperatingPoint& p) {
    return Json{{"wob_n", p.wob_n},   {"torque_nm", p.torque_nm}, {"rpm", p.rpm},
                {"r", p.r_value},     {"wbar", p.wbar},           {"rop_m_hr", p.rop_m_hr},
                {"e_s_pa", p.specific_energy_pa}};
}

// predict --------------------------------------------------------------------------

struct PredictOptions {
    std::optional<double> wob_min, wob_max, step;
};

int cmd_predict(const GlobalOptions& g, const PredictOptions& o, std::ostream& out, std::ostream& err) {
    const Config config = resolve_config(g);
    const double lo = o.wob_min.value_or(config.sweep.wob_min_n);
    const double hi = o.wob_max.value_or(config.sweep.wob_max_n);
    const double step = o.step.value_or(config.sweep.step_n);
    const SweepResult result = sweep(lo, hi, step, config);
    if (result.grid.empty()) {
        err << "infeasible: motor stalls across the whole range (stall WOB "
            << format_fixed(stall_wob(config.soil, config.motor, config.bit), 3) << " N)\n";
        return kInfeasible;
    }
    if (result.truncated_at_stall)
        err << "warning: range truncated at stall WOB "
            << format_fixed(stall_wob(config.soil, config.motor, config.bit), 3) << " N\n";

    if (g.json) {
        Json j{{"wob_min_n", lo}, {"wob_max_n", hi}, {"step_n", step}, {"truncated_at_stall", result.truncated_at_stall}};
        j["grid"] = Json::array();
        for (const auto& p : result.grid) j["grid"].push_back(point_json(p));
        j["crossing_wob_n"] = result.crossing_wob_n ? Json(*result.crossing_wob_n) : Json(nullptr);
        out << j.dump(2) << '\n';
        if (!g.csv_out.empty()) emit_csv(g.csv_out, out, [&](std::ostream& s) { write_sweep_csv(s, result); });
        return kOk;
    }
    emit_csv(g.csv_out.empty() ? "-" : g.csv_out, out, [&](std::ostream& s) { write_sweep_csv(s, result); });
    return kOk;
}

// optimize -------------------------------------------------------------------------

struct DataOptions {
    std::string data_path;
    bool include_outliers = false;
};

int cmd_optimize(const GlobalOptions& g, const DataOptions& d, std::ostream& out, std::ostream& err) {
    const Config config = resolve_config(g);
    const auto records = load_records(d.data_path, d.include_outliers);
    const OptimumReport report = optimum_report(config, records);
    const auto& cal = report.calibration;

    if (!g.csv_out.empty()) emit_csv(g.csv_out, out, [&](std::ostream& s) { write_sweep_csv(s, report.sweep); });

    if (g.json) {
        Json j{{"s_cal", cal.s_cal},
               {"records_used", cal.residuals.size()},
               {"excluded", cal.excluded},
               {"target_e_s_pa", config.soil.compressive_strength_pa},
               {"wob_min_n", config.sweep.wob_min_n},
               {"wob_max_n", config.sweep.wob_max_n},
               {"step_n", config.sweep.step_n},
               {"truncated_at_stall", report.sweep.truncated_at_stall}};
        j["recommended"] = report.sweep.optimum ? point_json(*report.sweep.optimum) : Json(nullptr);
        out << j.dump(2) << '\n';
    } else {
        out << "s_cal: " << format_fixed(cal.s_cal, 6) << " (fitted to " << cal.residuals.size() << " records";
        if (!cal.excluded.empty()) {
            out << "; excluded:";
            for (const auto& l : cal.excluded) out << ' ' << l;
        }
        out << ")\n";
        out << "target_e_s_pa: " << format_fixed(config.soil.compressive_strength_pa, 1) << '\n';
        out << "sweep_n: [" << format_fixed(config.sweep.wob_min_n, 3) << ", " << format_fixed(config.sweep.wob_max_n, 3)
            << "] step " << format_fixed(config.sweep.step_n, 3) << '\n';
        if (report.sweep.optimum) {
            const auto& p = *report.sweep.optimum;
            out << "recommended_wob_n: " << format_fixed(p.wob_n, 3) << '\n'
                << "recommended_rpm: " << format_fixed(p.rpm, 2) << '\n'
                << "recommended_torque_nm: " << format_fixed(p.torque_nm, 4) << '\n'
                << "recommended_rop_m_hr: " << format_fixed(p.rop_m_hr, 4) << '\n'
                << "recommended_e_s_pa: " << format_fixed(p.specific_energy_pa, 1) << '\n';
        }
    }
    if (!report.sweep.optimum) {
        err << "infeasible: specific energy never reaches the target strength in the swept range\n";
        return kInfeasible;
    }
    return kOk;
}

// validate -------------------------------------------------------------------------

struct ValidationRow {
    RecordResidual residual;
    double reported_e_s_pa;
    double e_s_full_circle_pa;
    double e_s_annulus_pa;
};

int cmd_validate(const GlobalOptions& g, const DataOptions& d, std::ostream& out, std::ostream& err) {
    const Config config = resolve_config(g);
    const auto records = load_records(d.data_path, d.include_outliers);
    const CalibrationReport cal = fit_s_cal(records, config);

    BitGeometry full = config.bit;
    full.area_convention = AreaConvention::FullCircle;
    BitGeometry annulus = config.bit;
    annulus.area_convention = AreaConvention::Annulus;

    std::vector<ValidationRow> rows;
    double max_error = 0.0;
    for (const auto& res : cal.residuals) {
        const auto& rec = *std::find_if(records.begin(), records.end(),
                                        [&](const ExperimentRecord& r) { return r.label == res.label; });
        const double torque = torque_from_wob(rec.wob_n, config.soil, config.bit);
        const double measured = rec.measured_rop_m_hr();
        rows.push_back({res, rec.reported_specific_energy_pa,
                        specific_energy(rec.wob_n, rec.rpm, torque, measured, full),
                        specific_energy(rec.wob_n, rec.rpm, torque, measured, annulus)});
        max_error = std::max(max_error, std::fabs(res.relative_error));
    }

    Config calibrated = config;
    calibrated.galle.calibration_scale = cal.s_cal;
    std::vector<double> wobs, energies;
    for (const auto& rec : records) {
        wobs.push_back(rec.wob_n);
        energies.push_back(
            solve_operating_point(rec.wob_n, calibrated.soil, calibrated.motor, calibrated.bit, calibrated.galle)
                .specific_energy_pa);
    }
    const double rho = spearman(wobs, energies);
    const bool pass = max_error <= g.tolerance;

    if (!g.csv_out.empty()) {
        emit_csv(g.csv_out, out, [&](std::ostream& s) {
            s << "label,wob_n,measured_rop_m_hr,model_rop_m_hr,rel_error,e_s_reported_pa,e_s_full_circle_pa,"
                 "e_s_annulus_pa\n";
            for (const auto& r : rows)
                s << r.residual.label << ',' << format_fixed(r.residual.wob_n, 3) << ','
                  << format_fixed(r.residual.measured_rop_m_hr, 6) << ',' << format_fixed(r.residual.model_rop_m_hr, 6)
                  << ',' << format_fixed(r.residual.relative_error, 6) << ',' << format_fixed(r.reported_e_s_pa, 1)
                  << ',' << format_fixed(r.e_s_full_circle_pa, 1) << ',' << format_fixed(r.e_s_annulus_pa, 1) << '\n';
        });
    }

    if (g.json) {
        Json j;
        j["rows"] = Json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"label", r.residual.label},
                                 {"wob_n", r.residual.wob_n},
                                 {"measured_rop_m_hr", r.residual.measured_rop_m_hr},
                                 {"model_rop_m_hr", r.residual.model_rop_m_hr},
                                 {"rel_error", r.residual.relative_error},
                                 {"e_s_reported_pa", r.reported_e_s_pa},
                                 {"e_s_full_circle_pa", r.e_s_full_circle_pa},
                                 {"e_s_annulus_pa", r.e_s_annulus_pa}});
        j["excluded"] = cal.excluded;
        j["summary"] = {{"s_cal", cal.s_cal},
                        {"max_rel_error_included", max_error},
                        {"spearman_e_s", rho},
                        {"tolerance", g.tolerance},
                        {"pass", pass}};
        out << j.dump(2) << '\n';
    } else {
        out << pad_right("label", 8) << pad("wob_n", 10) << pad("rop_meas", 11) << pad("rop_model", 11)
            << pad("rel_err", 10) << pad("es_rep_MPa", 12) << pad("es_full_MPa", 13) << pad("es_ann_MPa", 12) << '\n';
        for (const auto& r : rows)
            out << pad_right(r.residual.label, 8) << pad(format_fixed(r.residual.wob_n, 3), 10)
                << pad(format_fixed(r.residual.measured_rop_m_hr, 4), 11)
                << pad(format_fixed(r.residual.model_rop_m_hr, 4), 11)
                << pad(format_fixed(r.residual.relative_error, 4), 10)
                << pad(format_fixed(r.reported_e_s_pa / 1e6, 2), 12)
                << pad(format_fixed(r.e_s_full_circle_pa / 1e6, 3), 13)
                << pad(format_fixed(r.e_s_annulus_pa / 1e6, 3), 12) << '\n';
        out << "excluded:";
        for (const auto& l : cal.excluded) out << ' ' << l;
        out << '\n'
            << "s_cal: " << format_fixed(cal.s_cal, 6) << '\n'
            << "max_rel_error_included: " << format_fixed(max_error, 4) << '\n'
            << "spearman_e_s: " << format_fixed(rho, 3) << '\n'
            << "tolerance: " << format_fixed(g.tolerance, 4) << " -> " << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (!pass) {
        err << "max relative ROP error " << format_fixed(max_error, 4) << " exceeds tolerance "
            << format_fixed(g.tolerance, 4) << '\n';
        return kCheckFailed;
    }
    return kOk;
}

// simulate -------------------------------------------------------------------------

struct SimulateOptions {
    DataOptions data;
    std::optional<double> target_depth, wob, rop;
    bool no_calibrate = false;
};

int cmd_simulate(const GlobalOptions& g, const SimulateOptions& o, std::ostream& out, std::ostream&) {
    Config config = resolve_config(g);
    if (o.target_depth) config.cycle.target_depth_m = *o.target_depth;
    if (o.wob) config.cycle_wob_n = *o.wob;
    validate(config);

    std::optional<double> fitted;
    if (!o.no_calibrate && !o.rop) {
        fitted = fit_s_cal(load_records(o.data.data_path, o.data.include_outliers), config).s_cal;
        config.galle.calibration_scale = *fitted;
    }
    OperatingPoint op = solve_operating_point(config.cycle_wob_n, config.soil, config.motor, config.bit, config.galle);
    if (o.rop) {
        op.rop_m_hr = *o.rop;
        op.specific_energy_pa = specific_energy(op.wob_n, op.rpm, op.torque_nm, op.rop_m_hr, config.bit);
    }
    const DigTimeline timeline = simulate(config.cycle, op, config.bit, config.soil, config.transition_rpm);
    const auto& t = timeline.totals;

    if (!g.csv_out.empty()) {
        emit_csv(g.csv_out, out, [&](std::ostream& s) {
            s << "cycle,phase,phase_name,start_s,duration_s,depth_after_m,debris_removed_n,bit_mode_start,bit_mode_end\n";
            for (std::size_t i = 0; i < timeline.entries.size(); ++i) {
                const auto& e = timeline.entries[i];
                s << i / 6 + 1 << ',' << phase_number(e.phase) << ',' << to_string(e.phase) << ','
                  << format_fixed(e.start_s, 4) << ',' << format_fixed(e.duration_s, 4) << ','
                  << format_fixed(e.depth_after_m, 6) << ',' << format_fixed(e.debris_removed_n, 4) << ','
                  << to_string(e.bit_mode_start) << ',' << to_string(e.bit_mode_end) << '\n';
            }
        });
        if (g.csv_out == "-") return kOk;
    }

    if (g.json) {
        Json j{{"operating_point", point_json(op)},
               {"s_cal", config.galle.calibration_scale},
               {"calibrated", fitted.has_value()},
               {"target_depth_m", config.cycle.target_depth_m},
               {"depth_per_cycle_m", config.cycle.depth_per_cycle_m},
               {"transition_rpm", config.transition_rpm},
               {"entries", timeline.entries.size()},
               {"totals",
                {{"elapsed_s", t.elapsed_s},
                 {"cycles", t.cycles},
                 {"net_advance_rate_m_hr", t.net_advance_rate_m_hr},
                 {"debris_removed_n", t.debris_removed_n}}}};
        out << j.dump(2) << '\n';
    } else {
        out << "operating_point: wob " << format_fixed(op.wob_n, 3) << " N, rpm " << format_fixed(op.rpm, 2)
            << ", rop " << format_fixed(op.rop_m_hr, 4) << " m/hr\n"
            << "s_cal: " << format_fixed(config.galle.calibration_scale, 6) << (fitted ? " (fitted)" : "") << '\n'
            << "target_depth_m: " << format_fixed(config.cycle.target_depth_m, 4) << '\n'
            << "depth_per_cycle_m: " << format_fixed(config.cycle.depth_per_cycle_m, 4) << '\n'
            << "transition_rpm: " << format_fixed(config.transition_rpm, 2) << '\n'
            << "cycles: " << t.cycles << '\n'
            << "entries: " << timeline.entries.size() << '\n'
            << "elapsed_s: " << format_fixed(t.elapsed_s, 3) << '\n'
            << "net_advance_rate_m_hr: " << format_fixed(t.net_advance_rate_m_hr, 4) << '\n'
            << "debris_removed_n: " << format_fixed(t.debris_removed_n, 3) << '\n';
    }
    return kOk;
}

// caster ---------------------------------------------------------------------------

struct CasterOptions {
    double rise_duration = 0.3;
    double rise_step = 0.01;
};

int cmd_caster(const GlobalOptions& g, const CasterOptions& o, std::ostream& out, std::ostream&) {
    const Config config = resolve_config(g);
    const CasterBalance b = balance(config.caster);
    std::string verdict = std::string("aligns: ") + (b.aligns ? "true" : "false") + " (ΣT = " +
                          format_fixed(b.net_torque_nm, 4) + " N·m" + (b.on_boundary ? ", boundary" : "") + ")";

    if (!g.csv_out.empty()) {
        emit_csv(g.csv_out, out, [&](std::ostream& s) {
            s << "time_s,cornering_force_n\n";
            for (const auto& r : cornering_rise_curve(config.caster, o.rise_duration, o.rise_step))
                s << format_fixed(r.time_s, 4) << ',' << format_fixed(r.cornering_force_n, 6) << '\n';
        });
        if (g.csv_out == "-") return kOk;
    }
    if (g.json) {
        Json j{{"f_sp_n", b.spring_force_n},
               {"p_t_mm", b.pneumatic_trail_mm},
               {"t_sat_nm", b.self_aligning_torque_nm},
               {"t_ss_nm", b.slip_steer_torque_nm},
               {"sigma_t_nm", b.net_torque_nm},
               {"aligns", b.aligns},
               {"boundary", b.on_boundary},
               {"threshold_f_c_n", threshold_cornering_force(config.caster)},
               {"verdict", verdict}};
        out << j.dump(2) << '\n';
    } else {
        out << "f_sp_n: " << format_fixed(b.spring_force_n, 6) << '\n'
            << "p_t_mm: " << format_fixed(b.pneumatic_trail_mm, 6) << '\n'
            << "t_sat_nm: " << format_fixed(b.self_aligning_torque_nm, 6) << '\n'
            << "t_ss_nm: " << format_fixed(b.slip_steer_torque_nm, 6) << '\n'
            << "sigma_t_nm: " << format_fixed(b.net_torque_nm, 6) << '\n'
            << "threshold_f_c_n: " << format_fixed(threshold_cornering_force(config.caster), 6) << '\n'
            << verdict << '\n';
    }
    return kOk;
}

// forelimb -------------------------------------------------------------------------

int cmd_forelimb(const GlobalOptions& g, std::ostream& out, std::ostream&) {
    const Config config = resolve_config(g);
    const auto residuals = push_residuals(config.forelimb);
    double worst = 0.0;
    for (const auto& r : residuals) worst = std::max(worst, std::fabs(r.relative_error));
    const PullForces pull = pull_forces(config.forelimb);
    const double debris = debris_weight(config.cycle.depth_per_cycle_m, config.bit, config.soil);

    if (!g.csv_out.empty()) {
        emit_csv(g.csv_out, out, [&](std::ostream& s) {
            s << "d_mm,alpha_deg,f_h_max_n,model_n,rel_error\n";
            for (const auto& r : residuals)
                s << format_fixed(r.sample.width_mm, 1) << ',' << format_fixed(r.sample.opening_deg, 1) << ','
                  << format_fixed(r.sample.max_force_n, 2) << ',' << format_fixed(r.model_force_n, 4) << ','
                  << format_fixed(r.relative_error, 6) << '\n';
        });
        if (g.csv_out == "-") return kOk;
    }
    if (g.json) {
        Json j;
        j["k_trans"] = config.forelimb.transmission;
        j["rows"] = Json::array();
        for (const auto& r : residuals)
            j["rows"].push_back({{"d_mm", r.sample.width_mm},
                                 {"alpha_deg", r.sample.opening_deg},
                                 {"f_h_max_n", r.sample.max_force_n},
                                 {"model_n", r.model_force_n},
                                 {"rel_error", r.relative_error}});
        j["max_abs_rel_error"] = worst;
        j["pull"] = {{"servo_n", pull.servo_n}, {"linear_n", pull.linear_n}, {"servo_exceeds_linear", pull.servo_n > pull.linear_n}};
        j["debris_per_cycle_n"] = debris;
        out << j.dump(2) << '\n';
    } else {
        out << pad("d_mm", 7) << pad("alpha_deg", 11) << pad("f_h_max_n", 11) << pad("model_n", 10)
            << pad("rel_err", 10) << '\n';
        for (const auto& r : residuals)
            out << pad(format_fixed(r.sample.width_mm, 1), 7) << pad(format_fixed(r.sample.opening_deg, 1), 11)
                << pad(format_fixed(r.sample.max_force_n, 2), 11) << pad(format_fixed(r.model_force_n, 3), 10)
                << pad(format_fixed(r.relative_error, 4), 10) << '\n';
        out << "k_trans: " << format_fixed(config.forelimb.transmission, 6) << '\n'
            << "max_abs_rel_error: " << format_fixed(worst, 4) << '\n'
            << "pull_servo_n: " << format_fixed(pull.servo_n, 3) << '\n'
            << "pull_linear_n: " << format_fixed(pull.linear_n, 3) << '\n'
            << "servo_exceeds_linear: " << (pull.servo_n > pull.linear_n ? "true" : "false") << '\n'
            << "debris_per_cycle_n: " << format_fixed(debris, 3) << '\n';
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Expandable-bit drilling robot: drilling model, optimizer and dig-cycle simulator", "moledrill"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "Configuration file (falls back to $MOLEDRILL_CONFIG)");
    app.add_option("--set", g.overrides, "Override one field, section.key=value (repeatable)");
    app.add_flag("--json", g.json, "Machine-readable JSON report");
    app.add_option("--csv-out", g.csv_out, "Write the CSV artifact to PATH ('-' for standard output)");
    app.add_option("--tolerance", g.tolerance, "validate: largest accepted relative ROP error")->capture_default_str();

    PredictOptions predict;
    auto* p = app.add_subcommand("predict", "WOB sweep of the drilling chain as CSV")->fallthrough();
    p->add_option("--wob-min", predict.wob_min, "Lowest WOB (N)");
    p->add_option("--wob-max", predict.wob_max, "Highest WOB (N)");
    p->add_option("--step", predict.step, "Grid step (N)");

    auto add_data = [](CLI::App* sub, DataOptions& d) {
        sub->add_option("--data", d.data_path, "Drilling table CSV (default: bundled table3.csv)");
        sub->add_flag("--include-outliers", d.include_outliers, "Keep rows flagged as outliers");
    };

    DataOptions optimize_data;
    auto* o = app.add_subcommand("optimize", "Calibrate against the drilling table and locate the optimum")->fallthrough();
    add_data(o, optimize_data);

    DataOptions validate_data;
    auto* v = app.add_subcommand("validate", "Compare the calibrated model with the drilling table")->fallthrough();
    add_data(v, validate_data);

    SimulateOptions sim;
    auto* s = app.add_subcommand("simulate", "Multi-cycle digging timeline")->fallthrough();
    add_data(s, sim.data);
    s->add_option("--target-depth", sim.target_depth, "Depth to reach (m)");
    s->add_option("--wob", sim.wob, "Operating WOB (N)");
    s->add_option("--rop", sim.rop, "Use this drilling rate (m/hr) instead of the model");
    s->add_flag("--no-calibrate", sim.no_calibrate, "Use galle.s_cal from the config instead of fitting");

    CasterOptions caster;
    auto* c = app.add_subcommand("caster", "Caster-wheel torque balance")->fallthrough();
    c->add_option("--rise-duration", caster.rise_duration, "Rise-curve length (s)")->capture_default_str();
    c->add_option("--rise-step", caster.rise_step, "Rise-curve sample step (s)")->capture_default_str();

    auto* f = app.add_subcommand("forelimb", "Forelimb push-model fit and pull forces")->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (p->parsed()) return cmd_predict(g, predict, out, err);
        if (o->parsed()) return cmd_optimize(g, optimize_data, out, err);
        if (v->parsed()) return cmd_validate(g, validate_data, out, err);
        if (s->parsed()) return cmd_simulate(g, sim, out, err);
        if (c->parsed()) return cmd_caster(g, caster, out, err);
        if (f->parsed()) return cmd_forelimb(g, out, err);
    } catch (const StallError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const InfeasibleRateError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace moledrill::cli
