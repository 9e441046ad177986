#include "moledrill/config.hpp"

#include "moledrill/datasets.hpp"
#include "moledrill/errors.hpp"
#include "moledrill/format.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace moledrill {

namespace pt = boost::property_tree;

namespace {

struct Field {
    std::string section;
    std::string key;
    std::function<void(Config&, const std::string&)> set;
    std::function<std::string(const Config&)> get;
    std::string note;  // written as a comment by serialize_config
};

template <class Ref>
Field real(std::string section, std::string key, Ref ref, std::string note = {}) {
    return {std::move(section), std::move(key),
            [ref](Config& c, const std::string& v) { ref(c) = parse_double(v); },
            [ref](const Config& c) { return format_roundtrip(ref(c)); }, std::move(note)};
}

template <class Ref>
Field integer(std::string section, std::string key, Ref ref) {
    return {std::move(section), std::move(key),
            [ref](Config& c, const std::string& v) {
                const double d = parse_double(v);
                if (d != static_cast<int>(d)) throw std::invalid_argument("not an integer");
                ref(c) = static_cast<int>(d);
            },
            [ref](const Config& c) { return std::to_string(ref(c)); }, {}};
}

std::string format_push_table(const std::vector<PushSample>& rows) {
    std::string out;
    for (const auto& r : rows) {
        if (!out.empty()) out += ", ";
        out += format_roundtrip(r.width_mm) + ":" + format_roundtrip(r.opening_deg) + ":" +
               format_roundtrip(r.max_force_n);
    }
    return out;
}

std::vector<PushSample> parse_inline_push_table(const std::string& text) {
    std::vector<PushSample> rows;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::stringstream parts(item);
        std::string d, a, f;
        if (!std::getline(parts, d, ':') || !std::getline(parts, a, ':') || !std::getline(parts, f))
            throw std::invalid_argument("expected d:alpha:force triples, got '" + item + "'");
        rows.push_back({parse_double(d), parse_double(a), parse_double(f)});
    }
    return rows;
}

// `transmission_set` records whether k_trans came from the document; otherwise it is fitted.
std::vector<Field> make_fields(const std::filesystem::path& base_dir, bool* transmission_set) {
    std::vector<Field> f;
    f.push_back(real("soil", "sigma_c", [](auto& c) -> auto& { return c.soil.compressive_strength_pa; }));
    f.push_back(real("soil", "gamma_c", [](auto& c) -> auto& { return c.soil.density_kg_m3; }));
    f.push_back(real("soil", "mu", [](auto& c) -> auto& { return c.soil.friction; }));
    f.push_back({"soil", "condition",
                 [](Config& c, const std::string& v) { c.soil.condition = parse_formation_condition(v); },
                 [](const Config& c) { return std::string(to_string(c.soil.condition)); }, "soft | hard"});
    f.push_back(real("soil", "bulking", [](auto& c) -> auto& { return c.soil.bulking; },
                     "debris bulking factor; 1.232 yields 7.55 N per 30 mm cycle"));

    f.push_back(real("motor", "tau_s", [](auto& c) -> auto& { return c.motor.stall_torque_nm; }));
    f.push_back(real("motor", "omega_n", [](auto& c) -> auto& { return c.motor.no_load_rpm; }, "rev/min"));
    f.push_back(real("motor", "eta", [](auto& c) -> auto& { return c.motor.efficiency; }));

    f.push_back(real("bit", "d_folded", [](auto& c) -> auto& { return c.bit.folded_diameter_m; }));
    f.push_back(real("bit", "d_expanded", [](auto& c) -> auto& { return c.bit.expanded_diameter_m; }));
    f.push_back(integer("bit", "blade_count_inner", [](auto& c) -> auto& { return c.bit.inner_blades; }));
    f.push_back(integer("bit", "blade_count_expandable", [](auto& c) -> auto& { return c.bit.expandable_blades; }));
    f.push_back({"bit", "area_convention",
                 [](Config& c, const std::string& v) { c.bit.area_convention = parse_area_convention(v); },
                 [](const Config& c) { return std::string(to_string(c.bit.area_convention)); },
                 "full_circle | annulus | effective"});
    f.push_back(real("bit", "effective_area", [](auto& c) -> auto& { return c.bit.effective_area_m2; },
                     "m^2, used only with area_convention = effective"));
    f.push_back(real("bit", "screw_pitch", [](auto& c) -> auto& { return c.bit.screw_pitch_m; },
                     "m/rev; artifact default, not a published value"));
    f.push_back(real("bit", "pinion_radius", [](auto& c) -> auto& { return c.bit.pinion_radius_m; },
                     "m; artifact default sized for a quarter-turn blade sweep"));
    f.push_back(real("bit", "max_travel", [](auto& c) -> auto& { return c.bit.max_travel_m; },
                     "m; artifact default, not a published value"));

    f.push_back(real("galle", "a", [](auto& c) -> auto& { return c.galle.dullness; }));
    f.push_back(real("galle", "k_exp", [](auto& c) -> auto& { return c.galle.weight_exponent; }));
    f.push_back(real("galle", "p_exp", [](auto& c) -> auto& { return c.galle.dullness_exponent; }));
    f.push_back(real("galle", "wbar_scale", [](auto& c) -> auto& { return c.galle.wbar_scale; }));
    f.push_back({"galle", "d_unit",
                 [](Config& c, const std::string& v) { c.galle.diameter_unit = parse_length_unit(v); },
                 [](const Config& c) { return std::string(to_string(c.galle.diameter_unit)); },
                 "mm | in | m; unit of the bit diameter in the normalized weight"});
    f.push_back(real("galle", "s_cal", [](auto& c) -> auto& { return c.galle.calibration_scale; }));

    f.push_back(real("caster", "k_spring", [](auto& c) -> auto& { return c.caster.spring_rate_n_per_mm; }, "N/mm"));
    f.push_back(real("caster", "delta_x", [](auto& c) -> auto& { return c.caster.spring_compression_mm; }, "mm"));
    f.push_back(real("caster", "theta", [](auto& c) -> auto& { return c.caster.inclination_deg; }, "deg"));
    f.push_back(real("caster", "l_cp", [](auto& c) -> auto& { return c.caster.contact_patch_mm; }, "mm"));
    f.push_back(real("caster", "a_m", [](auto& c) -> auto& { return c.caster.spring_arm_mm; }, "mm"));
    f.push_back(real("caster", "f_c", [](auto& c) -> auto& { return c.caster.cornering_force_n; }, "N"));
    f.push_back(real("caster", "mu_s_wheel", [](auto& c) -> auto& { return c.caster.static_friction; }));
    f.push_back(real("caster", "mu_k_wheel", [](auto& c) -> auto& { return c.caster.kinetic_friction; }));
    f.push_back(real("caster", "rise_time_constant", [](auto& c) -> auto& { return c.caster.rise_time_constant_s; },
                     "s; illustrative rise curve only"));

    f.push_back(real("forelimb", "f_m", [](auto& c) -> auto& { return c.forelimb.actuator_force_n; }));
    f.push_back(real("forelimb", "tau_m", [](auto& c) -> auto& { return c.forelimb.servo_torque_nm; }));
    f.push_back(real("forelimb", "r_pinion_fl", [](auto& c) -> auto& { return c.forelimb.pinion_radius_m; },
                     "m; artifact default"));
    f.push_back({"forelimb", "k_trans",
                 [transmission_set](Config& c, const std::string& v) {
                     c.forelimb.transmission = parse_double(v);
                     *transmission_set = true;
                 },
                 [](const Config& c) { return format_roundtrip(c.forelimb.transmission); },
                 "omit to fit against table4"});
    f.push_back({"forelimb", "table4",
                 [base_dir](Config& c, const std::string& v) {
                     if (!v.empty() && v.front() == '@') {
                         std::filesystem::path p = v.substr(1);
                         if (p.is_relative()) p = base_dir / p;
                         c.forelimb.push_table = load_push_table(p);
                     } else {
                         c.forelimb.push_table = parse_inline_push_table(v);
                     }
                 },
                 [](const Config& c) { return format_push_table(c.forelimb.push_table); },
                 "d_mm:alpha_deg:f_h_max_n rows, or @path/to/table4.csv"});

    f.push_back(real("cycle", "depth_per_cycle", [](auto& c) -> auto& { return c.cycle.depth_per_cycle_m; }));
    f.push_back(real("cycle", "target_depth", [](auto& c) -> auto& { return c.cycle.target_depth_m; }));
    f.push_back(real("cycle", "forelimb_sweep_time", [](auto& c) -> auto& { return c.cycle.forelimb_sweep_time_s; },
                     "s; artifact default"));
    f.push_back(real("cycle", "bit_advance_time", [](auto& c) -> auto& { return c.cycle.bit_advance_time_s; },
                     "s; artifact default"));
    f.push_back(real("cycle", "wob", [](auto& c) -> auto& { return c.cycle_wob_n; }, "N"));
    f.push_back(real("cycle", "transition_rpm", [](auto& c) -> auto& { return c.transition_rpm; }));

    f.push_back(real("sweep", "wob_min", [](auto& c) -> auto& { return c.sweep.wob_min_n; }));
    f.push_back(real("sweep", "wob_max", [](auto& c) -> auto& { return c.sweep.wob_max_n; }));
    f.push_back(real("sweep", "step", [](auto& c) -> auto& { return c.sweep.step_n; }));
    return f;
}

std::string strip_inline_comment(const std::string& value) {
    for (std::size_t i = 1; i < value.size(); ++i) {
        if ((value[i] == '#' || value[i] == ';') && (value[i - 1] == ' ' || value[i - 1] == '\t')) {
            const auto end = value.find_last_not_of(" \t", i - 1);
            return end == std::string::npos ? std::string{} : value.substr(0, end + 1);
        }
    }
    return value;
}

}  // namespace

Config default_config() {
    Config c;
    c.forelimb.transmission = fit_k_trans(c.forelimb);
    return c;
}

void validate(const Config& c) {
    validate(c.soil);
    validate(c.motor);
    validate(c.bit);
    validate(c.galle);
    validate(c.caster);
    validate(c.forelimb);
    validate(c.cycle);
    if (!(c.cycle_wob_n > 0)) throw ValidationError("wob", "must be > 0");
    if (!(c.transition_rpm > 0)) throw ValidationError("transition_rpm", "must be > 0");
    if (!(c.sweep.wob_min_n > 0)) throw ValidationError("wob_min", "must be > 0");
    if (!(c.sweep.wob_max_n > c.sweep.wob_min_n)) throw ValidationError("wob_max", "must exceed wob_min");
    if (!(c.sweep.step_n > 0)) throw ValidationError("step", "must be > 0");
}

Config load_config(const std::string& text, const std::vector<std::string>& overrides,
                   const std::filesystem::path& base_dir) {
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message(), {}, static_cast<int>(e.line()));
    }

    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        const auto dot = o.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigError("override '" + o + "': expected section.key=value", o);
        const std::string section = o.substr(0, dot);
        const std::string key = o.substr(dot + 1, eq - dot - 1);
        auto it = tree.find(section);
        pt::ptree& node = it == tree.not_found() ? tree.push_back({section, pt::ptree{}})->second : it->second;
        node.put(pt::ptree::path_type(key, '\0'), o.substr(eq + 1));
    }

    Config config = default_config();
    bool transmission_set = false;
    const auto fields = make_fields(base_dir, &transmission_set);
    std::set<std::string> sections;
    for (const auto& f : fields) sections.insert(f.section);

    for (const auto& [section, body] : tree) {
        if (body.empty())
            throw ConfigError("key '" + section + "' outside any section", section);
        if (!sections.count(section)) throw ConfigError("unknown section [" + section + "]", section);
        for (const auto& [key, node] : body) {
            const auto it = std::find_if(fields.begin(), fields.end(),
                                         [&](const Field& f) { return f.section == section && f.key == key; });
            const std::string name = section + "." + key;
            if (it == fields.end()) throw ConfigError("unknown key " + name, name);
            try {
                it->set(config, strip_inline_comment(node.data()));
            } catch (const ConfigError&) {
                throw;
            } catch (const std::invalid_argument& e) {
                throw ConfigError(name + ": " + e.what(), name);
            }
        }
    }

    if (!transmission_set) {
        try {
            config.forelimb.transmission = fit_k_trans(config.forelimb);
        } catch (const FitError& e) {
            throw ValidationError("table4", e.what());
        }
    }
    validate(config);
    return config;
}

Config load_config_file(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'", path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return load_config(buffer.str(), overrides, path.parent_path());
}

std::string serialize_config(const Config& config) {
    bool unused = false;
    const auto fields = make_fields({}, &unused);
    std::ostringstream out;
    std::string current;
    for (const auto& f : fields) {
        if (f.section != current) {
            if (!current.empty()) out << '\n';
            out << '[' << f.section << "]\n";
            current = f.section;
        }
        if (!f.note.empty()) out << "# " << f.note << '\n';
        out << f.key << " = " << f.get(config) << '\n';
    }
    return out.str();
}

}  // namespace moledrill
