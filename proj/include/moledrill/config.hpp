#pragma once

// INI-style configuration: sections [soil] [motor] [bit] [galle] [caster] [forelimb]
// [cycle] [sweep]. Precedence: built-in defaults < file < command-line overrides.

#include "moledrill/caster.hpp"
#include "moledrill/dig_cycle.hpp"
#include "moledrill/forelimb.hpp"
#include "moledrill/quantities.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace moledrill {

struct SweepRange {
    double wob_min_n = 30.0;
    double wob_max_n = 140.0;
    double step_n = 1.0;

    friend bool operator==(const SweepRange&, const SweepRange&) = default;
};

struct Config {
    SoilSpec soil;
    MotorSpec motor;
    BitGeometry bit;
    GalleConstants galle;
    CasterSpec caster;
    ForelimbSpec forelimb;
    CyclePlan cycle;
    double cycle_wob_n = 93.3;       // operating load used by the cycle simulator
    double transition_rpm = 120.0;   // bit speed while opening/folding blades
    SweepRange sweep;

    friend bool operator==(const Config&, const Config&) = default;
};

/// Built-in defaults, with the forelimb transmission fitted to the default push table.
Config default_config();

/// Throws ValidationError on the first record that breaks an invariant.
void validate(const Config& config);

/// Parses `text` on top of the defaults, then applies `overrides` ("section.key=value").
/// Relative `@file` references in the document resolve against `base_dir`.
Config load_config(const std::string& text, const std::vector<std::string>& overrides = {},
                   const std::filesystem::path& base_dir = {});

Config load_config_file(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// Full document with every field written explicitly; load_config(serialize_config(c)) == c.
std::string serialize_config(const Config& config);

}  // namespace moledrill
