#pragma once

// Bundled experiment tables. Both are plain CSV with '#' comment lines and a header row:
//   table3.csv  label,wob_kgf_added,depth_mm,rpm,e_s_mpa
//   table4.csv  d_mm,alpha_deg,f_h_max_n

#include "moledrill/forelimb.hpp"
#include "moledrill/quantities.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace moledrill {

/// How drilling-table rows map onto experiment records.
struct DrillTableOptions {
    double base_mass_kg = 7.0;  // bit + motor resting on the block
    double session_s = 600.0;
    std::vector<std::string> outlier_labels = {"W+0.5"};
};

std::vector<ExperimentRecord> parse_drill_table(std::istream& in, const DrillTableOptions& options = {});
std::vector<ExperimentRecord> load_drill_table(const std::filesystem::path& path,
                                               const DrillTableOptions& options = {});

std::vector<PushSample> parse_push_table(std::istream& in);
std::vector<PushSample> load_push_table(const std::filesystem::path& path);

}  // namespace moledrill
