#include "moledrill/datasets.hpp"

#include "moledrill/errors.hpp"
#include "moledrill/format.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace moledrill {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

/// Rows after the header, skipping blanks and '#' comments. Validates the header.
std::vector<std::pair<int, std::vector<std::string>>> read_table(std::istream& in,
                                                                  const std::vector<std::string>& header) {
    std::vector<std::pair<int, std::vector<std::string>>> rows;
    std::string line;
    int line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto cells = split_csv_line(t);
        if (!seen_header) {
            if (cells != header) {
                std::string expected;
                for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
                throw ConfigError("line " + std::to_string(line_no) + ": expected header '" + expected + "'",
                                  "header", line_no);
            }
            seen_header = true;
            continue;
        }
        if (cells.size() != header.size())
            throw ConfigError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                                  " columns, got " + std::to_string(cells.size()),
                              "row", line_no);
        rows.emplace_back(line_no, std::move(cells));
    }
    if (!seen_header) throw ConfigError("missing header row", "header");
    return rows;
}

double number_at(const std::pair<int, std::vector<std::string>>& row, std::size_t col, const std::string& name) {
    try {
        return parse_double(row.second[col]);
    } catch (const std::invalid_argument&) {
        throw ConfigError("line " + std::to_string(row.first) + ": column " + name + " is not a number: '" +
                              row.second[col] + "'",
                          name, row.first);
    }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open dataset '" + path.string() + "'", path.string());
    return in;
}

}  // namespace

std::vector<ExperimentRecord> parse_drill_table(std::istream& in, const DrillTableOptions& options) {
    std::vector<ExperimentRecord> records;
    for (const auto& row : read_table(in, {"label", "wob_kgf_added", "depth_mm", "rpm", "e_s_mpa"})) {
        ExperimentRecord r;
        r.label = row.second[0];
        r.wob_n = (options.base_mass_kg + number_at(row, 1, "wob_kgf_added")) * kGravity;
        r.drilled_depth_m = number_at(row, 2, "depth_mm") / 1000.0;
        r.duration_s = options.session_s;
        r.rpm = number_at(row, 3, "rpm");
        r.reported_specific_energy_pa = number_at(row, 4, "e_s_mpa") * 1e6;
        r.outlier = std::find(options.outlier_labels.begin(), options.outlier_labels.end(), r.label) !=
                    options.outlier_labels.end();
        try {
            validate(r);
        } catch (const ValidationError& e) {
            throw ConfigError("line " + std::to_string(row.first) + ": " + e.what(), e.field(), row.first);
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<ExperimentRecord> load_drill_table(const std::filesystem::path& path, const DrillTableOptions& options) {
    auto in = open_or_throw(path);
    return parse_drill_table(in, options);
}

std::vector<PushSample> parse_push_table(std::istream& in) {
    std::vector<PushSample> samples;
    for (const auto& row : read_table(in, {"d_mm", "alpha_deg", "f_h_max_n"}))
        samples.push_back({number_at(row, 0, "d_mm"), number_at(row, 1, "alpha_deg"), number_at(row, 2, "f_h_max_n")});
    return samples;
}

std::vector<PushSample> load_push_table(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return parse_push_table(in);
}

}  // namespace moledrill
