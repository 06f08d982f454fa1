#pragma once

// CSV and JSON encodings of the comparison and oscillation records.

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "common.hpp"
#include "theorem.hpp"

namespace friabilis {

inline constexpr const char* regime_csv_header =
    "log_x,c,y,u,alpha,log_psi_exact,log_x_rho,measured_gap,predicted_gap,regime";
inline constexpr const char* oscillation_csv_header = "y,alpha,S,I,diff,normalizer,normalized_diff";

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double parse_real(const std::string& s)
{
    if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) fail_domain("csv: bad real '", s, "'");
    return v;
}

inline void expect_header(std::istream& is, const char* header)
{
    std::string line;
    if (!std::getline(is, line) || line != header) fail_domain("csv: expected header '", header, "'");
}

inline double json_real(const nlohmann::json& j, const char* key)
{
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace detail

inline void write_regime_csv(std::ostream& os, const std::vector<RegimeRecord>& rows)
{
    os << regime_csv_header << '\n';
    for (const auto& r : rows) {
        for (double v : {r.log_x, r.c, r.y, r.u, r.alpha, r.log_psi_exact, r.log_x_rho, r.measured_gap,
                         r.predicted_gap})
            os << format_real(v) << ',';
        os << to_string(r.regime) << '\n';
    }
}

inline std::vector<RegimeRecord> read_regime_csv(std::istream& is)
{
    detail::expect_header(is, regime_csv_header);
    std::vector<RegimeRecord> rows;
    for (std::string line; std::getline(is, line);) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 10) fail_domain("regime csv: expected 10 fields, got ", static_cast<int>(cells.size()));
        RegimeRecord r;
        double* fields[] = {&r.log_x, &r.c, &r.y, &r.u, &r.alpha, &r.log_psi_exact, &r.log_x_rho,
                            &r.measured_gap, &r.predicted_gap};
        for (std::size_t i = 0; i < 9; ++i) *fields[i] = detail::parse_real(cells[i]);
        const auto regime = regime_from_string(cells[9]);
        if (!regime) fail_domain("regime csv: unknown regime '", cells[9], "'");
        r.regime = *regime;
        r.alpha_condition_unmet = r.regime == Regime::c_in_1_2 && !(r.alpha < 0.5);
        rows.push_back(r);
    }
    return rows;
}

inline void write_oscillation_csv(std::ostream& os, const std::vector<OscillationRecord>& rows)
{
    os << oscillation_csv_header << '\n';
    for (const auto& r : rows) {
        os << format_real(r.y) << ',' << format_real(r.alpha) << ',' << format_real(r.s_sum) << ','
           << format_real(r.i_term) << ',' << format_real(r.diff) << ',' << format_real(r.normalizer) << ','
           << format_real(r.normalized_diff) << '\n';
    }
}

inline std::vector<OscillationRecord> read_oscillation_csv(std::istream& is)
{
    detail::expect_header(is, oscillation_csv_header);
    std::vector<OscillationRecord> rows;
    for (std::string line; std::getline(is, line);) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != 7) fail_domain("oscillation csv: expected 7 fields");
        OscillationRecord r;
        double* fields[] = {&r.y, &r.alpha, &r.s_sum, &r.i_term, &r.diff, &r.normalizer, &r.normalized_diff};
        for (std::size_t i = 0; i < 7; ++i) *fields[i] = detail::parse_real(cells[i]);
        rows.push_back(r);
    }
    return rows;
}

inline void to_json(nlohmann::json& j, const RegimeRecord& r)
{
    j = nlohmann::json{{"log_x", r.log_x},
                       {"c", r.c},
                       {"y", r.y},
                       {"u", r.u},
                       {"alpha", r.alpha},
                       {"log_psi_exact", r.log_psi_exact},
                       {"log_x_rho", r.log_x_rho},
                       {"measured_gap", r.measured_gap},
                       {"predicted_gap", std::isnan(r.predicted_gap) ? nlohmann::json(nullptr)
                                                                      : nlohmann::json(r.predicted_gap)},
                       {"regime", to_string(r.regime)},
                       {"alpha_condition_unmet", r.alpha_condition_unmet}};
}

inline void from_json(const nlohmann::json& j, RegimeRecord& r)
{
    r.log_x = detail::json_real(j, "log_x");
    r.c = detail::json_real(j, "c");
    r.y = detail::json_real(j, "y");
    r.u = detail::json_real(j, "u");
    r.alpha = detail::json_real(j, "alpha");
    r.log_psi_exact = detail::json_real(j, "log_psi_exact");
    r.log_x_rho = detail::json_real(j, "log_x_rho");
    r.measured_gap = detail::json_real(j, "measured_gap");
    r.predicted_gap = detail::json_real(j, "predicted_gap");
    const auto regime = regime_from_string(j.at("regime").get<std::string>());
    if (!regime) fail_domain("regime json: unknown regime");
    r.regime = *regime;
    r.alpha_condition_unmet = j.at("alpha_condition_unmet").get<bool>();
}

inline void to_json(nlohmann::json& j, const OscillationRecord& r)
{
    j = nlohmann::json{{"y", r.y},       {"alpha", r.alpha},           {"S", r.s_sum},
                       {"I", r.i_term},  {"diff", r.diff},             {"normalizer", r.normalizer},
                       {"normalized_diff", r.normalized_diff}};
}

inline void from_json(const nlohmann::json& j, OscillationRecord& r)
{
    r.y = detail::json_real(j, "y");
    r.alpha = detail::json_real(j, "alpha");
    r.s_sum = detail::json_real(j, "S");
    r.i_term = detail::json_real(j, "I");
    r.diff = detail::json_real(j, "diff");
    r.normalizer = detail::json_real(j, "normalizer");
    r.normalized_diff = detail::json_real(j, "normalized_diff");
}

}  // namespace friabilis
