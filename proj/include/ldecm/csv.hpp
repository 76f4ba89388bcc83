#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ldecm/ecm.hpp"

namespace ldecm {

/// Fixed-notation rendering with a pinned decimal count; -0 collapses to 0 so
/// regenerated artifacts stay byte-stable.
std::string format_fixed(double x, int decimals);

/// Generic comma-separated table; cells are raw strings, no quoting layer.
struct CsvFile {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvFile read_csv(const std::filesystem::path& path);
void write_csv(const CsvFile& file, const std::filesystem::path& path);

/// Index of a named column; raises DataError when absent.
std::size_t column_index(const CsvFile& file, const std::string& name);

/// Numeric view of one column; empty cells become NaN.
std::vector<double> column_as_double(const CsvFile& file, std::size_t index);

double parse_double(const std::string& cell, const std::string& context);

/// Current/temperature drive profile: header `time_s,current_a,temp_c`.
void write_profile_csv(std::span<const ProfileSample> profile,
                       const std::filesystem::path& path);
std::vector<ProfileSample> read_profile_csv(const std::filesystem::path& path);

/// Simulation rollout: header `time_s,soc_pct,v1_v,v2_v,r_ld_ohm,v_t_v,term_reason`;
/// the reason cell is filled on the final row only.
void write_sim_csv(const SimResult& sim, const std::filesystem::path& path);

/// Power demand profile: header `time_s,power_w`.
void write_power_csv(std::span<const double> power_w, double dt_s,
                     const std::filesystem::path& path);
std::vector<double> read_power_csv(const std::filesystem::path& path, double& dt_s_out);

}  // namespace ldecm
