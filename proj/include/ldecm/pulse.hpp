#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ldecm/param_space.hpp"
#include "ldecm/types.hpp"

namespace ldecm {

enum class Protocol { ccp, fd, mpp, flight };

std::string_view to_string(Protocol p);
Protocol protocol_from_string(std::string_view s);

/// One recorded discharge: uniformly sampled signals plus protocol metadata.
/// r_ohm samples are sparse; their indices point into the signal arrays.
struct PulseRecord {
    Protocol protocol = Protocol::ccp;
    std::string id;
    double dt_s = 1.0;

    std::vector<double> time_s;
    std::vector<double> current_a;
    std::vector<double> temp_c;
    std::vector<double> v_meas_v;
    std::vector<std::uint8_t> interrupt;  ///< 1 inside an interrupt window

    std::vector<std::size_t> r_ohm_idx;
    std::vector<double> r_ohm_ohm;

    double initial_soc_pct = 100.0;
    double setpoint_v = 0.0;       ///< OCV setpoint the pulse started from (CCP)
    double nominal_temp_c = 25.0;  ///< chamber setpoint
    double c_rate = 0.0;           ///< signed multiple of Q; 0 for power-driven runs
    std::string c_rate_label;
    AgingAdjust aging;             ///< data-epoch adjustment
    std::string term_reason;

    // Flight-only metadata.
    std::string variant;
    int hops = 0;
    double hover_power_w = 0.0;
    double bor_time_s = -1.0;
    double true_reserve_s = -1.0;
    std::string reserve_limit;

    [[nodiscard]] std::size_t size() const { return time_s.size(); }
};

/// Signal columns: `time_s,current_a,temp_c,v_meas_v,interrupt,r_ohm_meas_ohm`
/// (the last cell is empty except at measurement rows).
void write_pulse_csv(const PulseRecord& pulse, const std::filesystem::path& path);
/// Reads the signal columns; metadata comes from the dataset manifest.
PulseRecord read_pulse_csv(const std::filesystem::path& path);

/// Dataset directory: one CSV per pulse plus manifest.json carrying metadata,
/// the generating seed, and the config hash.
struct DatasetManifest {
    std::uint64_t seed = 0;
    std::string config_hash;
    double capacity_ah = 25.0;
};

void save_dataset(const std::vector<PulseRecord>& pulses, const DatasetManifest& manifest,
                  const std::filesystem::path& dir);
std::vector<PulseRecord> load_dataset(const std::filesystem::path& dir,
                                      DatasetManifest* manifest_out = nullptr);

}  // namespace ldecm
