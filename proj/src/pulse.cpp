#include "ldecm/pulse.hpp"

#include <algorithm>
#include <cmath>

#include "ldecm/csv.hpp"
#include "ldecm/errors.hpp"
#include "ldecm/jsonio.hpp"

namespace ldecm {

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::ccp: return "ccp";
        case Protocol::fd: return "fd";
        case Protocol::mpp: return "mpp";
        case Protocol::flight: return "flight";
    }
    return "unknown";
}

Protocol protocol_from_string(std::string_view s) {
    if (s == "ccp") return Protocol::ccp;
    if (s == "fd") return Protocol::fd;
    if (s == "mpp") return Protocol::mpp;
    if (s == "flight") return Protocol::flight;
    throw DataError("unknown protocol '" + std::string(s) + "'");
}

void write_pulse_csv(const PulseRecord& pulse, const std::filesystem::path& path) {
    CsvFile file;
    file.header = {"time_s", "current_a", "temp_c", "v_meas_v", "interrupt",
                   "r_ohm_meas_ohm"};
    file.rows.reserve(pulse.size());
    std::vector<std::string> r_ohm_cells(pulse.size());
    for (std::size_t j = 0; j < pulse.r_ohm_idx.size(); ++j) {
        r_ohm_cells.at(pulse.r_ohm_idx[j]) = format_fixed(pulse.r_ohm_ohm[j], 9);
    }
    for (std::size_t k = 0; k < pulse.size(); ++k) {
        file.rows.push_back({format_fixed(pulse.time_s[k], 3),
                             format_fixed(pulse.current_a[k], 6),
                             format_fixed(pulse.temp_c[k], 6),
                             format_fixed(pulse.v_meas_v[k], 9),
                             pulse.interrupt.empty() ? "0"
                                                     : std::to_string(int(pulse.interrupt[k])),
                             r_ohm_cells[k]});
    }
    write_csv(file, path);
}

PulseRecord read_pulse_csv(const std::filesystem::path& path) {
    const CsvFile file = read_csv(path);
    const std::string ctx = path.string();
    const std::size_t it = column_index(file, "time_s");
    const std::size_t ic = column_index(file, "current_a");
    const std::size_t itc = column_index(file, "temp_c");
    const std::size_t iv = column_index(file, "v_meas_v");
    const std::size_t ii = column_index(file, "interrupt");
    const std::size_t ir = column_index(file, "r_ohm_meas_ohm");

    PulseRecord pulse;
    pulse.id = path.stem().string();
    const std::size_t n = file.rows.size();
    pulse.time_s.reserve(n);
    pulse.current_a.reserve(n);
    pulse.temp_c.reserve(n);
    pulse.v_meas_v.reserve(n);
    pulse.interrupt.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& row = file.rows[k];
        pulse.time_s.push_back(parse_double(row.at(it), ctx));
        pulse.current_a.push_back(parse_double(row.at(ic), ctx));
        pulse.temp_c.push_back(parse_double(row.at(itc), ctx));
        pulse.v_meas_v.push_back(parse_double(row.at(iv), ctx));
        pulse.interrupt.push_back(row.at(ii) == "1" ? 1 : 0);
        if (ir < row.size() && !row[ir].empty()) {
            pulse.r_ohm_idx.push_back(k);
            pulse.r_ohm_ohm.push_back(parse_double(row[ir], ctx));
        }
    }
    if (pulse.time_s.size() >= 2) {
        pulse.dt_s = pulse.time_s[1] - pulse.time_s[0];
    }
    return pulse;
}

namespace {

json pulse_meta_to_json(const PulseRecord& p) {
    json j;
    j["file"] = p.id + ".csv";
    j["id"] = p.id;
    j["protocol"] = std::string(to_string(p.protocol));
    j["dt_s"] = p.dt_s;
    j["initial_soc_pct"] = p.initial_soc_pct;
    j["setpoint_v"] = p.setpoint_v;
    j["nominal_temp_c"] = p.nominal_temp_c;
    j["c_rate"] = p.c_rate;
    j["c_rate_label"] = p.c_rate_label;
    j["aging"] = {{"resistance_scale", p.aging.resistance_scale},
                  {"eta_th_shift_v", p.aging.eta_th_shift_v}};
    j["term_reason"] = p.term_reason;
    if (p.protocol == Protocol::flight) {
        j["variant"] = p.variant;
        j["hops"] = p.hops;
        j["hover_power_w"] = p.hover_power_w;
        j["bor_time_s"] = p.bor_time_s;
        j["true_reserve_s"] = p.true_reserve_s;
        j["reserve_limit"] = p.reserve_limit;
    }
    return j;
}

void pulse_meta_from_json(const json& j, PulseRecord& p, const std::string& what) {
    p.protocol = protocol_from_string(require_field<std::string>(j, "protocol", what));
    p.dt_s = require_field<double>(j, "dt_s", what);
    p.initial_soc_pct = require_field<double>(j, "initial_soc_pct", what);
    p.setpoint_v = j.value("setpoint_v", 0.0);
    p.nominal_temp_c = j.value("nominal_temp_c", 25.0);
    p.c_rate = j.value("c_rate", 0.0);
    p.c_rate_label = j.value("c_rate_label", std::string());
    if (j.contains("aging")) {
        p.aging.resistance_scale = j["aging"].value("resistance_scale", 1.0);
        p.aging.eta_th_shift_v = j["aging"].value("eta_th_shift_v", 0.0);
    }
    p.term_reason = j.value("term_reason", std::string());
    p.variant = j.value("variant", std::string());
    p.hops = j.value("hops", 0);
    p.hover_power_w = j.value("hover_power_w", 0.0);
    p.bor_time_s = j.value("bor_time_s", -1.0);
    p.true_reserve_s = j.value("true_reserve_s", -1.0);
    p.reserve_limit = j.value("reserve_limit", std::string());
}

}  // namespace

void save_dataset(const std::vector<PulseRecord>& pulses, const DatasetManifest& manifest,
                  const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    json j;
    j["version"] = 1;
    j["kind"] = "dataset";
    j["seed"] = manifest.seed;
    j["config_hash"] = manifest.config_hash;
    j["capacity_ah"] = manifest.capacity_ah;
    json entries = json::array();
    for (const PulseRecord& p : pulses) {
        write_pulse_csv(p, dir / (p.id + ".csv"));
        entries.push_back(pulse_meta_to_json(p));
    }
    j["pulses"] = entries;
    save_json(j, dir / "manifest.json");
}

std::vector<PulseRecord> load_dataset(const std::filesystem::path& dir,
                                      DatasetManifest* manifest_out) {
    const std::filesystem::path mpath = dir / "manifest.json";
    const json j = load_json(mpath);
    require_version(j, 1, mpath.string());
    if (require_field<std::string>(j, "kind", mpath.string()) != "dataset") {
        throw DataError(mpath.string() + ": expected kind 'dataset'");
    }
    if (manifest_out != nullptr) {
        manifest_out->seed = require_field<std::uint64_t>(j, "seed", mpath.string());
        manifest_out->config_hash = j.value("config_hash", std::string());
        manifest_out->capacity_ah = require_field<double>(j, "capacity_ah", mpath.string());
    }
    std::vector<PulseRecord> pulses;
    for (const json& je : require_field<json>(j, "pulses", mpath.string())) {
        const std::string file = require_field<std::string>(je, "file", mpath.string());
        PulseRecord p = read_pulse_csv(dir / file);
        pulse_meta_from_json(je, p, mpath.string());
        p.id = require_field<std::string>(je, "id", mpath.string());
        pulses.push_back(std::move(p));
    }
    return pulses;
}

}  // namespace ldecm
