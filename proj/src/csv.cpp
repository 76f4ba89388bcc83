#include "ldecm/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ldecm/errors.hpp"

namespace ldecm {

std::string format_fixed(double x, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
    std::string s(buf);
    if (!s.empty() && s[0] == '-' &&
        s.find_first_not_of("0.", 1) == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

CsvFile read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open " + path.string());
    }
    CsvFile file;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        if (first) {
            file.header = std::move(cells);
            first = false;
        } else {
            file.rows.push_back(std::move(cells));
        }
    }
    if (first) {
        throw DataError(path.string() + ": empty file");
    }
    return file;
}

void write_csv(const CsvFile& file, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write " + path.string());
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out << ',';
            }
            out << cells[i];
        }
        out << '\n';
    };
    emit(file.header);
    for (const auto& row : file.rows) {
        emit(row);
    }
}

std::size_t column_index(const CsvFile& file, const std::string& name) {
    for (std::size_t i = 0; i < file.header.size(); ++i) {
        if (file.header[i] == name) {
            return i;
        }
    }
    throw DataError("missing column '" + name + "'");
}

std::vector<double> column_as_double(const CsvFile& file, std::size_t index) {
    std::vector<double> out;
    out.reserve(file.rows.size());
    for (const auto& row : file.rows) {
        if (index >= row.size() || row[index].empty()) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            out.push_back(parse_double(row[index], "column " + std::to_string(index)));
        }
    }
    return out;
}

double parse_double(const std::string& cell, const std::string& context) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size()) {
            throw DataError(context + ": trailing characters in '" + cell + "'");
        }
        return v;
    } catch (const std::invalid_argument&) {
        throw DataError(context + ": not a number: '" + cell + "'");
    } catch (const std::out_of_range&) {
        throw DataError(context + ": out of range: '" + cell + "'");
    }
}

void write_profile_csv(std::span<const ProfileSample> profile,
                       const std::filesystem::path& path) {
    CsvFile file;
    file.header = {"time_s", "current_a", "temp_c"};
    file.rows.reserve(profile.size());
    for (const ProfileSample& s : profile) {
        file.rows.push_back(
            {format_fixed(s.t, 3), format_fixed(s.current_a, 6), format_fixed(s.temp_c, 6)});
    }
    write_csv(file, path);
}

std::vector<ProfileSample> read_profile_csv(const std::filesystem::path& path) {
    const CsvFile file = read_csv(path);
    const std::size_t it = column_index(file, "time_s");
    const std::size_t ic = column_index(file, "current_a");
    const std::size_t itc = column_index(file, "temp_c");
    std::vector<ProfileSample> out;
    out.reserve(file.rows.size());
    const std::string ctx = path.string();
    for (const auto& row : file.rows) {
        ProfileSample s;
        s.t = parse_double(row.at(it), ctx);
        s.current_a = parse_double(row.at(ic), ctx);
        s.temp_c = parse_double(row.at(itc), ctx);
        out.push_back(s);
    }
    return out;
}

void write_sim_csv(const SimResult& sim, const std::filesystem::path& path) {
    CsvFile file;
    file.header = {"time_s", "soc_pct", "v1_v", "v2_v", "r_ld_ohm", "v_t_v", "term_reason"};
    file.rows.reserve(sim.samples.size());
    for (std::size_t k = 0; k < sim.samples.size(); ++k) {
        const SimSample& s = sim.samples[k];
        const bool last = (k + 1 == sim.samples.size());
        file.rows.push_back({format_fixed(s.t, 3), format_fixed(s.state.soc, 9),
                             format_fixed(s.state.v1, 9), format_fixed(s.state.v2, 9),
                             format_fixed(s.state.r_ld, 9), format_fixed(s.v_t, 9),
                             last ? std::string(to_string(sim.reason)) : std::string()});
    }
    write_csv(file, path);
}

void write_power_csv(std::span<const double> power_w, double dt_s,
                     const std::filesystem::path& path) {
    CsvFile file;
    file.header = {"time_s", "power_w"};
    file.rows.reserve(power_w.size());
    for (std::size_t k = 0; k < power_w.size(); ++k) {
        file.rows.push_back(
            {format_fixed(dt_s * static_cast<double>(k), 3), format_fixed(power_w[k], 6)});
    }
    write_csv(file, path);
}

std::vector<double> read_power_csv(const std::filesystem::path& path, double& dt_s_out) {
    const CsvFile file = read_csv(path);
    const std::size_t it = column_index(file, "time_s");
    const std::size_t ip = column_index(file, "power_w");
    std::vector<double> power;
    power.reserve(file.rows.size());
    std::vector<double> times;
    times.reserve(file.rows.size());
    const std::string ctx = path.string();
    for (const auto& row : file.rows) {
        times.push_back(parse_double(row.at(it), ctx));
        power.push_back(parse_double(row.at(ip), ctx));
    }
    dt_s_out = times.size() >= 2 ? times[1] - times[0] : 1.0;
    if (dt_s_out <= 0.0) {
        throw DataError(ctx + ": time axis is not ascending");
    }
    return power;
}

}  // namespace ldecm
