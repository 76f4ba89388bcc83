#include "ldecm/param_space.hpp"

#include <algorithm>
#include <cmath>

#include "ldecm/errors.hpp"
#include "ldecm/jsonio.hpp"

namespace ldecm {

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) {
        throw ConfigError(std::string("axis '") + name + "' is empty");
    }
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) {
            throw ConfigError(std::string("axis '") + name + "' is not strictly ascending");
        }
    }
}

}  // namespace

LutAxes default_axes(double capacity_ah) {
    LutAxes axes;
    for (int s = 0; s <= 100; s += 5) {
        axes.soc.push_back(static_cast<double>(s));
    }
    for (int t = 10; t <= 65; t += 5) {
        axes.temp.push_back(static_cast<double>(t));
    }
    for (int c = 8; c >= 1; --c) {
        axes.current.push_back(-static_cast<double>(c) * capacity_ah);
    }
    axes.current.push_back(-0.5 * capacity_ah);
    axes.current.push_back(-0.1 * capacity_ah);
    return axes;
}

ParamSet apply_aging(ParamSet p, const AgingAdjust& aging) {
    p.r0 *= aging.resistance_scale;
    p.r1 *= aging.resistance_scale;
    p.r2 *= aging.resistance_scale;
    p.theta_r *= aging.resistance_scale;
    p.theta_eta *= aging.resistance_scale;
    p.eta_th = std::max(0.0, p.eta_th - aging.eta_th_shift_v);
    return p;
}

ParamLut::ParamLut(LutAxes axes, ParamBounds bounds)
    : axes_(std::move(axes)), bounds_(bounds) {
    check_axis(axes_.soc, "soc");
    check_axis(axes_.temp, "temp");
    check_axis(axes_.current, "current");
    for (std::size_t p = 0; p < ParamSet::kCount; ++p) {
        tables_[p].assign(axes_.grid_size(),
                          0.5 * (bounds_.lower[p] + bounds_.upper[p]));
    }
}

TrilinearStencil ParamLut::stencil(double soc_pct, double temp_c, double current_a) const {
    const AxisLookup s = locate_on_axis(axes_.soc, soc_pct);
    const AxisLookup t = locate_on_axis(axes_.temp, temp_c);
    const AxisLookup c = locate_on_axis(axes_.current, current_a);

    TrilinearStencil out;
    const std::array<std::size_t, 2> si{s.lo, s.hi};
    const std::array<std::size_t, 2> ti{t.lo, t.hi};
    const std::array<std::size_t, 2> ci{c.lo, c.hi};
    const std::array<double, 2> sw{1.0 - s.w, s.w};
    const std::array<double, 2> tw{1.0 - t.w, t.w};
    const std::array<double, 2> cw{1.0 - c.w, c.w};
    std::size_t n = 0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int d = 0; d < 2; ++d) {
                out.index[n] = flat_index(si[a], ti[b], ci[d]);
                out.weight[n] = sw[a] * tw[b] * cw[d];
                ++n;
            }
        }
    }
    return out;
}

ParamSet ParamLut::gather(const TrilinearStencil& s) const {
    ParamSet p;
    for (std::size_t j = 0; j < ParamSet::kCount; ++j) {
        const std::vector<double>& tab = tables_[j];
        double acc = 0.0;
        for (std::size_t n = 0; n < 8; ++n) {
            acc += s.weight[n] * tab[s.index[n]];
        }
        p[j] = acc;
    }
    return p;
}

ParamSet ParamLut::at(double soc_pct, double temp_c, double current_a) const {
    return gather(stencil(soc_pct, temp_c, current_a));
}

void ParamLut::fill(std::size_t param, double value) {
    std::fill(tables_[param].begin(), tables_[param].end(), value);
}

ParamSet eval_lut(const ParamLut& lut, double soc_pct, double temp_c, double current_a,
                  const AgingAdjust& aging) {
    return apply_aging(lut.at(soc_pct, temp_c, current_a), aging);
}

SosParamFunc::SosParamFunc(LutAxes normalization_ranges,
                           std::array<Entry, ParamSet::kCount> entries)
    : ranges_(std::move(normalization_ranges)), entries_(std::move(entries)) {
    check_axis(ranges_.soc, "soc");
    check_axis(ranges_.temp, "temp");
    check_axis(ranges_.current, "current");
    for (std::size_t j = 0; j < ParamSet::kCount; ++j) {
        const Entry& e = entries_[j];
        const std::size_t m = monomial_count(e.degree);
        if (e.chol.size() != m * (m + 1) / 2) {
            throw ConfigError("sos entry for " + std::string(ParamSet::names[j]) +
                              ": factor size does not match degree");
        }
        if (e.rational) {
            const std::size_t md = monomial_count(e.degree_den);
            if (e.chol_den.size() != md * (md + 1) / 2) {
                throw ConfigError("sos entry for " + std::string(ParamSet::names[j]) +
                                  ": denominator factor size does not match degree");
            }
        }
    }
}

std::size_t SosParamFunc::monomial_count(int degree) {
    const std::size_t d = static_cast<std::size_t>(std::max(degree, 0));
    return (d + 1) * (d + 2) * (d + 3) / 6;
}

void SosParamFunc::monomials(double x, double y, double w, int degree,
                             std::vector<double>& z) {
    z.clear();
    for (int g = 0; g <= degree; ++g) {
        for (int a = g; a >= 0; --a) {
            for (int b = g - a; b >= 0; --b) {
                const int c = g - a - b;
                z.push_back(std::pow(x, a) * std::pow(y, b) * std::pow(w, c));
            }
        }
    }
}

namespace {

/// ||L^T z||^2 for a packed row-major lower-triangular L.
double quad_form(const std::vector<double>& chol, const std::vector<double>& z) {
    const std::size_t m = z.size();
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double col = 0.0;
        for (std::size_t i = j; i < m; ++i) {
            col += chol[i * (i + 1) / 2 + j] * z[i];
        }
        total += col * col;
    }
    return total;
}

double normalize_unit(double x, const std::vector<double>& range) {
    const double lo = range.front();
    const double hi = range.back();
    return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
}

}  // namespace

ParamSet SosParamFunc::at(double soc_pct, double temp_c, double current_a) const {
    const double x = normalize_unit(soc_pct, ranges_.soc);
    const double y = normalize_unit(temp_c, ranges_.temp);
    const double w = normalize_unit(current_a, ranges_.current);

    ParamSet p;
    std::vector<double> z;
    for (std::size_t j = 0; j < ParamSet::kCount; ++j) {
        const Entry& e = entries_[j];
        monomials(x, y, w, e.degree, z);
        double value = quad_form(e.chol, z);
        if (e.rational) {
            monomials(x, y, w, e.degree_den, z);
            value /= 1.0 + quad_form(e.chol_den, z);
        }
        p[j] = e.lower_bound + value;
    }
    return p;
}

double soft_constraint_penalty(std::span<const double> normalized_values) {
    // Sharp tanh gate centered on 1: ~0 below the bound, ~the raw value above.
    double total = 0.0;
    for (double v : normalized_values) {
        total += 0.5 * (1.0 + std::tanh((v - 1.0) / 1e-3)) * v;
    }
    return total;
}

std::array<DifferenceNorms, ParamSet::kCount> lut_difference_norms(const ParamLut& lut) {
    const LutAxes& ax = lut.axes();
    const std::size_t ns = ax.soc.size();
    const std::size_t nt = ax.temp.size();
    const std::size_t nc = ax.current.size();

    std::array<DifferenceNorms, ParamSet::kCount> out{};
    for (std::size_t p = 0; p < ParamSet::kCount; ++p) {
        const std::vector<double>& tab = lut.table(p);
        DifferenceNorms& n = out[p];
        auto v = [&](std::size_t i, std::size_t j, std::size_t k) {
            return tab[lut.flat_index(i, j, k)];
        };
        for (std::size_t i = 0; i < ns; ++i) {
            for (std::size_t j = 0; j < nt; ++j) {
                for (std::size_t k = 0; k < nc; ++k) {
                    if (i + 1 < ns) {
                        const double d = v(i + 1, j, k) - v(i, j, k);
                        n.d1_soc += d * d;
                    }
                    if (j + 1 < nt) {
                        const double d = v(i, j + 1, k) - v(i, j, k);
                        n.d1_temp += d * d;
                    }
                    if (i >= 1 && i + 1 < ns) {
                        const double d = v(i + 1, j, k) - 2.0 * v(i, j, k) + v(i - 1, j, k);
                        n.d2_soc += d * d;
                    }
                    if (j >= 1 && j + 1 < nt) {
                        const double d = v(i, j + 1, k) - 2.0 * v(i, j, k) + v(i, j - 1, k);
                        n.d2_temp += d * d;
                    }
                    if (k + 1 < nc) {
                        const double d = v(i, j, k + 1) - v(i, j, k);
                        n.d1_current += d * d;
                    }
                }
            }
        }
    }
    return out;
}

namespace {

constexpr int kParamFileVersion = 1;

json axes_to_json(const LutAxes& axes) {
    json j;
    j["order"] = {"soc", "temp", "current"};
    j["soc"] = axes.soc;
    j["temp"] = axes.temp;
    j["current"] = axes.current;
    return j;
}

LutAxes axes_from_json(const json& j, const std::string& what) {
    const auto order = require_field<std::vector<std::string>>(j, "order", what);
    const std::vector<std::string> expected{"soc", "temp", "current"};
    if (order != expected) {
        throw AxisMismatch(what + ": axis order must be [soc, temp, current]");
    }
    LutAxes axes;
    axes.soc = require_field<std::vector<double>>(j, "soc", what);
    axes.temp = require_field<std::vector<double>>(j, "temp", what);
    axes.current = require_field<std::vector<double>>(j, "current", what);
    return axes;
}

json units_json() {
    return json{{"soc", "percent"},      {"temp", "celsius"},
                {"current", "ampere"},   {"r0", "ohm"},
                {"r1", "ohm"},           {"r2", "ohm"},
                {"tau1", "second"},      {"tau2", "second"},
                {"theta_eta", "ohm/(volt*second)"},
                {"theta_r", "1/second"}, {"eta_th", "volt"}};
}

}  // namespace

void save_param_lut(const ParamLut& lut, const std::filesystem::path& path) {
    json j;
    j["version"] = kParamFileVersion;
    j["kind"] = "lut";
    j["axes"] = axes_to_json(lut.axes());
    j["units"] = units_json();
    j["bounds"]["lower"] = lut.bounds().lower;
    j["bounds"]["upper"] = lut.bounds().upper;
    json tables;
    for (std::size_t p = 0; p < ParamSet::kCount; ++p) {
        tables[std::string(ParamSet::names[p])] = lut.table(p);
    }
    j["tables"] = tables;
    save_json(j, path);
}

ParamLut load_param_lut(const std::filesystem::path& path) {
    const std::string what = path.string();
    const json j = load_json(path);
    require_version(j, kParamFileVersion, what);
    if (require_field<std::string>(j, "kind", what) != "lut") {
        throw ConfigError(what + ": expected kind 'lut'");
    }
    LutAxes axes = axes_from_json(require_field<json>(j, "axes", what), what);

    ParamBounds bounds;
    const json jb = require_field<json>(j, "bounds", what);
    const auto lower = require_field<std::vector<double>>(jb, "lower", what);
    const auto upper = require_field<std::vector<double>>(jb, "upper", what);
    if (lower.size() != ParamSet::kCount || upper.size() != ParamSet::kCount) {
        throw DataError(what + ": bounds must list all " +
                        std::to_string(ParamSet::kCount) + " parameters");
    }
    std::copy(lower.begin(), lower.end(), bounds.lower.begin());
    std::copy(upper.begin(), upper.end(), bounds.upper.begin());

    ParamLut lut(std::move(axes), bounds);
    const json tables = require_field<json>(j, "tables", what);
    for (std::size_t p = 0; p < ParamSet::kCount; ++p) {
        const std::string name(ParamSet::names[p]);
        auto values = require_field<std::vector<double>>(tables, name, what);
        if (values.size() != lut.axes().grid_size()) {
            throw DataError(what + ": table '" + name + "' has " +
                            std::to_string(values.size()) + " entries, expected " +
                            std::to_string(lut.axes().grid_size()));
        }
        lut.table(p) = std::move(values);
    }
    return lut;
}

void save_sos_params(const SosParamFunc& func, const std::filesystem::path& path) {
    json j;
    j["version"] = kParamFileVersion;
    j["kind"] = "sos";
    j["ranges"]["soc"] = func.ranges().soc;
    j["ranges"]["temp"] = func.ranges().temp;
    j["ranges"]["current"] = func.ranges().current;
    json entries = json::array();
    for (std::size_t p = 0; p < ParamSet::kCount; ++p) {
        const SosParamFunc::Entry& e = func.entries()[p];
        json je;
        je["param"] = std::string(ParamSet::names[p]);
        je["degree"] = e.degree;
        je["chol"] = e.chol;
        je["lower_bound"] = e.lower_bound;
        je["rational"] = e.rational;
        if (e.rational) {
            je["degree_den"] = e.degree_den;
            je["chol_den"] = e.chol_den;
        }
        entries.push_back(je);
    }
    j["entries"] = entries;
    save_json(j, path);
}

SosParamFunc load_sos_params(const std::filesystem::path& path) {
    const std::string what = path.string();
    const json j = load_json(path);
    require_version(j, kParamFileVersion, what);
    if (require_field<std::string>(j, "kind", what) != "sos") {
        throw ConfigError(what + ": expected kind 'sos'");
    }
    const json jr = require_field<json>(j, "ranges", what);
    LutAxes ranges;
    ranges.soc = require_field<std::vector<double>>(jr, "soc", what);
    ranges.temp = require_field<std::vector<double>>(jr, "temp", what);
    ranges.current = require_field<std::vector<double>>(jr, "current", what);

    const json entries = require_field<json>(j, "entries", what);
    if (!entries.is_array() || entries.size() != ParamSet::kCount) {
        throw DataError(what + ": entries must list all " +
                        std::to_string(ParamSet::kCount) + " parameters");
    }
    std::array<SosParamFunc::Entry, ParamSet::kCount> parsed;
    for (const json& je : entries) {
        const std::string name = require_field<std::string>(je, "param", what);
        const auto* it = std::find(ParamSet::names.begin(), ParamSet::names.end(), name);
        if (it == ParamSet::names.end()) {
            throw DataError(what + ": unknown parameter '" + name + "'");
        }
        const std::size_t p = static_cast<std::size_t>(it - ParamSet::names.begin());
        SosParamFunc::Entry e;
        e.degree = require_field<int>(je, "degree", what);
        e.chol = require_field<std::vector<double>>(je, "chol", what);
        e.lower_bound = require_field<double>(je, "lower_bound", what);
        e.rational = je.value("rational", false);
        if (e.rational) {
            e.degree_den = require_field<int>(je, "degree_den", what);
            e.chol_den = require_field<std::vector<double>>(je, "chol_den", what);
        }
        parsed[p] = std::move(e);
    }
    return SosParamFunc(std::move(ranges), std::move(parsed));
}

LoadedParams load_params_any(const std::filesystem::path& path) {
    const json j = load_json(path);
    const std::string kind = require_field<std::string>(j, "kind", path.string());
    LoadedParams out;
    if (kind == "lut") {
        out.lut = load_param_lut(path);
        out.source = std::make_unique<ParamLut>(out.lut);
        out.is_lut = true;
    } else if (kind == "sos") {
        out.source = std::make_unique<SosParamFunc>(load_sos_params(path));
    } else {
        throw ConfigError(path.string() + ": unknown parameter kind '" + kind + "'");
    }
    return out;
}

}  // namespace ldecm
