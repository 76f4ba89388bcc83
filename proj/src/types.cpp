#include "ldecm/types.hpp"

#include <algorithm>
#include <cmath>

#include "ldecm/errors.hpp"

namespace ldecm {

AxisLookup locate_on_axis(std::span<const double> axis, double x) {
    AxisLookup r;
    const std::size_t n = axis.size();
    if (n == 0) {
        return r;
    }
    if (x <= axis.front() || n == 1) {
        r.lo = r.hi = 0;
        r.w = 0.0;
        return r;
    }
    if (x >= axis.back()) {
        r.lo = r.hi = n - 1;
        r.w = 0.0;
        return r;
    }
    const auto it = std::upper_bound(axis.begin(), axis.end(), x);
    r.hi = static_cast<std::size_t>(it - axis.begin());
    r.lo = r.hi - 1;
    r.w = (x - axis[r.lo]) / (axis[r.hi] - axis[r.lo]);
    return r;
}

OcvTable::OcvTable(std::vector<double> soc_axis, std::vector<double> temp_axis,
                   std::vector<double> values)
    : soc_(std::move(soc_axis)), temp_(std::move(temp_axis)), values_(std::move(values)) {
    if (soc_.size() < 2 || temp_.empty()) {
        throw ConfigError("OcvTable: need at least 2 SOC nodes and 1 temperature node");
    }
    if (values_.size() != soc_.size() * temp_.size()) {
        throw ConfigError("OcvTable: value count does not match axis sizes");
    }
    if (!std::is_sorted(soc_.begin(), soc_.end()) ||
        !std::is_sorted(temp_.begin(), temp_.end())) {
        throw ConfigError("OcvTable: axes must be ascending");
    }
    for (std::size_t j = 0; j < temp_.size(); ++j) {
        for (std::size_t i = 0; i + 1 < soc_.size(); ++i) {
            if (values_[i * temp_.size() + j] >= values_[(i + 1) * temp_.size() + j]) {
                throw ConfigError("OcvTable: values must strictly increase along SOC");
            }
        }
    }
}

double OcvTable::at(double soc_pct, double temp_c) const {
    const AxisLookup si = locate_on_axis(soc_, soc_pct);
    const AxisLookup tj = locate_on_axis(temp_, temp_c);
    const std::size_t nt = temp_.size();
    const double v00 = values_[si.lo * nt + tj.lo];
    const double v01 = values_[si.lo * nt + tj.hi];
    const double v10 = values_[si.hi * nt + tj.lo];
    const double v11 = values_[si.hi * nt + tj.hi];
    const double v0 = v00 * (1.0 - tj.w) + v01 * tj.w;
    const double v1 = v10 * (1.0 - tj.w) + v11 * tj.w;
    return v0 * (1.0 - si.w) + v1 * si.w;
}

double OcvTable::soc_for_ocv(double ocv_v, double temp_c) const {
    double lo = soc_.front();
    double hi = soc_.back();
    if (ocv_v <= at(lo, temp_c)) {
        return lo;
    }
    if (ocv_v >= at(hi, temp_c)) {
        return hi;
    }
    for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (at(mid, temp_c) < ocv_v) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ldecm
