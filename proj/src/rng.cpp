#include "ldecm/rng.hpp"

#include <cmath>

namespace ldecm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name) {
    std::uint64_t h = splitmix64(master);
    for (unsigned char c : stream_name) {
        h = splitmix64(h ^ c);
    }
    return h;
}

double GaussianRng::uniform01() {
    // 53-bit mantissa draw in [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::normal(double mean, double sigma) {
    if (has_cached_) {
        has_cached_ = false;
        return mean + sigma * cached_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return mean + sigma * u * f;
}

}  // namespace ldecm
