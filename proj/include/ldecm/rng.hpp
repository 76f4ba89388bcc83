#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ldecm {

/// Derives a named sub-stream seed from one master seed. All randomness in the
/// pipeline flows through this so that a single seed pins every artifact.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name);

/// Deterministic Gaussian sampler. std::normal_distribution's sequence is
/// implementation defined, so the polar Box-Muller transform is done by hand.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01();
    double normal(double mean = 0.0, double sigma = 1.0);

private:
    std::mt19937_64 engine_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace ldecm
