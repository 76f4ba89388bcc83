#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ldecm {

/// Dynamic cell state. soc in percent [0, 100], v1/v2 in volts across the two
/// RC pairs, r_ld the depletion series resistance in ohms (never negative).
struct CellState {
    double soc = 100.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double r_ld = 0.0;
};

/// The eight operating-point parameters. Resistances in ohms, time constants in
/// seconds, theta_eta in ohm/(volt*s), theta_r in 1/s, eta_th in volts.
struct ParamSet {
    double r0 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double tau1 = 3.0;
    double tau2 = 60.0;
    double theta_eta = 0.0;
    double theta_r = 0.0;
    double eta_th = 1.0;

    static constexpr std::size_t kCount = 8;
    static constexpr std::array<std::string_view, kCount> names = {
        "r0", "r1", "r2", "tau1", "tau2", "theta_eta", "theta_r", "eta_th"};

    double& operator[](std::size_t i) { return (&r0)[i]; }
    double operator[](std::size_t i) const { return (&r0)[i]; }
};

/// Per-parameter index constants, used wherever parameters are addressed by slot.
enum ParamIndex : std::size_t {
    kR0 = 0,
    kR1 = 1,
    kR2 = 2,
    kTau1 = 3,
    kTau2 = 4,
    kThetaEta = 5,
    kThetaR = 6,
    kEtaTh = 7,
};

/// Fixed model constants that are not part of the identified parameter space.
struct ModelConfig {
    double capacity_ah = 25.0;      ///< cell capacity Q [Ah]
    double delta_eta_v = 0.004;     ///< sigmoid transition width [V]
    double tau_ld_s = 50.0;         ///< depletion-resistance relaxation constant [s]
    double v_min = 2.75;            ///< lower voltage limit [V]
    double t_max_c = 65.0;          ///< upper temperature limit [degC]
    double dt_s = 1.0;              ///< integration step [s]
    double max_discharge_a = 0.0;   ///< power-mode current bracket magnitude; 0 -> 12*Q

    [[nodiscard]] double discharge_bracket_a() const {
        return max_discharge_a > 0.0 ? max_discharge_a : 12.0 * capacity_ah;
    }
};

/// Result of locating a query on an ascending axis: segment endpoints and the
/// interpolation weight toward the upper endpoint. Out-of-range queries clamp.
struct AxisLookup {
    std::size_t lo = 0;
    std::size_t hi = 0;
    double w = 0.0;
};

AxisLookup locate_on_axis(std::span<const double> axis, double x);

/// Open-circuit voltage vs (SOC, temperature) with bilinear interpolation inside
/// the grid and clamped evaluation outside. Values must be strictly increasing
/// along SOC at every temperature node.
class OcvTable {
public:
    OcvTable() = default;
    OcvTable(std::vector<double> soc_axis, std::vector<double> temp_axis,
             std::vector<double> values);

    [[nodiscard]] double at(double soc_pct, double temp_c) const;

    /// Inverts the monotone SOC axis at fixed temperature; out-of-range voltages
    /// clamp to the endpoints.
    [[nodiscard]] double soc_for_ocv(double ocv_v, double temp_c) const;

    [[nodiscard]] const std::vector<double>& soc_axis() const { return soc_; }
    [[nodiscard]] const std::vector<double>& temp_axis() const { return temp_; }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> soc_;
    std::vector<double> temp_;
    std::vector<double> values_;  // [i_soc * temp_.size() + j_temp]
};

}  // namespace ldecm
