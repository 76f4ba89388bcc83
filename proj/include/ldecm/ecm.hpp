#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "ldecm/types.hpp"

namespace ldecm {

/// Anything that can map an operating point (SOC, T, I) to a parameter set.
class ParamSource {
public:
    virtual ~ParamSource() = default;
    [[nodiscard]] virtual ParamSet at(double soc_pct, double temp_c, double current_a) const = 0;
};

/// Operating-point independent parameters, for reduced-model tests and fixtures.
class FixedParams final : public ParamSource {
public:
    FixedParams() = default;
    explicit FixedParams(ParamSet p) : params_(p) {}
    [[nodiscard]] ParamSet at(double, double, double) const override { return params_; }

private:
    ParamSet params_;
};

/// Depletion trigger: 0.5*[1 + tanh((-(v1+v2) - eta_th)/delta_eta)].
double trigger_sigma(double v1, double v2, double eta_th, double delta_eta);

/// Right-hand side of the four-state ODE, returned as per-second rates.
CellState state_derivative(const CellState& state, const ParamSet& params, double current_a,
                           const ModelConfig& config);

/// Terminal voltage OCV + v1 + v2 + I*(r0 + r_ld).
double terminal_voltage(const CellState& state, const ParamSet& params, double current_a,
                        double temp_c, const OcvTable& ocv);

/// One forward-Euler step with parameters evaluated at the pre-step operating
/// point; r_ld is clamped at zero after the step.
CellState step_euler(const CellState& state, double current_a, const ParamSet& params,
                     const ModelConfig& config);

enum class TermReason {
    completed,         ///< profile ran to its end
    voltage_limit,     ///< terminal voltage fell below v_min
    temperature_limit, ///< cell temperature exceeded t_max
    soc_limit,         ///< state of charge left [0, 100]
    nonfinite_state,   ///< a state became NaN/inf (parameter blow-up)
    power_infeasible,  ///< requested power exceeds peak deliverable power
};

std::string_view to_string(TermReason r);

struct ProfileSample {
    double t = 0.0;
    double current_a = 0.0;
    double temp_c = 25.0;
};

struct SimSample {
    double t = 0.0;
    CellState state;
    double current_a = 0.0;
    double temp_c = 0.0;
    double v_t = 0.0;
};

struct SimResult {
    std::vector<SimSample> samples;
    TermReason reason = TermReason::completed;
    std::size_t term_index = 0;

    [[nodiscard]] const SimSample& back() const { return samples.back(); }
};

/// Recursive Euler rollout over a uniformly sampled (t, I, T) profile.
/// Limits are checked at each recorded sample, voltage before temperature.
SimResult simulate_current_mode(const CellState& initial, std::span<const ProfileSample> profile,
                                const ParamSource& params, const ModelConfig& config,
                                const OcvTable& ocv);

/// Lumped thermal stand-in: dT/dt = (heat + h*(T_cool - T)) / (m*cp).
struct ThermalModel {
    double heat_capacity_j_per_k = 950.0;  ///< m*cp
    double h_w_per_k = 1.4;                ///< coolant film conductance
    double coolant_temp_c = 25.0;

    [[nodiscard]] double step(double temp_c, double heat_w, double dt_s) const {
        return temp_c + dt_s * (heat_w + h_w_per_k * (coolant_temp_c - temp_c)) / heat_capacity_j_per_k;
    }
};

/// Temperature driven by the lumped model from a start value (as opposed to a
/// replayed measurement sequence).
struct ThermalSim {
    ThermalModel model;
    double initial_temp_c = 25.0;
};

using TempSource = std::variant<std::span<const double>, ThermalSim>;

/// Finds the discharge current delivering requested_power_w (< 0) at this state,
/// with the parameter-current dependence resolved inside the loop. Throws
/// NoBracket when the demand exceeds peak deliverable power.
double solve_current_for_power(const CellState& state, double requested_power_w, double temp_c,
                               const ParamSource& params, const ModelConfig& config,
                               const OcvTable& ocv);

/// Rollout driven by a power demand sequence; current is re-solved every step.
/// Temperature comes either from a replayed sequence (held at its last value
/// past the end) or from the lumped thermal model fed with I^2*(r0+r_ld).
SimResult simulate_power_mode(const CellState& initial, std::span<const double> power_w,
                              double t0_s, double dt_s, const ParamSource& params,
                              const ModelConfig& config, const OcvTable& ocv,
                              const TempSource& temp_source);

}  // namespace ldecm
