#include "ldecm/ecm.hpp"

#include <cmath>
#include <limits>

#include "ldecm/errors.hpp"

namespace ldecm {

double trigger_sigma(double v1, double v2, double eta_th, double delta_eta) {
    return 0.5 * (1.0 + std::tanh((-(v1 + v2) - eta_th) / delta_eta));
}

CellState state_derivative(const CellState& state, const ParamSet& params, double current_a,
                           const ModelConfig& config) {
    const double sigma = trigger_sigma(state.v1, state.v2, params.eta_th, config.delta_eta_v);
    CellState d;
    d.soc = current_a / (36.0 * config.capacity_ah);
    d.v1 = (-state.v1 + current_a * params.r1) / params.tau1;
    d.v2 = (-state.v2 + current_a * params.r2) / params.tau2;
    d.r_ld = sigma * (-params.theta_eta * (state.v1 + state.v2) + params.theta_r * state.r_ld) -
             (1.0 - sigma) * state.r_ld / config.tau_ld_s;
    return d;
}

double terminal_voltage(const CellState& state, const ParamSet& params, double current_a,
                        double temp_c, const OcvTable& ocv) {
    return ocv.at(state.soc, temp_c) + state.v1 + state.v2 +
           current_a * (params.r0 + state.r_ld);
}

CellState step_euler(const CellState& state, double current_a, const ParamSet& params,
                     const ModelConfig& config) {
    const CellState d = state_derivative(state, params, current_a, config);
    CellState next;
    next.soc = state.soc + config.dt_s * d.soc;
    next.v1 = state.v1 + config.dt_s * d.v1;
    next.v2 = state.v2 + config.dt_s * d.v2;
    next.r_ld = state.r_ld + config.dt_s * d.r_ld;
    if (next.r_ld < 0.0) {
        next.r_ld = 0.0;
    }
    return next;
}

std::string_view to_string(TermReason r) {
    switch (r) {
        case TermReason::completed: return "completed";
        case TermReason::voltage_limit: return "voltage";
        case TermReason::temperature_limit: return "temperature";
        case TermReason::soc_limit: return "soc";
        case TermReason::nonfinite_state: return "nonfinite";
        case TermReason::power_infeasible: return "power_infeasible";
    }
    return "unknown";
}

namespace {

bool state_finite(const CellState& s) {
    return std::isfinite(s.soc) && std::isfinite(s.v1) && std::isfinite(s.v2) &&
           std::isfinite(s.r_ld);
}

}  // namespace

SimResult simulate_current_mode(const CellState& initial, std::span<const ProfileSample> profile,
                                const ParamSource& params, const ModelConfig& config,
                                const OcvTable& ocv) {
    SimResult result;
    result.samples.reserve(profile.size());
    CellState state = initial;
    for (std::size_t k = 0; k < profile.size(); ++k) {
        const ProfileSample& in = profile[k];
        if (!state_finite(state)) {
            result.reason = TermReason::nonfinite_state;
            result.term_index = k;
            return result;
        }
        const ParamSet p = params.at(state.soc, in.temp_c, in.current_a);
        const double v_t = terminal_voltage(state, p, in.current_a, in.temp_c, ocv);
        result.samples.push_back({in.t, state, in.current_a, in.temp_c, v_t});
        result.term_index = k;
        if (!std::isfinite(v_t)) {
            result.reason = TermReason::nonfinite_state;
            return result;
        }
        if (v_t < config.v_min) {
            result.reason = TermReason::voltage_limit;
            return result;
        }
        if (in.temp_c > config.t_max_c) {
            result.reason = TermReason::temperature_limit;
            return result;
        }
        if (state.soc < 0.0 || state.soc > 100.0) {
            result.reason = TermReason::soc_limit;
            return result;
        }
        if (k + 1 < profile.size()) {
            state = step_euler(state, in.current_a, p, config);
        }
    }
    result.reason = TermReason::completed;
    return result;
}

double solve_current_for_power(const CellState& state, double requested_power_w, double temp_c,
                               const ParamSource& params, const ModelConfig& config,
                               const OcvTable& ocv) {
    if (requested_power_w == 0.0) {
        return 0.0;
    }
    if (requested_power_w > 0.0) {
        throw InternalError("solve_current_for_power: charge power not supported");
    }
    // Converge far past the contract tolerance max(1e-6*|P|, 1e-3 W); the
    // secant tail is cheap and downstream closed-form comparisons are tight.
    const double tol = std::max(4e-13 * std::abs(requested_power_w), 1e-12);
    const auto residual = [&](double current) {
        const ParamSet p = params.at(state.soc, temp_c, current);
        return terminal_voltage(state, p, current, temp_c, ocv) * current - requested_power_w;
    };

    // Scan from rest toward the hardware limit for the first sign change, so
    // the root on the high-voltage branch is always the one bracketed.
    const double i_limit = -config.discharge_bracket_a();
    constexpr int kScanSteps = 64;
    double a = 0.0;
    double fa = residual(a);  // equals -P > 0
    double b = a;
    double fb = fa;
    bool bracketed = false;
    for (int i = 1; i <= kScanSteps; ++i) {
        b = i_limit * static_cast<double>(i) / kScanSteps;
        fb = residual(b);
        if (!std::isfinite(fb)) {
            break;
        }
        if (fa * fb <= 0.0) {
            bracketed = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!bracketed) {
        throw NoBracket("power demand exceeds peak deliverable power at this state");
    }

    // Safeguarded secant iteration: fall back to bisection whenever the secant
    // proposal leaves the bracket or fails to shrink it.
    double x = 0.5 * (a + b);
    double fx = residual(x);
    for (int iter = 0; iter < 200 && std::abs(fx) > tol; ++iter) {
        if (fa * fx <= 0.0) {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        double x_new = x;
        const double denom = fb - fa;
        if (denom != 0.0) {
            x_new = a - fa * (b - a) / denom;
        }
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        if (!(x_new > lo && x_new < hi)) {
            x_new = 0.5 * (a + b);
        }
        if (x_new == x) {
            x_new = 0.5 * (a + b);
        }
        x = x_new;
        fx = residual(x);
        if (!std::isfinite(fx)) {
            x = 0.5 * (a + b);
            fx = residual(x);
        }
        if (a == b) {
            break;
        }
    }
    return x;
}

SimResult simulate_power_mode(const CellState& initial, std::span<const double> power_w,
                              double t0_s, double dt_s, const ParamSource& params,
                              const ModelConfig& config, const OcvTable& ocv,
                              const TempSource& temp_source) {
    SimResult result;
    result.samples.reserve(power_w.size());
    CellState state = initial;
    const auto* replay = std::get_if<std::span<const double>>(&temp_source);
    const auto* thermal = std::get_if<ThermalSim>(&temp_source);
    double temp = thermal ? thermal->initial_temp_c : 0.0;

    if (replay && replay->empty()) {
        throw InternalError("simulate_power_mode: empty temperature replay");
    }

    for (std::size_t k = 0; k < power_w.size(); ++k) {
        if (replay) {
            temp = (*replay)[std::min(k, replay->size() - 1)];
        }
        if (!state_finite(state)) {
            result.reason = TermReason::nonfinite_state;
            result.term_index = k;
            return result;
        }
        double current = 0.0;
        try {
            current = solve_current_for_power(state, power_w[k], temp, params, config, ocv);
        } catch (const NoBracket&) {
            result.reason = TermReason::power_infeasible;
            result.term_index = k;
            return result;
        }
        const ParamSet p = params.at(state.soc, temp, current);
        const double v_t = terminal_voltage(state, p, current, temp, ocv);
        result.samples.push_back({t0_s + dt_s * static_cast<double>(k), state, current, temp, v_t});
        result.term_index = k;
        if (!std::isfinite(v_t)) {
            result.reason = TermReason::nonfinite_state;
            return result;
        }
        if (v_t < config.v_min) {
            result.reason = TermReason::voltage_limit;
            return result;
        }
        if (temp > config.t_max_c) {
            result.reason = TermReason::temperature_limit;
            return result;
        }
        if (state.soc < 0.0 || state.soc > 100.0) {
            result.reason = TermReason::soc_limit;
            return result;
        }
        if (k + 1 < power_w.size()) {
            const double heat = current * current * (p.r0 + state.r_ld);
            ModelConfig step_cfg = config;
            step_cfg.dt_s = dt_s;
            state = step_euler(state, current, p, step_cfg);
            if (thermal) {
                temp = thermal->model.step(temp, heat, dt_s);
            }
        }
    }
    result.reason = TermReason::completed;
    return result;
}

}  // namespace ldecm
