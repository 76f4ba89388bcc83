#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

#include "ldecm/csv.hpp"
#include "ldecm/ecm.hpp"
#include "ldecm/errors.hpp"
#include "ldecm/pulse.hpp"
#include "ldecm/rng.hpp"
#include "ldecm/types.hpp"
#include "support/oracles.hpp"

using namespace ldecm;
using namespace ldecm::testing;

namespace {

std::filesystem::path temp_file(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / "ldecm_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("locate_on_axis: interior, nodes, clamping") {
    const std::vector<double> axis{0.0, 5.0, 10.0, 20.0};
    auto r = locate_on_axis(axis, 7.5);
    CHECK(r.lo == 1);
    CHECK(r.hi == 2);
    CHECK(r.w == doctest::Approx(0.5));

    r = locate_on_axis(axis, 5.0);
    CHECK(r.lo == 1);
    CHECK(axis[r.lo] * (1.0 - r.w) + axis[r.hi] * r.w == doctest::Approx(5.0));

    r = locate_on_axis(axis, -3.0);
    CHECK(r.lo == 0);
    CHECK(r.hi == 0);
    r = locate_on_axis(axis, 99.0);
    CHECK(r.lo == 3);
    CHECK(r.hi == 3);

    const std::vector<double> single{4.0};
    r = locate_on_axis(single, 123.0);
    CHECK(r.lo == 0);
    CHECK(r.hi == 0);
    CHECK(r.w == 0.0);
}

TEST_CASE("OcvTable: bilinear interpolation and inversion") {
    const OcvTable ocv = linear_ocv();
    CHECK(ocv.at(50.0, 25.0) == doctest::Approx(3.1 + 0.011 * 50.0).epsilon(1e-12));
    CHECK(ocv.at(55.0, 25.0) ==
          doctest::Approx(0.5 * (ocv.at(50.0, 25.0) + ocv.at(60.0, 25.0))).epsilon(1e-12));
    // Clamped outside the grid.
    CHECK(ocv.at(-20.0, 25.0) == doctest::Approx(ocv.at(0.0, 25.0)));
    CHECK(ocv.at(150.0, 25.0) == doctest::Approx(ocv.at(100.0, 25.0)));
    CHECK(ocv.at(50.0, -40.0) == doctest::Approx(ocv.at(50.0, 10.0)));

    const double v = ocv.at(67.0, 25.0);
    CHECK(ocv.soc_for_ocv(v, 25.0) == doctest::Approx(67.0).epsilon(1e-9));
    CHECK(ocv.soc_for_ocv(0.5, 25.0) == doctest::Approx(0.0));
    CHECK(ocv.soc_for_ocv(9.0, 25.0) == doctest::Approx(100.0));
}

TEST_CASE("OcvTable: rejects non-monotone values") {
    std::vector<double> soc{0.0, 50.0, 100.0};
    std::vector<double> temp{25.0};
    std::vector<double> values{3.0, 3.5, 3.4};
    CHECK_THROWS_AS(OcvTable(soc, temp, values), ConfigError);
}

TEST_CASE("trigger_sigma: midpoint and saturation") {
    const double eta_th = 0.1;
    const double delta = 0.004;
    // v1+v2 = -eta_th puts the argument exactly at zero.
    CHECK(trigger_sigma(-0.06, -0.04, eta_th, delta) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(trigger_sigma(-(eta_th + 10.0 * delta), 0.0, eta_th, delta) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(trigger_sigma(-(eta_th - 10.0 * delta), 0.0, eta_th, delta) ==
          doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("trigger_sigma: monotone in total overpotential") {
    double prev = -1.0;
    for (int k = 0; k <= 400; ++k) {
        const double overpot = -0.1 + 0.001 * k;  // -(v1+v2)
        const double s = trigger_sigma(-overpot, 0.0, 0.12, 0.004);
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("state_derivative: unit consistency and equilibria") {
    const ModelConfig cfg = test_model_config();
    const ParamSet p = ld_test_params();

    CellState s;
    s.soc = 80.0;
    const CellState d = state_derivative(s, p, -cfg.capacity_ah, cfg);
    CHECK(d.soc == doctest::Approx(-1.0 / 36.0).epsilon(1e-15));

    // Deep below threshold at rest: pure exponential relaxation of r_ld.
    CellState rest;
    rest.v1 = 0.0;
    rest.v2 = 0.0;
    rest.r_ld = 5e-3;
    const CellState dr = state_derivative(rest, p, 0.0, cfg);
    CHECK(dr.r_ld == doctest::Approx(-5e-3 / cfg.tau_ld_s).epsilon(1e-9));

    CellState zero;
    zero.soc = 50.0;
    const CellState dz = state_derivative(zero, p, 0.0, cfg);
    CHECK(dz.soc == 0.0);
    CHECK(dz.v1 == 0.0);
    CHECK(dz.v2 == 0.0);
    CHECK(dz.r_ld == 0.0);
}

TEST_CASE("state_derivative: r_ld Jacobian entry matches sigma*theta_r - (1-sigma)/tau_ld") {
    const ModelConfig cfg = test_model_config();
    const ParamSet p = ld_test_params();
    const double h = 1e-7;
    for (double v_total : {-0.05, -0.16, -0.165, -0.18, -0.30}) {
        CellState s;
        s.soc = 60.0;
        s.v1 = 0.6 * v_total;
        s.v2 = 0.4 * v_total;
        s.r_ld = 1e-3;
        CellState sp = s;
        sp.r_ld += h;
        CellState sm = s;
        sm.r_ld -= h;
        const double fd = (state_derivative(sp, p, -100.0, cfg).r_ld -
                           state_derivative(sm, p, -100.0, cfg).r_ld) /
                          (2.0 * h);
        const double sigma = trigger_sigma(s.v1, s.v2, p.eta_th, cfg.delta_eta_v);
        const double expected = sigma * p.theta_r - (1.0 - sigma) / cfg.tau_ld_s;
        CHECK(fd == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("terminal_voltage: rest, reduction, linearity in r_ld") {
    const OcvTable ocv = linear_ocv();
    const ParamSet p = ld_test_params();
    CellState s;
    s.soc = 70.0;
    CHECK(terminal_voltage(s, p, 0.0, 25.0, ocv) == doctest::Approx(ocv.at(70.0, 25.0)));

    CellState rc = s;
    rc.v1 = -0.05;
    rc.v2 = -0.08;
    const double v_base = terminal_voltage(rc, p, -150.0, 25.0, ocv);
    CHECK(v_base ==
          doctest::Approx(ocv.at(70.0, 25.0) - 0.13 - 150.0 * p.r0).epsilon(1e-12));

    CellState ld = rc;
    ld.r_ld = 2e-3;
    CHECK(terminal_voltage(ld, p, -150.0, 25.0, ocv) ==
          doctest::Approx(v_base - 150.0 * 2e-3).epsilon(1e-12));
}

TEST_CASE("step_euler: consistency as dt shrinks") {
    const ParamSet p = ld_test_params();
    CellState s;
    s.soc = 67.0;
    s.v1 = -0.09;
    s.v2 = -0.08;
    s.r_ld = 4e-4;
    const double current = -150.0;
    ModelConfig cfg = test_model_config();
    const CellState d = state_derivative(s, p, current, cfg);
    cfg.dt_s = 1e-6;
    const CellState next = step_euler(s, current, p, cfg);
    CHECK((next.soc - s.soc) / cfg.dt_s == doctest::Approx(d.soc).epsilon(1e-9));
    CHECK((next.v1 - s.v1) / cfg.dt_s == doctest::Approx(d.v1).epsilon(1e-9));
    CHECK((next.v2 - s.v2) / cfg.dt_s == doctest::Approx(d.v2).epsilon(1e-9));
    CHECK((next.r_ld - s.r_ld) / cfg.dt_s == doctest::Approx(d.r_ld).epsilon(1e-9));
}

TEST_CASE("step_euler: 2RC branch matches the closed-form discrete recursion") {
    const ParamSet p = rc_test_params();
    const ModelConfig cfg = test_model_config();
    const double current = -75.0;
    const std::size_t steps = 200;
    const std::vector<double> v1_ref =
        rc_branch_recursion(0.0, current, p.r1, p.tau1, cfg.dt_s, steps);
    const std::vector<double> v2_ref =
        rc_branch_recursion(0.0, current, p.r2, p.tau2, cfg.dt_s, steps);

    CellState s;
    s.soc = 100.0;
    for (std::size_t k = 0; k < steps; ++k) {
        s = step_euler(s, current, p, cfg);
        CHECK(s.v1 == doctest::Approx(v1_ref[k + 1]).epsilon(1e-12));
        CHECK(s.v2 == doctest::Approx(v2_ref[k + 1]).epsilon(1e-12));
    }
}

TEST_CASE("step_euler: full depletion dynamics track the fine RK4 oracle") {
    const FixedParams params(ld_test_params());
    const OcvTable ocv = linear_ocv();
    const ModelConfig cfg = test_model_config();
    CellState init;
    init.soc = 67.0;
    const auto profile = constant_profile(-200.0, 25.0, 1.0, 121);

    const SimResult euler = simulate_current_mode(init, profile, params, cfg, ocv);
    const SimResult fine = rk4_rollout(init, profile, params, cfg, ocv, 1e-3);
    REQUIRE(fine.samples.size() >= euler.samples.size());
    double max_err = 0.0;
    for (std::size_t k = 0; k < euler.samples.size(); ++k) {
        max_err = std::max(max_err, std::abs(euler.samples[k].v_t - fine.samples[k].v_t));
    }
    CHECK(max_err < 5e-3);
    // Depletion must actually engage and end the pulse at the voltage limit.
    CHECK(euler.samples.back().state.r_ld > 0.0);
    CHECK(euler.reason == TermReason::voltage_limit);
}

TEST_CASE("step_euler: halving dt roughly halves the global error (first order)") {
    const FixedParams params(ld_test_params());
    const OcvTable ocv = linear_ocv();
    ModelConfig cfg = test_model_config();
    cfg.v_min = 0.0;
    CellState init;
    init.soc = 80.0;

    auto max_error_at_dt = [&](double dt) {
        ModelConfig c = cfg;
        c.dt_s = dt;
        const std::size_t n = static_cast<std::size_t>(std::llround(120.0 / dt)) + 1;
        const auto profile = constant_profile(-150.0, 25.0, dt, n);
        const SimResult euler = simulate_current_mode(init, profile, params, c, ocv);
        const SimResult fine = rk4_rollout(init, profile, params, c, ocv, 1e-3);
        double err = 0.0;
        for (std::size_t k = 0; k < euler.samples.size(); ++k) {
            err = std::max(err, std::abs(euler.samples[k].v_t - fine.samples[k].v_t));
        }
        return err;
    };

    const double e1 = max_error_at_dt(1.0);
    const double e_half = max_error_at_dt(0.5);
    CHECK(e1 / e_half >= 1.8);
}

TEST_CASE("simulate_current_mode: zero current holds OCV and states") {
    const FixedParams params(ld_test_params());
    const OcvTable ocv = linear_ocv();
    const ModelConfig cfg = test_model_config();
    CellState init;
    init.soc = 55.0;
    const auto profile = constant_profile(0.0, 25.0, 1.0, 50);
    const SimResult r = simulate_current_mode(init, profile, params, cfg, ocv);
    REQUIRE(r.reason == TermReason::completed);
    REQUIRE(r.samples.size() == 50);
    for (const SimSample& s : r.samples) {
        CHECK(s.v_t == doctest::Approx(ocv.at(55.0, 25.0)).epsilon(1e-12));
        CHECK(s.state.soc == doctest::Approx(55.0));
        CHECK(s.state.v1 == 0.0);
        CHECK(s.state.v2 == 0.0);
        CHECK(s.state.r_ld == 0.0);
    }
}

TEST_CASE("simulate_current_mode: constant-parameter 2RC voltage is convex") {
    // Random constant-parameter configurations within the identification bounds,
    // linear OCV, constant current: every interior second difference >= -1e-9.
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const OcvTable ocv = linear_ocv();
    ModelConfig cfg = test_model_config();
    cfg.v_min = 0.0;

    for (int trial = 0; trial < 120; ++trial) {
        ParamSet p;
        p.r0 = 5e-4 + 3e-3 * u(rng);
        p.r1 = 2e-4 + 2e-3 * u(rng);
        p.r2 = 2e-4 + 2e-3 * u(rng);
        p.tau1 = 1.5 + 8.5 * u(rng);
        p.tau2 = 30.0 + 120.0 * u(rng);
        p.theta_eta = 0.0;
        p.theta_r = 0.0;
        p.eta_th = 1.0;
        const double current = -25.0 * (0.5 + 5.5 * u(rng));
        CellState init;
        init.soc = 95.0;
        const auto profile = constant_profile(current, 25.0, 1.0, 120);
        const SimResult r = simulate_current_mode(init, profile, FixedParams(p), cfg, ocv);
        REQUIRE(r.reason == TermReason::completed);
        for (std::size_t k = 1; k + 1 < r.samples.size(); ++k) {
            const double d2 = r.samples[k + 1].v_t - 2.0 * r.samples[k].v_t +
                              r.samples[k - 1].v_t;
            CHECK(d2 >= -1e-9);
        }
    }
}

TEST_CASE("simulate_current_mode: active depletion produces a concave stretch") {
    const FixedParams params(ld_test_params());
    const OcvTable ocv = linear_ocv();
    const ModelConfig cfg = test_model_config();
    CellState init;
    init.soc = 67.0;
    const auto profile = constant_profile(-200.0, 25.0, 1.0, 121);
    const SimResult r = simulate_current_mode(init, profile, params, cfg, ocv);
    bool sign_change = false;
    for (std::size_t k = 1; k + 1 < r.samples.size(); ++k) {
        const double d2 =
            r.samples[k + 1].v_t - 2.0 * r.samples[k].v_t + r.samples[k - 1].v_t;
        if (d2 < -1e-9) {
            sign_change = true;
        }
    }
    CHECK(sign_change);
}

TEST_CASE("simulate_current_mode: depletion disabled is bit-identical to plain 2RC") {
    const ParamSet p = rc_test_params();
    const OcvTable ocv = linear_ocv();
    const ModelConfig cfg = test_model_config();
    CellState init;
    init.soc = 90.0;
    const auto profile = constant_profile(-100.0, 25.0, 1.0, 100);
    const SimResult r = simulate_current_mode(init, profile, FixedParams(p), cfg, ocv);

    // Reference loop with the depletion state stripped out entirely.
    double soc = 90.0;
    double v1 = 0.0;
    double v2 = 0.0;
    for (std::size_t k = 0; k < r.samples.size(); ++k) {
        const double v_t = ocv.at(soc, 25.0) + v1 + v2 + (-100.0) * p.r0;
        CHECK(r.samples[k].v_t == v_t);
        CHECK(r.samples[k].state.soc == soc);
        CHECK(r.samples[k].state.v1 == v1);
        CHECK(r.samples[k].state.v2 == v2);
        CHECK(r.samples[k].state.r_ld == 0.0);
        soc = soc + cfg.dt_s * ((-100.0) / (36.0 * cfg.capacity_ah));
        v1 = v1 + cfg.dt_s * ((-v1 + (-100.0) * p.r1) / p.tau1);
        v2 = v2 + cfg.dt_s * ((-v2 + (-100.0) * p.r2) / p.tau2);
    }
}

TEST_CASE("simulate_current_mode: SOC bookkeeping is Euler-exact") {
    const FixedParams params(rc_test_params());
    const OcvTable ocv = linear_ocv();
    ModelConfig cfg = test_model_config();
    cfg.v_min = 0.0;
    CellState init;
    init.soc = 88.0;
    std::vector<ProfileSample> profile;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-120.0, 0.0);
    for (int k = 0; k < 300; ++k) {
        profile.push_back({static_cast<double>(k), u(rng), 25.0});
    }
    const SimResult r = simulate_current_mode(init, profile, params, cfg, ocv);
    REQUIRE(r.reason == TermReason::completed);
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < r.samples.size(); ++k) {
        integral += r.samples[k].current_a * cfg.dt_s;
    }
    const double ds = r.samples.back().state.soc - 88.0;
    CHECK(ds == doctest::Approx(integral / (36.0 * cfg.capacity_ah)).epsilon(1e-12));
}

TEST_CASE("simulate_current_mode: voltage limit terminates with index and reason") {
    const FixedParams params(ld_test_params());
    const OcvTable ocv = linear_ocv();
    const ModelConfig cfg = test_model_config();
    CellState init;
    init.soc = 30.0;
    const auto profile = constant_profile(-200.0, 25.0, 1.0, 600);
    const SimResult r = simulate_current_mode(init, profile, params, cfg, ocv);
    CHECK(r.reason == TermReason::voltage_limit);
    CHECK(r.samples.size() == r.term_index + 1);
    CHECK(r.samples.back().v_t < cfg.v_min);
}

TEST_CASE("solve_current_for_power: zero, closed form, and bracket failure") {
    ParamSet p;
    p.r0 = 2e-3;
    p.r1 = 0.0;
    p.r2 = 0.0;
    p.tau1 = 3.0;
    p.tau2 = 60.0;
    p.theta_eta = 0.0;
    p.theta_r = 0.0;
    p.eta_th = 1.0;
    const FixedParams params(p);
    const OcvTable ocv = linear_ocv();
    ModelConfig cfg = test_model_config();
    cfg.max_discharge_a = 2000.0;
    CellState s;
    s.soc = 50.0;
    const double ocv0 = ocv.at(50.0, 25.0);

    CHECK(solve_current_for_power(s, 0.0, 25.0, params, cfg, ocv) == 0.0);

    const double p_req = -500.0;
    const double i_solved = solve_current_for_power(s, p_req, 25.0, params, cfg, ocv);
    const double i_exact = resistor_cell_current(ocv0, p.r0, p_req);
    CHECK(std::abs(i_solved - i_exact) / std::abs(i_exact) < 1e-9);

    const double peak = resistor_cell_peak_power(ocv0, p.r0);
    CHECK_NOTHROW(solve_current_for_power(s, 0.999 * peak, 25.0, params, cfg, ocv));
    CHECK_THROWS_AS(solve_current_for_power(s, 1.001 * peak, 25.0, params, cfg, ocv),
                    NoBracket);
}

TEST_CASE("simulate_power_mode: thermal relaxation and mode self-consistency") {
    const FixedParams params(ld_test_params());
    const OcvTable ocv = linear_ocv();
    const ModelConfig cfg = test_model_config();
    CellState init;
    init.soc = 85.0;

    ThermalSim thermal;
    thermal.model.coolant_temp_c = 25.0;
    thermal.initial_temp_c = 40.0;
    const std::vector<double> zero_power(200, 0.0);
    const SimResult rest =
        simulate_power_mode(init, zero_power, 0.0, 1.0, params, cfg, ocv, thermal);
    REQUIRE(rest.reason == TermReason::completed);
    // Discrete exponential relaxation toward the coolant temperature.
    const double k_fac = 1.0 - thermal.model.h_w_per_k / thermal.model.heat_capacity_j_per_k;
    double t_expected = 40.0;
    for (std::size_t k = 0; k < rest.samples.size(); ++k) {
        CHECK(rest.samples[k].temp_c == doctest::Approx(t_expected).epsilon(1e-12));
        t_expected = 25.0 + (t_expected - 25.0) * k_fac;
    }

    // Replaying the solved current in current mode reproduces the voltages.
    const std::vector<double> power(180, -550.0);
    const SimResult pw = simulate_power_mode(init, power, 0.0, 1.0, params, cfg, ocv, thermal);
    std::vector<ProfileSample> replay;
    for (const SimSample& smp : pw.samples) {
        replay.push_back({smp.t, smp.current_a, smp.temp_c});
    }
    const SimResult cm = simulate_current_mode(init, replay, params, cfg, ocv);
    REQUIRE(cm.samples.size() == pw.samples.size());
    for (std::size_t k = 0; k < cm.samples.size(); ++k) {
        CHECK(std::abs(cm.samples[k].v_t - pw.samples[k].v_t) < 1e-9);
        // Power is actually delivered within the solver contract.
        const double delivered = pw.samples[k].v_t * pw.samples[k].current_a;
        CHECK(std::abs(delivered - power[k]) <= std::max(1e-6 * 550.0, 1e-3));
    }
}

TEST_CASE("rng: named streams are deterministic and distinct") {
    const auto a1 = derive_seed(1234, "plant/ccp_0001");
    const auto a2 = derive_seed(1234, "plant/ccp_0001");
    const auto b = derive_seed(1234, "plant/ccp_0002");
    const auto c = derive_seed(1235, "plant/ccp_0001");
    CHECK(a1 == a2);
    CHECK(a1 != b);
    CHECK(a1 != c);

    GaussianRng g1(a1);
    GaussianRng g2(a1);
    double sum = 0.0;
    double sumsq = 0.0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
        const double x = g1.normal();
        CHECK(x == g2.normal());
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("csv: fixed formatting and profile round-trip") {
    CHECK(format_fixed(1.0, 3) == "1.000");
    CHECK(format_fixed(-0.00004, 3) == "0.000");
    CHECK(format_fixed(-1.25, 2) == "-1.25");
    CHECK(format_fixed(0.12345678949, 9) == "0.123456789");

    const auto profile = constant_profile(-150.0, 25.0, 1.0, 5);
    const auto path = temp_file("profile.csv");
    write_profile_csv(profile, path);
    const auto back = read_profile_csv(path);
    REQUIRE(back.size() == profile.size());
    for (std::size_t k = 0; k < back.size(); ++k) {
        CHECK(back[k].t == doctest::Approx(profile[k].t));
        CHECK(back[k].current_a == doctest::Approx(profile[k].current_a));
        CHECK(back[k].temp_c == doctest::Approx(profile[k].temp_c));
    }

    CHECK_THROWS_AS(read_profile_csv(temp_file("missing.csv")), DataError);
}

TEST_CASE("csv: power profile round-trip recovers dt") {
    const std::vector<double> power{-100.0, -200.0, -300.0};
    const auto path = temp_file("power.csv");
    write_power_csv(power, 0.5, path);
    double dt = 0.0;
    const auto back = read_power_csv(path, dt);
    CHECK(dt == doctest::Approx(0.5));
    REQUIRE(back.size() == 3);
    CHECK(back[2] == doctest::Approx(-300.0));
}

TEST_CASE("pulse: csv round-trip with sparse resistance samples") {
    PulseRecord pulse;
    pulse.id = "unit_pulse";
    pulse.protocol = Protocol::ccp;
    pulse.dt_s = 1.0;
    for (int k = 0; k < 10; ++k) {
        pulse.time_s.push_back(static_cast<double>(k));
        pulse.current_a.push_back(-125.0);
        pulse.temp_c.push_back(25.0 + 0.01 * k);
        pulse.v_meas_v.push_back(3.9 - 0.002 * k);
        pulse.interrupt.push_back(k == 5 ? 1 : 0);
    }
    pulse.r_ohm_idx = {5};
    pulse.r_ohm_ohm = {2.2e-3};

    const auto dir = std::filesystem::temp_directory_path() / "ldecm_test" / "ds";
    std::filesystem::remove_all(dir);
    DatasetManifest manifest;
    manifest.seed = 99;
    manifest.capacity_ah = 25.0;
    save_dataset({pulse}, manifest, dir);

    DatasetManifest m2;
    const auto back = load_dataset(dir, &m2);
    REQUIRE(back.size() == 1);
    CHECK(m2.seed == 99);
    const PulseRecord& b = back[0];
    CHECK(b.id == "unit_pulse");
    CHECK(b.protocol == Protocol::ccp);
    REQUIRE(b.size() == 10);
    CHECK(b.v_meas_v[3] == doctest::Approx(3.9 - 0.006).epsilon(1e-9));
    CHECK(b.interrupt[5] == 1);
    CHECK(b.interrupt[4] == 0);
    REQUIRE(b.r_ohm_idx.size() == 1);
    CHECK(b.r_ohm_idx[0] == 5);
    CHECK(b.r_ohm_ohm[0] == doctest::Approx(2.2e-3).epsilon(1e-6));
}
