#include <catch2/catch.hpp>

#include <cmath>
#include <complex>

#include "rcsq/steady_state.hpp"

using namespace rcsq;

TEST_CASE("undriven system rests at the origin", "[steady]") {
    PhysicalParams p;
    p.pump_power = 0.0;
    const auto d = derive_params(p);
    const auto ss = solve_steady_state(d, d.omega_m);
    CHECK(ss.q_s == 0.0);
    CHECK(ss.p_s == 0.0);
    CHECK(ss.c_s == Complex(0, 0));
    CHECK_FALSE(ss.linearization_valid);
}

TEST_CASE("decoupled cavity fills without displacing the waveguide", "[steady]") {
    PhysicalParams p;
    p.kappa_om_slope = 0.0;
    const auto d = derive_params(p);
    const auto ss = solve_steady_state(d, d.omega_m);
    CHECK(ss.q_s == 0.0);
    const Complex expected = d.eps_tilde / Complex(d.kappa_e, d.omega_m);
    CHECK(std::abs(ss.c_s - expected) <= 1e-14 * std::abs(expected));
}

TEST_CASE("matches the fixed-point iteration oracle", "[steady]") {
    PhysicalParams p;
    p.pump_power = 20e-6;
    const auto d = derive_params(p);
    const double delta = d.omega_m;
    const auto ss = solve_steady_state(d, delta);

    double q = 0.0;
    for (int it = 0; it < 10000; ++it) {
        const Complex c = (1.0 + 0.5 * d.eta * q) * d.eps_tilde /
                          Complex(d.kappa_e * (1.0 + d.eta * q), delta);
        const double next = -(2.0 * d.eta / d.omega_m) * d.eps_tilde * c.imag();
        if (std::abs(next - q) < 1e-12) {
            q = next;
            break;
        }
        q = next;
    }
    CHECK(ss.q_s == Approx(q).epsilon(1e-10));
}

TEST_CASE("residuals vanish on every line of the steady equations", "[steady]") {
    // delta values sit in the dynamically stable band at every listed power
    for (double power_uw : {1.0, 12.0, 20.0, 100.0, 290.0}) {
        for (double delta_mult : {0.8, 1.0, 1.3, 1.6, 2.0}) {
            PhysicalParams p;
            p.pump_power = power_uw * 1e-6;
            const auto d = derive_params(p);
            const double delta = delta_mult * d.omega_m;
            const auto ss = solve_steady_state(d, delta);

            const Complex c_expected = (1.0 + 0.5 * d.eta * ss.q_s) * d.eps_tilde /
                                       Complex(d.kappa_e * (1.0 + d.eta * ss.q_s), delta);
            const double q_expected =
                -(2.0 * d.eta / d.omega_m) * d.eps_tilde * ss.c_s.imag();
            CHECK(std::abs(ss.c_s - c_expected) <= 1e-10 * std::abs(ss.c_s));
            CHECK(std::abs(ss.q_s - q_expected) <= 1e-10 * (std::abs(ss.q_s) + 1.0));
            CHECK(ss.p_s == 0.0);

            bool member = false;
            for (double r : ss.all_real_roots)
                if (r == ss.q_s) member = true;
            CHECK(member);
        }
    }
}

TEST_CASE("drive sign flip negates the amplitude and keeps the displacement",
          "[steady]") {
    PhysicalParams p;
    p.pump_power = 20e-6;
    auto d = derive_params(p);
    const double delta = 0.7 * d.omega_m;
    const auto plus = solve_steady_state(d, delta);
    d.eps_tilde = -d.eps_tilde;
    d.eps_l = -d.eps_l;
    const auto minus = solve_steady_state(d, delta);
    CHECK(minus.q_s == Approx(plus.q_s).epsilon(1e-12));
    CHECK(std::abs(minus.c_s + plus.c_s) <= 1e-12 * std::abs(plus.c_s));
}

TEST_CASE("displacement is continuous along a power ramp", "[steady]") {
    PhysicalParams p;
    const auto base = derive_params(p);
    const double delta = base.omega_m;
    const int n = 400;
    double prev_q = 0.0;
    double max_jump = 0.0;
    for (int i = 0; i <= n; ++i) {
        p.pump_power = 50e-6 * i / n;
        const auto d = derive_params(p);
        const auto ss = solve_steady_state(d, delta);
        CHECK_FALSE(ss.multistable);
        if (i > 0) max_jump = std::max(max_jump, std::abs(ss.q_s - prev_q));
        prev_q = ss.q_s;
    }
    // ~135 units of total travel over 400 steps: no step may jump branches.
    CHECK(max_jump < 5.0 * std::abs(prev_q) / n + 1e-9);
}

TEST_CASE("anti-damped detuning window reports no stable root", "[steady]") {
    PhysicalParams p;
    p.pump_power = 20e-6;
    const auto d = derive_params(p);
    CHECK_THROWS_WITH(solve_steady_state(d, 0.3 * d.omega_m), "no stable root");
    CHECK_NOTHROW(solve_steady_state(d, 0.0));  // the window opens above zero
}

TEST_CASE("reference point agrees with the hand-checked magnitude", "[steady]") {
    PhysicalParams p;
    p.pump_power = 20e-6;
    const auto d = derive_params(p);
    const auto ss = solve_steady_state(d, d.omega_m);
    CHECK(ss.linearization_valid);
    CHECK(std::abs(ss.c_s) == Approx(315.7).epsilon(5e-3));
    CHECK(ss.q_s == Approx(-53.1).epsilon(5e-3));
    CHECK_FALSE(ss.multistable);
}
