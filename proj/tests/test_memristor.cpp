#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "remul/memristor.hpp"

using namespace remul;

namespace {

std::vector<double> sine_wave(double amplitude, std::size_t steps_per_period,
                              std::size_t periods) {
    std::vector<double> wave(steps_per_period * periods);
    for (std::size_t k = 0; k < wave.size(); ++k) {
        wave[k] = amplitude * std::sin(2.0 * std::numbers::pi *
                                       static_cast<double>(k % steps_per_period) /
                                       static_cast<double>(steps_per_period));
    }
    return wave;
}

} // namespace

TEST_CASE("memristance interpolates between r_off and r_on") {
    MemristorParams p;
    MemristorState s;

    s.x = 0.0;
    CHECK(memristance(s, p) == p.r_off);
    s.x = 1.0;
    CHECK(memristance(s, p) == p.r_on);
    s.x = 0.5;
    CHECK(memristance(s, p) == doctest::Approx((p.r_on + p.r_off) / 2.0));
}

TEST_CASE("zero drive leaves everything but time unchanged") {
    MemristorParams p;
    MemristorState s;
    s.x = 0.3;
    const MemristorState after = step_voltage(s, p, 0.0, 1e-6);
    CHECK(after.x == s.x);
    CHECK(after.q == 0.0);
    CHECK(after.phi == 0.0);
    CHECK(after.t == doctest::Approx(1e-6));
}

TEST_CASE("constant-current drive matches the closed form") {
    // With f == 1 the drift rate is state-independent, so delta_x is
    // exactly (mu_v * r_on / d^2) * I * T.
    MemristorParams p;
    p.window_exponent = 0;
    const double k = p.mu_v * p.r_on / (p.d * p.d);
    const double current = 1e-5; // A
    const double total_time = 1.0;
    const double expected_dx = k * current * total_time; // 0.01 for defaults

    for (const std::size_t steps : {std::size_t{10000}, std::size_t{20000}}) {
        const double dt = total_time / static_cast<double>(steps);
        MemristorState s;
        s.x = 0.1;
        for (std::size_t i = 0; i < steps; ++i) {
            const double v = current * memristance(s, p);
            s = step_voltage(s, p, v, dt);
        }
        CHECK(std::fabs((s.x - 0.1) - expected_dx) / expected_dx < 0.01);
        CHECK(std::fabs(s.q - current * total_time) / (current * total_time) < 1e-9);
    }
}

TEST_CASE("strong forward drive saturates x at 1 and stays") {
    MemristorParams p;
    MemristorState s;
    s.x = 0.9;
    for (int i = 0; i < 2000; ++i) {
        s = step_voltage(s, p, 5.0, 1e-3);
    }
    CHECK(s.x == 1.0);
    s = step_voltage(s, p, 5.0, 1e-3);
    CHECK(s.x == 1.0);
}

TEST_CASE("simulate_waveform rejects bad arguments") {
    MemristorParams p;
    CHECK_THROWS_AS(simulate_waveform(p, {}, 1e-6, 0.5), ValidationError);
    CHECK_THROWS_AS(simulate_waveform(p, {1.0}, 0.0, 0.5), ValidationError);
    CHECK_THROWS_AS(simulate_waveform(p, {1.0}, -1e-6, 0.5), ValidationError);
    CHECK_THROWS_AS(simulate_waveform(p, {1.0}, 1e-6, 1.5), ValidationError);
    CHECK_THROWS_AS(simulate_waveform(p, {1.0}, 1e-6, -0.1), ValidationError);
}

TEST_CASE("all-zero waveform keeps state flat") {
    MemristorParams p;
    const SimTrace trace = simulate_waveform(p, std::vector<double>(100, 0.0), 1e-6, 0.25);
    REQUIRE(trace.samples.size() == 100);
    for (const TraceSample& s : trace.samples) {
        CHECK(s.x == 0.25);
        CHECK(s.q == 0.0);
        CHECK(s.phi == 0.0);
        CHECK(s.i == 0.0);
    }
    CHECK(verify_flux_charge(trace, p) == 0.0);
}

TEST_CASE("pinched hysteresis: i is exactly zero wherever v is") {
    MemristorParams p;
    std::vector<double> wave = sine_wave(0.5, 1000, 2);
    wave[137] = 0.0;
    wave[600] = 0.0;
    const SimTrace trace = simulate_waveform(p, wave, 1e-4, 0.5);
    for (const TraceSample& s : trace.samples) {
        if (s.v == 0.0) {
            CHECK(s.i == 0.0);
        }
        CHECK(s.i == s.v / s.m); // exact by construction
    }
}

TEST_CASE("trace time is strictly increasing and integrals are bit-exact") {
    MemristorParams p;
    const SimTrace trace = simulate_waveform(p, sine_wave(0.5, 500, 1), 2e-4, 0.5);
    double t_prev = 0.0;
    double q_acc = 0.0;
    double phi_acc = 0.0;
    for (const TraceSample& s : trace.samples) {
        CHECK(s.t > t_prev);
        t_prev = s.t;
        q_acc += s.i * trace.dt;
        phi_acc += s.v * trace.dt;
    }
    CHECK(trace.samples.back().q == q_acc);
    CHECK(trace.samples.back().phi == phi_acc);
}

TEST_CASE("flux-charge residual drops by at least 1.8x when dt halves") {
    MemristorParams p;
    const double freq = 10.0;
    const double amplitude = 0.5;

    const std::size_t base_steps = 2000;
    const SimTrace coarse =
        simulate_waveform(p, sine_wave(amplitude, base_steps, 1), 1.0 / (freq * base_steps), 0.5);
    const SimTrace fine = simulate_waveform(p, sine_wave(amplitude, 2 * base_steps, 1),
                                            1.0 / (freq * 2 * base_steps), 0.5);
    const double r_coarse = verify_flux_charge(coarse, p);
    const double r_fine = verify_flux_charge(fine, p);
    REQUIRE(r_coarse > 0.0);
    REQUIRE(r_fine > 0.0);
    CHECK(r_coarse / r_fine >= 1.8);
}

TEST_CASE("verify_flux_charge needs two samples") {
    MemristorParams p;
    SimTrace trace;
    trace.dt = 1e-6;
    CHECK_THROWS_AS(verify_flux_charge(trace, p), ValidationError);
    trace.samples.push_back(TraceSample{1e-6, 0.1, 1e-5, 0.0, 0.0, 0.5, 8050.0});
    CHECK_THROWS_AS(verify_flux_charge(trace, p), ValidationError);
}

TEST_CASE("clamped state makes the relation exact") {
    // Reverse bias against the x = 0 boundary: M stays at r_off, so
    // d(phi) = M dq holds to rounding.
    MemristorParams p;
    const SimTrace trace = simulate_waveform(p, std::vector<double>(500, -2.0), 1e-5, 0.0);
    for (const TraceSample& s : trace.samples) {
        CHECK(s.x == 0.0);
    }
    CHECK(verify_flux_charge(trace, p) < 1e-12);
}

TEST_CASE("x stays inside [0, 1] under adversarial waveforms") {
    std::mt19937_64 rng(7);
    for (int window : {0, 1, 2}) {
        MemristorParams p;
        p.window_exponent = window;
        std::vector<double> wave(4000);
        for (double& v : wave) {
            // Large alternating kicks with occasional huge spikes.
            const double r = static_cast<double>(rng() % 2000) / 100.0 - 10.0;
            v = (rng() % 17 == 0) ? r * 50.0 : r;
        }
        const SimTrace trace = simulate_waveform(p, wave, 5e-4, 0.5);
        for (const TraceSample& s : trace.samples) {
            CHECK(s.x >= 0.0);
            CHECK(s.x <= 1.0);
            CHECK(s.m >= p.r_on);
            CHECK(s.m <= p.r_off);
        }
    }
}

TEST_CASE("window function vanishes at the boundaries") {
    CHECK(dopant_window(0.5, 1) == 1.0);
    CHECK(dopant_window(0.0, 1) == 0.0);
    CHECK(dopant_window(1.0, 1) == 0.0);
    CHECK(dopant_window(0.25, 0) == 1.0); // disabled
    CHECK(dopant_window(0.25, 2) == doctest::Approx(1.0 - std::pow(-0.5, 4)));
}

TEST_CASE("trace CSV starts with the canonical header") {
    MemristorParams p;
    const SimTrace trace = simulate_waveform(p, {0.1, 0.2}, 1e-6, 0.5);
    std::ostringstream os;
    write_trace_csv(os, trace);
    const std::string text = os.str();
    CHECK(text.rfind("t,v,i,q,phi,x,m\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("parameter validation") {
    MemristorParams p;
    p.r_on = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = MemristorParams{};
    p.r_off = p.r_on;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = MemristorParams{};
    p.window_exponent = -1;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}
