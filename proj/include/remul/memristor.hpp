#pragma once

#include <iosfwd>
#include <vector>

#include "remul/errors.hpp"

namespace remul {

// Linear ion-drift device model. The internal state x is the normalized
// doped-region width w/D, so memristance interpolates linearly between
// r_on (x = 1, fully doped) and r_off (x = 0, undoped).
struct MemristorParams {
    double r_on = 100.0;      // ohms, fully doped state
    double r_off = 16e3;      // ohms, undoped state
    double d = 10e-9;         // film thickness, m
    double mu_v = 1e-14;      // ion mobility, m^2/(V*s)
    int window_exponent = 0;  // Joglekar window exponent p; 0 disables the window

    void validate() const;
    bool operator==(const MemristorParams&) const = default;
};

struct MemristorState {
    double x = 0.5;    // normalized doped width, clamped to [0, 1]
    double q = 0.0;    // accumulated charge, C
    double phi = 0.0;  // accumulated flux, Wb
    double t = 0.0;    // elapsed time, s
};

// One recorded integration step. m is the memristance that governed the
// step, so i == v / m holds exactly; x, q, phi are the post-step state.
struct TraceSample {
    double t;
    double v;
    double i;
    double q;
    double phi;
    double x;
    double m;
};

struct SimTrace {
    std::vector<TraceSample> samples;
    double dt = 0.0;
};

// M(x) = r_on * x + r_off * (1 - x).
double memristance(const MemristorState& state, const MemristorParams& params);

// Joglekar window f(x) = 1 - (2x - 1)^(2p); returns 1 when p == 0.
double dopant_window(double x, int exponent);

// One forward-Euler step of dx/dt = (mu_v * r_on / d^2) * i * f(x) with
// i = v / M(x), followed by clamping x to [0, 1].
MemristorState step_voltage(MemristorState state, const MemristorParams& params,
                            double v, double dt);

// Applies each waveform entry for one step of dt starting from x0 and
// records one sample per entry.
SimTrace simulate_waveform(const MemristorParams& params,
                           const std::vector<double>& waveform,
                           double dt, double x0);

// Checks the flux-charge relation d(phi) = M dq against consecutive trace
// samples, using the memristance implied by the later sample's state.
// Returns the worst absolute defect normalized by the trace's flux range.
double verify_flux_charge(const SimTrace& trace, const MemristorParams& params);

// CSV with header "t,v,i,q,phi,x,m".
void write_trace_csv(std::ostream& os, const SimTrace& trace);

} // namespace remul
