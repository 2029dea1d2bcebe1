#include "remul/memristor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace remul {

void MemristorParams::validate() const {
    if (!(r_on > 0.0) || !(r_off > r_on)) {
        throw ValidationError("MemristorParams: requires 0 < r_on < r_off");
    }
    if (!(d > 0.0)) {
        throw ValidationError("MemristorParams: film thickness d must be positive");
    }
    if (!(mu_v > 0.0)) {
        throw ValidationError("MemristorParams: mobility mu_v must be positive");
    }
    if (window_exponent < 0) {
        throw ValidationError("MemristorParams: window_exponent must be >= 0");
    }
}

double memristance(const MemristorState& state, const MemristorParams& params) {
    return params.r_on * state.x + params.r_off * (1.0 - state.x);
}

double dopant_window(double x, int exponent) {
    if (exponent <= 0) {
        return 1.0;
    }
    const double b = 2.0 * x - 1.0;
    const double b2 = b * b;
    double w = 1.0;
    for (int k = 0; k < exponent; ++k) {
        w *= b2;
    }
    return 1.0 - w;
}

MemristorState step_voltage(MemristorState state, const MemristorParams& params,
                            double v, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("step_voltage: dt must be positive");
    }
    const double m = memristance(state, params);
    const double i = v / m;
    const double k = params.mu_v * params.r_on / (params.d * params.d);
    const double x = state.x + dt * k * i * dopant_window(state.x, params.window_exponent);
    state.x = std::clamp(x, 0.0, 1.0);
    state.q += i * dt;
    state.phi += v * dt;
    state.t += dt;
    return state;
}

SimTrace simulate_waveform(const MemristorParams& params,
                           const std::vector<double>& waveform,
                           double dt, double x0) {
    params.validate();
    if (waveform.empty()) {
        throw ValidationError("simulate_waveform: waveform must not be empty");
    }
    if (!(dt > 0.0)) {
        throw ValidationError("simulate_waveform: dt must be positive");
    }
    if (!(x0 >= 0.0 && x0 <= 1.0)) {
        throw ValidationError("simulate_waveform: x0 must lie in [0, 1]");
    }

    SimTrace trace;
    trace.dt = dt;
    trace.samples.reserve(waveform.size());

    MemristorState state;
    state.x = x0;
    for (double v : waveform) {
        const double m = memristance(state, params);
        state = step_voltage(state, params, v, dt);
        trace.samples.push_back(TraceSample{state.t, v, v / m, state.q,
                                            state.phi, state.x, m});
    }
    return trace;
}

double verify_flux_charge(const SimTrace& trace, const MemristorParams& params) {
    if (trace.samples.size() < 2) {
        throw ValidationError("verify_flux_charge: trace needs at least 2 samples");
    }

    double phi_min = trace.samples.front().phi;
    double phi_max = phi_min;
    for (const TraceSample& s : trace.samples) {
        phi_min = std::min(phi_min, s.phi);
        phi_max = std::max(phi_max, s.phi);
    }

    double worst = 0.0;
    for (std::size_t k = 1; k < trace.samples.size(); ++k) {
        const TraceSample& a = trace.samples[k - 1];
        const TraceSample& b = trace.samples[k];
        // Memristance at the later state; the step itself used the earlier
        // one, so the defect measures how much M moved within the step.
        const double m = params.r_on * b.x + params.r_off * (1.0 - b.x);
        worst = std::max(worst, std::fabs((b.phi - a.phi) - m * (b.q - a.q)));
    }

    const double range = phi_max - phi_min;
    return range > 0.0 ? worst / range : worst;
}

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
    os << "t,v,i,q,phi,x,m\n";
    char line[256];
    for (const TraceSample& s : trace.samples) {
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      s.t, s.v, s.i, s.q, s.phi, s.x, s.m);
        os << line;
    }
}

} // namespace remul
