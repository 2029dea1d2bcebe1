#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "remul/cost.hpp"

namespace remul {

// One simulation scenario in line-based "key = value" text. Every field
// has a default; loading a file overrides the keys it names and rejects
// keys it does not know. load(render(s)) reproduces s exactly.
struct Scenario {
    unsigned n = 8;
    std::vector<unsigned> widths = {8};
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs; // inline workload
    std::string workload = "random"; // random | inline | csv
    std::string csv_path;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000;    // fir benchmark length
    std::uint64_t transforms = 1000; // fft benchmark length
    std::string twiddle_mode = "random"; // random | exact
    std::string format = "human";        // human | json | csv

    MemristorParams device;
    double frequency_hz = 100e6;

    // Device-simulation drive.
    std::string waveform = "sine"; // sine | constant
    double amplitude = 0.5;        // V
    double wave_frequency_hz = 10.0;
    double constant_value = 0.0;   // V, for waveform = constant
    unsigned periods = 1;
    unsigned steps_per_period = 10000;
    double x0 = 0.5;

    bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(std::istream& is);
Scenario load_scenario(const std::string& path);
std::string render_scenario(const Scenario& s);

// "5,3" or "[5, 3]".
std::vector<unsigned> parse_width_list(const std::string& text);
// "21x19,5x6".
std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pair_list(const std::string& text);

// Folds the scenario's device parameters and clock into the default
// calibration constants.
TechConstants scenario_tech(const Scenario& s);

} // namespace remul
