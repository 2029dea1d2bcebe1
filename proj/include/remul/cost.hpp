#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "remul/array.hpp"

namespace remul {

// Technology calibration knobs. Areas are in inverter footprints (one
// CMOS inverter = 1.0): a plain CMOS two-input gate is two footprints,
// while a memristor-ratioed gate costs one inverter of silicon plus two
// back-end-of-line memristor vias on top of it.
struct TechConstants {
    GateModels models = GateModels::defaults();
    MemristorParams device;

    double area_mr_nand = 1.03;
    double area_mr_nor = 1.03;
    double area_cmos_inv = 1.0;
    double area_cmos_nand = 2.0;
    double area_cmos_nor = 2.0;

    double frequency_hz = 100e6; // clock for average-power conversion

    double area_of(GateKind kind) const;
    void validate() const;
};

struct CostRatios {
    double delay = 1.0;
    double power = 1.0;
    double area = 1.0;
};

struct CostReport {
    double delay_s = 0.0;
    double energy_j = 0.0;
    double avg_power_w = 0.0;
    double area_units = 0.0;
    std::uint64_t gate_count = 0;
    std::optional<CostRatios> ratios; // vs. a baseline report
};

// Sum of per-kind area constants over the n-bit array's gates.
double area_estimate(unsigned n, Technology tech, const TechConstants& tc);

// Static longest path from any live operand input to any product output,
// using worst-case gate delays. Control bits and out-of-segment bus bits
// are treated as constants and propagated, so disabled blocks contribute
// only their ripple-through adder delays.
double critical_path_delay(const MultiplierArray& array, const PartitionPlan& plan,
                           const TechConstants& tc);
double critical_path_delay(unsigned n, const PartitionPlan& plan, const TechConstants& tc);

// Same constant propagation applied to an arbitrary netlist: `live` marks
// which primary inputs carry signals, constants[k] gives the value of the
// non-live ones.
double static_path_delay(const Netlist& netlist, const std::vector<bool>& live,
                         const std::vector<std::uint8_t>& constants,
                         const TechConstants& tc);

// Evaluates the operand-pair sequence in order with chained toggle state.
// Returns {energy, avg_power} with avg_power = energy * frequency / steps.
std::pair<double, double>
workload_energy(const MultiplierArray& array, const PartitionPlan& plan,
                const std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>>& steps,
                const TechConstants& tc);

// Per-field candidate/baseline ratios; every baseline field must be positive.
CostRatios compare_report(const CostReport& candidate, const CostReport& baseline);

// Published reference ratios rendered next to measured ones.
struct ReferenceRatios {
    double delay = 1.0;
    double power = 1.0;
};
inline constexpr ReferenceRatios kFirReference{0.70, 0.65};
inline constexpr ReferenceRatios kFftReference{0.66, 0.51};
inline constexpr double kAreaReference = 0.83;

// 32-bit multiplier comparison points (180-nm class); delay in ns, power
// in mW, area in um^2, each with its ratio to the conventional column.
struct ReferenceDesign {
    const char* name;
    double delay_ns, delay_ratio;
    double power_mw, power_ratio;
    double area_um2, area_ratio;
};
inline constexpr ReferenceDesign kReferenceDesigns[] = {
    {"cmos_rca", 11.8, 1.00, 10.9, 1.00, 61.7, 1.00},
    {"cmos_twin_precision", 11.9, 1.01, 11.0, 1.01, 65.1, 1.06},
    {"cmos_scalable", 17.3, 1.47, 18.0, 1.65, 130.0, 2.11},
    {"memristor_cmos", 12.5, 1.06, 11.2, 1.03, 51.2, 0.83},
};

} // namespace remul
