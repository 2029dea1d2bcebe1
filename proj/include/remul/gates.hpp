#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "remul/errors.hpp"
#include "remul/memristor.hpp"

namespace remul {

// Gate primitives. The MR_* gates are a memristor pair feeding a CMOS
// buffer stage: the pair forms a resistive divider whose midpoint settles
// with an R*C_g time constant, R being the parallel combination of the two
// memristor resistances for the applied input bits.
enum class GateKind : std::uint8_t {
    MrNand,
    MrNor,
    CmosInv,
    CmosNand,
    CmosNor,
};

const char* to_string(GateKind kind);
bool is_memristor_gate(GateKind kind);

// Electrical figures for one gate kind.
struct GateModel {
    double c_g = 2e-15;               // buffer gate capacitance, F
    double energy_per_toggle = 5e-15; // J per output transition
    double fixed_delay = 2e-11;       // s, CMOS stage contribution

    void validate() const;
};

struct GateModels {
    GateModel mr_nand;
    GateModel mr_nor;
    GateModel cmos_inv;
    GateModel cmos_nand;
    GateModel cmos_nor;

    const GateModel& of(GateKind kind) const;
    static GateModels defaults();
};

struct GateEvalResult {
    int output = 0;
    double r_eq = 0.0;  // ohms; 0 for pure-CMOS kinds
    double delay = 0.0; // s
};

// Evaluates one gate. MR gate delay is ln(2) * r_eq * c_g + fixed_delay
// (time for the divider midpoint to cross the 50% threshold); pure-CMOS
// kinds contribute fixed_delay only.
GateEvalResult eval_gate(GateKind kind, std::span<const std::uint8_t> inputs,
                         const MemristorParams& params, const GateModel& model);

// Slowest delay the gate can exhibit over admissible memristor states;
// used for static timing.
double worst_case_delay(GateKind kind, const MemristorParams& params,
                        const GateModel& model);

using NetId = std::uint32_t;
inline constexpr NetId kNoNet = 0xffffffffu;

struct Gate {
    GateKind kind;
    NetId in0;
    NetId in1; // kNoNet for inverters
    NetId out;
};

// Gate graph in topological order. Nets [0, input_count) are the primary
// inputs; every other net is driven by exactly one gate. Acyclic by
// construction: a gate may only read nets that already exist.
struct Netlist {
    std::vector<Gate> gates;
    std::uint32_t net_count = 0;
    std::uint32_t input_count = 0;
    std::vector<NetId> outputs;
    std::vector<std::string> input_names;
    std::vector<std::string> output_names;
};

class NetlistBuilder {
public:
    NetId add_input(std::string name);
    NetId add_gate(GateKind kind, NetId a, NetId b = kNoNet);
    NetId nand(NetId a, NetId b) { return add_gate(GateKind::MrNand, a, b); }
    NetId nor(NetId a, NetId b) { return add_gate(GateKind::MrNor, a, b); }
    NetId inv(NetId a) { return add_gate(GateKind::CmosInv, a); }
    void mark_output(NetId net, std::string name);
    std::size_t gate_count() const { return netlist_.gates.size(); }
    Netlist finish();

private:
    void require_net(NetId net) const;
    Netlist netlist_;
    bool finished_ = false;
};

// Composite emitters shared by the standalone builders and the array
// generator. nand_kind selects the logic family (MrNand or CmosNand);
// inverters are always CMOS.
NetId emit_xor(NetlistBuilder& b, NetId a, NetId x, GateKind nand_kind = GateKind::MrNand);
NetId emit_and2(NetlistBuilder& b, NetId a, NetId x, GateKind nand_kind = GateKind::MrNand);
NetId emit_and3(NetlistBuilder& b, NetId a, NetId x, NetId y,
                GateKind nand_kind = GateKind::MrNand);
// Nine-gate full adder; returns {sum, cout}.
std::pair<NetId, NetId> emit_full_adder(NetlistBuilder& b, NetId a, NetId x, NetId cin,
                                        GateKind nand_kind = GateKind::MrNand);

Netlist build_xor();
Netlist build_and3();
Netlist build_full_adder();

struct NetlistEval {
    std::vector<std::uint8_t> outputs;
    std::vector<std::uint8_t> gate_values; // snapshot, one entry per gate
    std::vector<std::uint8_t> toggled;     // 1 where the gate output changed
    std::uint64_t toggle_count = 0;
    std::vector<double> path_delays;       // per primary output, s
};

// Full evaluation: logic values, per-gate toggles relative to `previous`
// (all-zero state when null), and longest-path arrival per output using
// this evaluation's state-dependent gate delays.
NetlistEval eval_netlist(const Netlist& netlist, std::span<const std::uint8_t> inputs,
                         const MemristorParams& params, const GateModels& models,
                         const std::vector<std::uint8_t>* previous = nullptr);

// Logic-only fast path; fills net_values (indexed by NetId).
void eval_logic(const Netlist& netlist, std::span<const std::uint8_t> inputs,
                std::vector<std::uint8_t>& net_values);

// Energy of one evaluation: sum of energy_per_toggle over toggled gates.
double toggle_energy(const Netlist& netlist, std::span<const std::uint8_t> toggled,
                     const GateModels& models);

// One gate per line: "<gate-id> <kind> <input-net> [<input-net>] -> <output-net>".
std::string export_netlist(const Netlist& netlist);

} // namespace remul
