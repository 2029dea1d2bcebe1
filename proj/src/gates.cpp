#include "remul/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace remul {

namespace {

constexpr double kLn2 = std::numbers::ln2;

bool needs_two_inputs(GateKind kind) {
    return kind != GateKind::CmosInv;
}

// Resistance a single memristor presents for an input bit. NAND-family
// gates drive a logic 1 into the low-resistance state; NOR-family gates
// use the inverted mapping.
double memristor_resistance(GateKind kind, std::uint8_t bit, const MemristorParams& p) {
    const bool low = (kind == GateKind::MrNand) ? bit != 0 : bit == 0;
    return low ? p.r_on : p.r_off;
}

std::uint8_t gate_logic(GateKind kind, std::uint8_t a, std::uint8_t b) {
    switch (kind) {
    case GateKind::MrNand:
    case GateKind::CmosNand:
        return static_cast<std::uint8_t>(!(a && b));
    case GateKind::MrNor:
    case GateKind::CmosNor:
        return static_cast<std::uint8_t>(!(a || b));
    case GateKind::CmosInv:
        return static_cast<std::uint8_t>(!a);
    }
    return 0;
}

} // namespace

const char* to_string(GateKind kind) {
    switch (kind) {
    case GateKind::MrNand: return "MR_NAND";
    case GateKind::MrNor: return "MR_NOR";
    case GateKind::CmosInv: return "CMOS_INV";
    case GateKind::CmosNand: return "CMOS_NAND";
    case GateKind::CmosNor: return "CMOS_NOR";
    }
    return "?";
}

bool is_memristor_gate(GateKind kind) {
    return kind == GateKind::MrNand || kind == GateKind::MrNor;
}

void GateModel::validate() const {
    if (!(c_g > 0.0)) {
        throw ValidationError("GateModel: c_g must be positive");
    }
    if (energy_per_toggle < 0.0) {
        throw ValidationError("GateModel: energy_per_toggle must be >= 0");
    }
    if (fixed_delay < 0.0) {
        throw ValidationError("GateModel: fixed_delay must be >= 0");
    }
}

const GateModel& GateModels::of(GateKind kind) const {
    switch (kind) {
    case GateKind::MrNand: return mr_nand;
    case GateKind::MrNor: return mr_nor;
    case GateKind::CmosInv: return cmos_inv;
    case GateKind::CmosNand: return cmos_nand;
    case GateKind::CmosNor: return cmos_nor;
    }
    return mr_nand;
}

GateModels GateModels::defaults() {
    GateModels m;
    m.mr_nand = GateModel{2e-15, 5e-15, 2e-11};
    m.mr_nor = GateModel{2e-15, 5e-15, 2e-11};
    m.cmos_inv = GateModel{2e-15, 3e-15, 2e-11};
    m.cmos_nand = GateModel{2e-15, 6e-15, 4e-11};
    m.cmos_nor = GateModel{2e-15, 6e-15, 4e-11};
    return m;
}

GateEvalResult eval_gate(GateKind kind, std::span<const std::uint8_t> inputs,
                         const MemristorParams& params, const GateModel& model) {
    const std::size_t expected = needs_two_inputs(kind) ? 2 : 1;
    if (inputs.size() != expected) {
        throw ValidationError(std::string("eval_gate: ") + to_string(kind) + " takes " +
                              std::to_string(expected) + " input(s), got " +
                              std::to_string(inputs.size()));
    }

    GateEvalResult result;
    const std::uint8_t a = inputs[0] ? 1 : 0;
    const std::uint8_t b = expected == 2 ? (inputs[1] ? 1 : 0) : 0;
    result.output = gate_logic(kind, a, b);

    if (is_memristor_gate(kind)) {
        const double ra = memristor_resistance(kind, a, params);
        const double rb = memristor_resistance(kind, b, params);
        result.r_eq = ra * rb / (ra + rb);
        result.delay = kLn2 * result.r_eq * model.c_g + model.fixed_delay;
    } else {
        result.r_eq = 0.0;
        result.delay = model.fixed_delay;
    }
    return result;
}

double worst_case_delay(GateKind kind, const MemristorParams& params,
                        const GateModel& model) {
    if (is_memristor_gate(kind)) {
        // Both memristors at r_off: the slowest admissible divider.
        return kLn2 * (params.r_off / 2.0) * model.c_g + model.fixed_delay;
    }
    return model.fixed_delay;
}

NetId NetlistBuilder::add_input(std::string name) {
    if (!netlist_.gates.empty()) {
        throw ValidationError("NetlistBuilder: inputs must be declared before gates");
    }
    const NetId id = netlist_.net_count++;
    netlist_.input_count = netlist_.net_count;
    netlist_.input_names.push_back(std::move(name));
    return id;
}

void NetlistBuilder::require_net(NetId net) const {
    if (net >= netlist_.net_count) {
        throw ValidationError("NetlistBuilder: gate reads an undefined net");
    }
}

NetId NetlistBuilder::add_gate(GateKind kind, NetId a, NetId b) {
    require_net(a);
    if (needs_two_inputs(kind)) {
        require_net(b);
    } else if (b != kNoNet) {
        throw ValidationError("NetlistBuilder: inverter takes a single input");
    }
    const NetId out = netlist_.net_count++;
    netlist_.gates.push_back(Gate{kind, a, needs_two_inputs(kind) ? b : kNoNet, out});
    return out;
}

void NetlistBuilder::mark_output(NetId net, std::string name) {
    require_net(net);
    netlist_.outputs.push_back(net);
    netlist_.output_names.push_back(std::move(name));
}

Netlist NetlistBuilder::finish() {
    if (finished_) {
        throw ValidationError("NetlistBuilder: finish called twice");
    }
    finished_ = true;
    return std::move(netlist_);
}

NetId emit_xor(NetlistBuilder& b, NetId a, NetId x, GateKind nand_kind) {
    const NetId n1 = b.add_gate(nand_kind, a, x);
    const NetId n2 = b.add_gate(nand_kind, a, n1);
    const NetId n3 = b.add_gate(nand_kind, x, n1);
    return b.add_gate(nand_kind, n2, n3);
}

NetId emit_and2(NetlistBuilder& b, NetId a, NetId x, GateKind nand_kind) {
    return b.inv(b.add_gate(nand_kind, a, x));
}

NetId emit_and3(NetlistBuilder& b, NetId a, NetId x, NetId y, GateKind nand_kind) {
    const NetId ab = emit_and2(b, a, x, nand_kind);
    return b.inv(b.add_gate(nand_kind, ab, y));
}

std::pair<NetId, NetId> emit_full_adder(NetlistBuilder& b, NetId a, NetId x, NetId cin,
                                        GateKind nand_kind) {
    // Nine-gate NAND form; the first XOR's head gate doubles as the
    // a*x term of the carry.
    const NetId n1 = b.add_gate(nand_kind, a, x);
    const NetId n2 = b.add_gate(nand_kind, a, n1);
    const NetId n3 = b.add_gate(nand_kind, x, n1);
    const NetId half = b.add_gate(nand_kind, n2, n3); // a ^ x
    const NetId m1 = b.add_gate(nand_kind, half, cin);
    const NetId m2 = b.add_gate(nand_kind, half, m1);
    const NetId m3 = b.add_gate(nand_kind, cin, m1);
    const NetId sum = b.add_gate(nand_kind, m2, m3);
    const NetId cout = b.add_gate(nand_kind, n1, m1);
    return {sum, cout};
}

Netlist build_xor() {
    NetlistBuilder b;
    const NetId a = b.add_input("a");
    const NetId x = b.add_input("b");
    b.mark_output(emit_xor(b, a, x), "y");
    return b.finish();
}

Netlist build_and3() {
    NetlistBuilder b;
    const NetId a = b.add_input("a");
    const NetId x = b.add_input("b");
    const NetId y = b.add_input("c");
    b.mark_output(emit_and3(b, a, x, y), "y");
    return b.finish();
}

Netlist build_full_adder() {
    NetlistBuilder b;
    const NetId a = b.add_input("a");
    const NetId x = b.add_input("b");
    const NetId cin = b.add_input("cin");
    const auto [sum, cout] = emit_full_adder(b, a, x, cin);
    b.mark_output(sum, "sum");
    b.mark_output(cout, "cout");
    return b.finish();
}

void eval_logic(const Netlist& netlist, std::span<const std::uint8_t> inputs,
                std::vector<std::uint8_t>& net_values) {
    if (inputs.size() != netlist.input_count) {
        throw ValidationError("eval_logic: expected " + std::to_string(netlist.input_count) +
                              " inputs, got " + std::to_string(inputs.size()));
    }
    net_values.resize(netlist.net_count);
    std::copy(inputs.begin(), inputs.end(), net_values.begin());
    for (const Gate& g : netlist.gates) {
        const std::uint8_t a = net_values[g.in0];
        const std::uint8_t b = g.in1 == kNoNet ? 0 : net_values[g.in1];
        net_values[g.out] = gate_logic(g.kind, a, b);
    }
}

NetlistEval eval_netlist(const Netlist& netlist, std::span<const std::uint8_t> inputs,
                         const MemristorParams& params, const GateModels& models,
                         const std::vector<std::uint8_t>* previous) {
    if (inputs.size() != netlist.input_count) {
        throw ValidationError("eval_netlist: expected " + std::to_string(netlist.input_count) +
                              " inputs, got " + std::to_string(inputs.size()));
    }
    if (previous && previous->size() != netlist.gates.size()) {
        throw ValidationError("eval_netlist: previous snapshot has wrong gate count");
    }

    std::vector<std::uint8_t> values(netlist.net_count, 0);
    std::copy(inputs.begin(), inputs.end(), values.begin());
    std::vector<double> arrival(netlist.net_count, 0.0);

    NetlistEval eval;
    eval.gate_values.resize(netlist.gates.size());
    eval.toggled.resize(netlist.gates.size());

    for (std::size_t k = 0; k < netlist.gates.size(); ++k) {
        const Gate& g = netlist.gates[k];
        const std::uint8_t a = values[g.in0];
        const std::uint8_t b = g.in1 == kNoNet ? 0 : values[g.in1];
        const std::uint8_t out = gate_logic(g.kind, a, b);
        values[g.out] = out;
        eval.gate_values[k] = out;

        const GateModel& model = models.of(g.kind);
        double delay = model.fixed_delay;
        if (is_memristor_gate(g.kind)) {
            const double ra = memristor_resistance(g.kind, a, params);
            const double rb = memristor_resistance(g.kind, b, params);
            delay += kLn2 * (ra * rb / (ra + rb)) * model.c_g;
        }
        double at = arrival[g.in0];
        if (g.in1 != kNoNet) {
            at = std::max(at, arrival[g.in1]);
        }
        arrival[g.out] = at + delay;

        const std::uint8_t prev = previous ? (*previous)[k] : 0;
        if (out != prev) {
            eval.toggled[k] = 1;
            ++eval.toggle_count;
        }
    }

    eval.outputs.reserve(netlist.outputs.size());
    eval.path_delays.reserve(netlist.outputs.size());
    for (NetId net : netlist.outputs) {
        eval.outputs.push_back(values[net]);
        eval.path_delays.push_back(arrival[net]);
    }
    return eval;
}

double toggle_energy(const Netlist& netlist, std::span<const std::uint8_t> toggled,
                     const GateModels& models) {
    if (toggled.size() != netlist.gates.size()) {
        throw ValidationError("toggle_energy: toggle vector has wrong gate count");
    }
    double energy = 0.0;
    for (std::size_t k = 0; k < toggled.size(); ++k) {
        if (toggled[k]) {
            energy += models.of(netlist.gates[k].kind).energy_per_toggle;
        }
    }
    return energy;
}

std::string export_netlist(const Netlist& netlist) {
    std::ostringstream os;
    for (std::size_t k = 0; k < netlist.gates.size(); ++k) {
        const Gate& g = netlist.gates[k];
        os << 'g' << k << ' ' << to_string(g.kind) << " n" << g.in0;
        if (g.in1 != kNoNet) {
            os << " n" << g.in1;
        }
        os << " -> n" << g.out << '\n';
    }
    return os.str();
}

} // namespace remul
