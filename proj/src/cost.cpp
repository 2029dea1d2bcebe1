#include "remul/cost.hpp"

#include <algorithm>

namespace remul {

namespace {

enum : std::uint8_t { kZero = 0, kOne = 1, kLive = 2 };

std::uint8_t const_nand(std::uint8_t a, std::uint8_t b) {
    if (a == kZero || b == kZero) return kOne;
    if (a == kOne && b == kOne) return kZero;
    return kLive;
}

std::uint8_t const_nor(std::uint8_t a, std::uint8_t b) {
    if (a == kOne || b == kOne) return kZero;
    if (a == kZero && b == kZero) return kOne;
    return kLive;
}

} // namespace

double TechConstants::area_of(GateKind kind) const {
    switch (kind) {
    case GateKind::MrNand: return area_mr_nand;
    case GateKind::MrNor: return area_mr_nor;
    case GateKind::CmosInv: return area_cmos_inv;
    case GateKind::CmosNand: return area_cmos_nand;
    case GateKind::CmosNor: return area_cmos_nor;
    }
    return 0.0;
}

void TechConstants::validate() const {
    device.validate();
    for (const GateModel* m : {&models.mr_nand, &models.mr_nor, &models.cmos_inv,
                               &models.cmos_nand, &models.cmos_nor}) {
        m->validate();
    }
    for (double a : {area_mr_nand, area_mr_nor, area_cmos_inv, area_cmos_nand,
                     area_cmos_nor, frequency_hz}) {
        if (!(a > 0.0)) {
            throw ValidationError("TechConstants: areas and frequency must be positive");
        }
    }
}

double area_estimate(unsigned n, Technology tech, const TechConstants& tc) {
    const MultiplierArray array(n, tech);
    double area = 0.0;
    for (const Gate& g : array.netlist().gates) {
        area += tc.area_of(g.kind);
    }
    return area;
}

double static_path_delay(const Netlist& netlist, const std::vector<bool>& live,
                         const std::vector<std::uint8_t>& constants,
                         const TechConstants& tc) {
    if (live.size() != netlist.input_count || constants.size() != netlist.input_count) {
        throw ValidationError("static_path_delay: input annotation size mismatch");
    }

    std::vector<std::uint8_t> value(netlist.net_count, kZero);
    std::vector<double> arrival(netlist.net_count, 0.0);
    for (std::uint32_t k = 0; k < netlist.input_count; ++k) {
        value[k] = live[k] ? kLive : (constants[k] ? kOne : kZero);
    }

    for (const Gate& g : netlist.gates) {
        const std::uint8_t a = value[g.in0];
        const std::uint8_t b = g.in1 == kNoNet ? std::uint8_t{kZero} : value[g.in1];
        std::uint8_t out;
        switch (g.kind) {
        case GateKind::MrNand:
        case GateKind::CmosNand:
            out = const_nand(a, b);
            break;
        case GateKind::MrNor:
        case GateKind::CmosNor:
            out = const_nor(a, b);
            break;
        case GateKind::CmosInv:
        default:
            out = a == kLive ? kLive : (a == kOne ? kZero : kOne);
            break;
        }
        value[g.out] = out;
        if (out == kLive) {
            double at = 0.0;
            if (a == kLive) {
                at = arrival[g.in0];
            }
            if (g.in1 != kNoNet && value[g.in1] == kLive) {
                at = std::max(at, arrival[g.in1]);
            }
            arrival[g.out] = at + worst_case_delay(g.kind, tc.device, tc.models.of(g.kind));
        }
    }

    double worst = 0.0;
    for (NetId net : netlist.outputs) {
        if (value[net] == kLive) {
            worst = std::max(worst, arrival[net]);
        }
    }
    return worst;
}

double critical_path_delay(const MultiplierArray& array, const PartitionPlan& plan,
                           const TechConstants& tc) {
    if (plan.n != array.n()) {
        throw ValidationError("critical_path_delay: plan width does not match the array");
    }
    const unsigned n = array.n();
    const Netlist& netlist = array.netlist();

    std::vector<bool> live(netlist.input_count, false);
    std::vector<std::uint8_t> constants(netlist.input_count, 0);
    for (const Segment& seg : plan.segments) {
        for (unsigned k = seg.offset; k < seg.offset + seg.width; ++k) {
            live[k] = true;     // a bus
            live[n + k] = true; // b bus
        }
    }
    if (array.technology() == Technology::MemristorCmos) {
        for (unsigned k = 0; k < n; ++k) {
            constants[2 * n + k] = plan.ctrl.h[k];
            constants[3 * n + k] = plan.ctrl.v[k];
        }
    }
    return static_path_delay(netlist, live, constants, tc);
}

double critical_path_delay(unsigned n, const PartitionPlan& plan, const TechConstants& tc) {
    return critical_path_delay(MultiplierArray(n), plan, tc);
}

std::pair<double, double>
workload_energy(const MultiplierArray& array, const PartitionPlan& plan,
                const std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>>& steps,
                const TechConstants& tc) {
    double energy = 0.0;
    std::vector<std::uint8_t> state;
    for (const auto& operands : steps) {
        const ArrayTrace trace =
            simulate_multiply(array, plan, operands, tc.device, tc.models, &state);
        energy += toggle_energy(array.netlist(), trace.toggled, tc.models);
    }
    const double power =
        steps.empty() ? 0.0 : energy * tc.frequency_hz / static_cast<double>(steps.size());
    return {energy, power};
}

CostRatios compare_report(const CostReport& candidate, const CostReport& baseline) {
    if (!(baseline.delay_s > 0.0) || !(baseline.avg_power_w > 0.0) ||
        !(baseline.area_units > 0.0)) {
        throw ValidationError("compare_report: baseline fields must be positive");
    }
    CostRatios r;
    r.delay = candidate.delay_s / baseline.delay_s;
    r.power = candidate.avg_power_w / baseline.avg_power_w;
    r.area = candidate.area_units / baseline.area_units;
    return r;
}

} // namespace remul
