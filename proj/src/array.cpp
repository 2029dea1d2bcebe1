#include "remul/array.hpp"

#include <algorithm>

namespace remul {

namespace {

std::uint64_t width_mask(unsigned bits) {
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

} // namespace

std::string ControlVectors::h_string() const {
    std::string s(h.size(), '0');
    for (std::size_t k = 0; k < h.size(); ++k) {
        s[h.size() - 1 - k] = h[k] ? '1' : '0';
    }
    return s;
}

std::string ControlVectors::v_string() const {
    std::string s(v.size(), '0');
    for (std::size_t k = 0; k < v.size(); ++k) {
        s[v.size() - 1 - k] = v[k] ? '1' : '0';
    }
    return s;
}

std::vector<std::uint8_t> ControlVectors::bits_from_string(const std::string& msb_first) {
    std::vector<std::uint8_t> bits(msb_first.size(), 0);
    for (std::size_t k = 0; k < msb_first.size(); ++k) {
        const char c = msb_first[msb_first.size() - 1 - k];
        if (c != '0' && c != '1') {
            throw ValidationError("ControlVectors: string must contain only 0/1");
        }
        bits[k] = c == '1' ? 1 : 0;
    }
    return bits;
}

BitMatrix enabled_mask(const ControlVectors& ctrl) {
    if (ctrl.h.size() != ctrl.v.size()) {
        throw ValidationError("enabled_mask: h and v must have equal length");
    }
    const std::size_t n = ctrl.h.size();
    BitMatrix mask(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            mask[i][j] = ctrl.h[i] ^ ctrl.v[j];
        }
    }
    return mask;
}

PartitionPlan plan_partitions(unsigned n, const std::vector<unsigned>& widths) {
    if (n != 2 && n != 4 && n != 8 && n != 16 && n != 32) {
        throw ValidationError("plan_partitions: array width must be one of {2, 4, 8, 16, 32}");
    }
    if (widths.empty()) {
        throw ValidationError("plan_partitions: widths must not be empty");
    }
    if (widths.size() > 2) {
        throw UnsupportedPartitioning(
            "UnsupportedPartitioning: more than 2 widths requested; three or more "
            "diagonal partitions are not expressible with a single h/v pair");
    }
    unsigned total = 0;
    for (unsigned w : widths) {
        if (w == 0) {
            throw ZeroWidth("ZeroWidth: partition widths must be >= 1");
        }
        total += w;
    }
    if (total > n) {
        throw WidthOverflow("WidthOverflow: partition widths sum to " +
                            std::to_string(total) + " > " + std::to_string(n));
    }
    if (widths.size() == 2 && total != n) {
        // A trailing free region next to two live segments would be
        // XOR-enabled against one of them, exposing that partition to
        // out-of-segment bus bits.
        throw UnsupportedPartitioning(
            "UnsupportedPartitioning: a two-segment plan must fill the array "
            "(sum of widths == n)");
    }

    PartitionPlan plan;
    plan.n = n;
    plan.ctrl.h.assign(n, 0);
    plan.ctrl.v.assign(n, 0);

    unsigned offset = 0;
    for (std::size_t s = 0; s < widths.size(); ++s) {
        const std::uint8_t parity = s % 2 == 0 ? 1 : 0; // segment v-bit
        plan.segments.push_back(Segment{offset, widths[s], parity});
        for (unsigned k = offset; k < offset + widths[s]; ++k) {
            plan.ctrl.h[k] = static_cast<std::uint8_t>(1 - parity);
            plan.ctrl.v[k] = parity;
        }
        offset += widths[s];
    }
    // Free positions take the opposite parity of the first segment, which
    // confines the stray enabled region to the free diagonal square where
    // both operand buses are held at zero.
    for (unsigned k = offset; k < n; ++k) {
        plan.ctrl.h[k] = 1;
        plan.ctrl.v[k] = 0;
    }
    return plan;
}

MultiplierArray::MultiplierArray(unsigned n, Technology tech) : n_(n), tech_(tech) {
    if (n > 32) {
        throw ValidationError("MultiplierArray: width above 32 exceeds the 64-bit product range");
    }
    const bool mr = tech == Technology::MemristorCmos;
    const GateKind nand_kind = mr ? GateKind::MrNand : GateKind::CmosNand;

    NetlistBuilder b;
    std::vector<NetId> a_bus(n), b_bus(n), h_bits, v_bits;
    for (unsigned j = 0; j < n; ++j) {
        a_bus[j] = b.add_input("a" + std::to_string(j));
    }
    for (unsigned i = 0; i < n; ++i) {
        b_bus[i] = b.add_input("b" + std::to_string(i));
    }
    if (mr) {
        h_bits.resize(n);
        v_bits.resize(n);
        for (unsigned j = 0; j < n; ++j) {
            h_bits[j] = b.add_input("h" + std::to_string(j));
        }
        for (unsigned i = 0; i < n; ++i) {
            v_bits[i] = b.add_input("v" + std::to_string(i));
        }
    }
    const NetId zero = b.add_input("zero");

    block_ranges_.resize(std::size_t{n} * n);
    std::vector<NetId> product(n > 0 ? 2 * n : 0, zero);
    std::vector<NetId> row_sums(n, zero); // s_out of the previous row
    NetId row_carry = zero;               // c_out of the previous row's top block

    for (unsigned i = 0; i < n; ++i) {
        std::vector<NetId> sums(n, zero);
        NetId carry = zero;
        for (unsigned j = 0; j < n; ++j) {
            const NetId sin = i == 0 ? zero
                              : j == n - 1 ? row_carry
                                           : row_sums[j + 1];
            const auto first = static_cast<std::uint32_t>(b.gate_count());
            NetId pp;
            if (mr) {
                const NetId enable = emit_xor(b, h_bits[j], v_bits[i], nand_kind);
                pp = emit_and3(b, a_bus[j], b_bus[i], enable, nand_kind);
            } else {
                pp = emit_and2(b, a_bus[j], b_bus[i], nand_kind);
            }
            const auto [sum, cout] = emit_full_adder(b, pp, sin, carry, nand_kind);
            block_ranges_[std::size_t{i} * n + j] = {
                first, static_cast<std::uint32_t>(b.gate_count())};
            sums[j] = sum;
            carry = cout;
        }
        product[i] = sums[0];
        row_sums = std::move(sums);
        row_carry = carry;
    }
    for (unsigned m = 0; m + 1 < n; ++m) {
        product[n + m] = row_sums[m + 1];
    }
    if (n > 0) {
        product[2 * n - 1] = row_carry;
    }
    for (unsigned k = 0; k < 2 * n; ++k) {
        b.mark_output(product[k], "p" + std::to_string(k));
    }
    netlist_ = b.finish();
}

std::pair<std::uint32_t, std::uint32_t>
MultiplierArray::block_gate_range(unsigned row, unsigned col) const {
    if (row >= n_ || col >= n_) {
        throw ValidationError("block_gate_range: block index out of range");
    }
    return block_ranges_[std::size_t{row} * n_ + col];
}

std::vector<std::uint8_t> MultiplierArray::pack_inputs(std::uint64_t a_bus,
                                                       std::uint64_t b_bus,
                                                       const ControlVectors& ctrl) const {
    std::vector<std::uint8_t> inputs(netlist_.input_count, 0);
    std::size_t pos = 0;
    for (unsigned j = 0; j < n_; ++j) {
        inputs[pos++] = static_cast<std::uint8_t>((a_bus >> j) & 1);
    }
    for (unsigned i = 0; i < n_; ++i) {
        inputs[pos++] = static_cast<std::uint8_t>((b_bus >> i) & 1);
    }
    if (tech_ == Technology::MemristorCmos) {
        if (ctrl.h.size() != n_ || ctrl.v.size() != n_) {
            throw ValidationError("pack_inputs: control vectors must have length n");
        }
        for (unsigned j = 0; j < n_; ++j) {
            inputs[pos++] = ctrl.h[j];
        }
        for (unsigned i = 0; i < n_; ++i) {
            inputs[pos++] = ctrl.v[i];
        }
    }
    // Trailing net is the constant zero.
    return inputs;
}

std::uint64_t MultiplierArray::evaluate_product(std::uint64_t a_bus, std::uint64_t b_bus,
                                                const ControlVectors& ctrl,
                                                std::vector<std::uint8_t>& scratch) const {
    const std::vector<std::uint8_t> inputs = pack_inputs(a_bus, b_bus, ctrl);
    eval_logic(netlist_, inputs, scratch);
    std::uint64_t raw = 0;
    for (std::size_t k = 0; k < netlist_.outputs.size(); ++k) {
        raw |= std::uint64_t{scratch[netlist_.outputs[k]]} << k;
    }
    return raw;
}

ArrayTrace MultiplierArray::evaluate(std::uint64_t a_bus, std::uint64_t b_bus,
                                     const ControlVectors& ctrl,
                                     const MemristorParams& params,
                                     const GateModels& models,
                                     std::vector<std::uint8_t>* chain_state) const {
    const std::vector<std::uint8_t> inputs = pack_inputs(a_bus, b_bus, ctrl);
    const std::vector<std::uint8_t>* previous =
        chain_state && !chain_state->empty() ? chain_state : nullptr;
    NetlistEval eval = eval_netlist(netlist_, inputs, params, models, previous);

    ArrayTrace trace;
    for (std::size_t k = 0; k < eval.outputs.size(); ++k) {
        trace.raw_product |= std::uint64_t{eval.outputs[k]} << k;
        trace.critical_delay = std::max(trace.critical_delay, eval.path_delays[k]);
    }
    trace.toggled = std::move(eval.toggled);
    trace.toggle_count = eval.toggle_count;
    if (chain_state) {
        *chain_state = std::move(eval.gate_values);
    }
    return trace;
}

std::pair<std::uint64_t, std::uint64_t>
pack_operands(const PartitionPlan& plan,
              const std::vector<std::pair<std::uint64_t, std::uint64_t>>& operands) {
    if (operands.size() != plan.segments.size()) {
        throw ValidationError("simulate_multiply: expected one operand pair per segment (" +
                              std::to_string(plan.segments.size()) + "), got " +
                              std::to_string(operands.size()));
    }
    std::uint64_t a_bus = 0;
    std::uint64_t b_bus = 0;
    for (std::size_t s = 0; s < operands.size(); ++s) {
        const Segment& seg = plan.segments[s];
        const auto [a, x] = operands[s];
        const std::uint64_t limit = width_mask(seg.width);
        if (a > limit || x > limit) {
            throw OperandOverflow("OperandOverflow: operand exceeds " +
                                  std::to_string(seg.width) + "-bit segment range");
        }
        a_bus |= a << seg.offset;
        b_bus |= x << seg.offset;
    }
    return {a_bus, b_bus};
}

ArrayTrace simulate_multiply(const MultiplierArray& array, const PartitionPlan& plan,
                             const std::vector<std::pair<std::uint64_t, std::uint64_t>>& operands,
                             const MemristorParams& params, const GateModels& models,
                             std::vector<std::uint8_t>* chain_state) {
    if (plan.n != array.n()) {
        throw ValidationError("simulate_multiply: plan width does not match the array");
    }
    const auto [a_bus, b_bus] = pack_operands(plan, operands);
    return array.evaluate(a_bus, b_bus, plan.ctrl, params, models, chain_state);
}

std::vector<std::uint64_t> extract_products(const PartitionPlan& plan,
                                            std::uint64_t raw_product) {
    std::vector<std::uint64_t> products;
    products.reserve(plan.segments.size());
    for (const Segment& seg : plan.segments) {
        products.push_back((raw_product >> (2 * seg.offset)) & width_mask(2 * seg.width));
    }
    return products;
}

std::vector<std::uint64_t> multiply(unsigned n, const std::vector<unsigned>& widths,
                                    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
    const PartitionPlan plan = plan_partitions(n, widths);
    const MultiplierArray array(n);
    const auto [a_bus, b_bus] = pack_operands(plan, pairs);
    std::vector<std::uint8_t> scratch;
    const std::uint64_t raw = array.evaluate_product(a_bus, b_bus, plan.ctrl, scratch);
    return extract_products(plan, raw);
}

} // namespace remul
