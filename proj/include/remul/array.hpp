#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "remul/gates.hpp"

namespace remul {

// Per-column (h) and per-row (v) control bits. Index 0 is bit position 0
// (LSB); the string renderings are MSB-first.
struct ControlVectors {
    std::vector<std::uint8_t> h;
    std::vector<std::uint8_t> v;

    std::string h_string() const;
    std::string v_string() const;
    static std::vector<std::uint8_t> bits_from_string(const std::string& msb_first);
};

// One independent sub-multiplier occupying bit positions
// [offset, offset + width). parity is the segment's v-bit.
struct Segment {
    unsigned offset = 0;
    unsigned width = 0;
    std::uint8_t parity = 0;
};

struct PartitionPlan {
    unsigned n = 0;
    std::vector<Segment> segments;
    ControlVectors ctrl;
};

// mask[i][j] = h[i] XOR v[j]; i indexes h (columns), j indexes v (rows).
using BitMatrix = std::vector<std::vector<std::uint8_t>>;
BitMatrix enabled_mask(const ControlVectors& ctrl);

// Packs the requested widths from bit position 0 upward with alternating
// parities and derives the control vectors. Accepts a single segment of
// any width, or exactly two segments that fill the array; anything else is
// not expressible with one h/v pair without cross-partition exposure.
PartitionPlan plan_partitions(unsigned n, const std::vector<unsigned>& widths);

struct ArrayTrace {
    std::uint64_t raw_product = 0;
    std::vector<std::uint8_t> toggled; // per gate
    std::uint64_t toggle_count = 0;
    double critical_delay = 0.0;       // max output arrival this evaluation, s
};

enum class Technology {
    MemristorCmos, // gated blocks: enable XOR + 3-input AND + full adder
    CmosBaseline,  // plain blocks: 2-input AND + full adder, CMOS gates
};

// N x N array of 1-bit multiplier blocks wired as a ripple-carry array.
// Block (row i, col j) computes pp = a_j * b_i * (h[j] ^ v[i]) and adds it
// with a full adder; carries ripple along the row, sums descend
// diagonally, and the previous row's final carry enters the next row's
// top block, so the last row resolves the upper product bits. Disabled
// blocks add zero and pass partial sums through unchanged (the
// propagation tunnel).
class MultiplierArray {
public:
    explicit MultiplierArray(unsigned n, Technology tech = Technology::MemristorCmos);

    unsigned n() const { return n_; }
    Technology technology() const { return tech_; }
    const Netlist& netlist() const { return netlist_; }

    // Gate index range [first, last) of block (row, col).
    std::pair<std::uint32_t, std::uint32_t> block_gate_range(unsigned row,
                                                             unsigned col) const;

    // Input net layout: a bus, b bus, then (memristor technology only)
    // h and v control bits, then one constant-zero net.
    std::vector<std::uint8_t> pack_inputs(std::uint64_t a_bus, std::uint64_t b_bus,
                                          const ControlVectors& ctrl) const;

    // Logic-only product of the raw buses; scratch avoids reallocation in
    // exhaustive sweeps.
    std::uint64_t evaluate_product(std::uint64_t a_bus, std::uint64_t b_bus,
                                   const ControlVectors& ctrl,
                                   std::vector<std::uint8_t>& scratch) const;

    // Full evaluation with toggle accounting. chain_state, when supplied,
    // carries the previous gate snapshot across calls and is updated.
    ArrayTrace evaluate(std::uint64_t a_bus, std::uint64_t b_bus,
                        const ControlVectors& ctrl, const MemristorParams& params,
                        const GateModels& models,
                        std::vector<std::uint8_t>* chain_state = nullptr) const;

private:
    unsigned n_;
    Technology tech_;
    Netlist netlist_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> block_ranges_;
};

// Places each operand pair at its segment's bit positions and evaluates
// the array once.
ArrayTrace simulate_multiply(const MultiplierArray& array, const PartitionPlan& plan,
                             const std::vector<std::pair<std::uint64_t, std::uint64_t>>& operands,
                             const MemristorParams& params, const GateModels& models,
                             std::vector<std::uint8_t>* chain_state = nullptr);

// Segment at offset o, width w reads (raw >> 2o) mod 2^(2w).
std::vector<std::uint64_t> extract_products(const PartitionPlan& plan,
                                            std::uint64_t raw_product);

// plan_partitions + simulate_multiply + extract_products with default
// device parameters.
std::vector<std::uint64_t> multiply(unsigned n, const std::vector<unsigned>& widths,
                                    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);

// A and B bus integers with each operand shifted to its segment offset.
std::pair<std::uint64_t, std::uint64_t>
pack_operands(const PartitionPlan& plan,
              const std::vector<std::pair<std::uint64_t, std::uint64_t>>& operands);

} // namespace remul
