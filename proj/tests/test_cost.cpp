#include <doctest.h>

#include <random>

#include "remul/cost.hpp"

using namespace remul;

namespace {

const TechConstants kTech{};

PartitionPlan single_block_plan() {
    PartitionPlan plan;
    plan.n = 1;
    plan.segments.push_back(Segment{0, 1, 1});
    plan.ctrl.h = {0};
    plan.ctrl.v = {1};
    return plan;
}

std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>>
random_steps(unsigned seed, std::size_t count, const PartitionPlan& plan) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> steps(count);
    for (auto& step : steps) {
        for (const Segment& seg : plan.segments) {
            const std::uint64_t mask = (1ull << seg.width) - 1;
            step.emplace_back(rng() & mask, rng() & mask);
        }
    }
    return steps;
}

} // namespace

TEST_CASE("a single enabled block has a positive critical path") {
    const MultiplierArray array(1);
    const double d = critical_path_delay(array, single_block_plan(), kTech);
    CHECK(d > 0.0);
    // The lone block is one AND chain plus one full adder deep.
    CHECK(d < 20.0 * worst_case_delay(GateKind::MrNand, kTech.device, kTech.models.mr_nand));
}

TEST_CASE("narrower configurations have shorter critical paths") {
    const MultiplierArray array(8);
    const double d4 = critical_path_delay(array, plan_partitions(8, {4}), kTech);
    const double d8 = critical_path_delay(array, plan_partitions(8, {8}), kTech);
    CHECK(d4 > 0.0);
    CHECK(d4 < d8);

    double previous = 0.0;
    for (unsigned w = 1; w <= 8; ++w) {
        const double d = critical_path_delay(array, plan_partitions(8, {w}), kTech);
        CHECK(d >= previous);
        previous = d;
    }
}

TEST_CASE("split plan delay sits between the lone sub-array and the full array") {
    const MultiplierArray array(8);
    const double d44 = critical_path_delay(array, plan_partitions(8, {4, 4}), kTech);
    const double d4 = critical_path_delay(array, plan_partitions(8, {4}), kTech);
    const double d8 = critical_path_delay(array, plan_partitions(8, {8}), kTech);
    CHECK(d44 >= d4);
    CHECK(d44 < d8);
}

TEST_CASE("empty workload consumes nothing") {
    const MultiplierArray array(8);
    const PartitionPlan plan = plan_partitions(8, {8});
    const auto [energy, power] = workload_energy(array, plan, {}, kTech);
    CHECK(energy == 0.0);
    CHECK(power == 0.0);
}

TEST_CASE("repeating the same operands adds no energy after the first step") {
    const MultiplierArray array(8);
    const PartitionPlan plan = plan_partitions(8, {8});
    const std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> once = {{{141, 77}}};
    const std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> thrice = {
        {{141, 77}}, {{141, 77}}, {{141, 77}}};
    const auto [e1, p1] = workload_energy(array, plan, once, kTech);
    const auto [e3, p3] = workload_energy(array, plan, thrice, kTech);
    CHECK(e3 == doctest::Approx(e1));
    CHECK(p3 == doctest::Approx(e1 * kTech.frequency_hz / 3.0));
}

TEST_CASE("two half-width products per step cost less than one full-width product") {
    const MultiplierArray array(8);
    const PartitionPlan wide = plan_partitions(8, {8});
    const PartitionPlan split = plan_partitions(8, {4, 4});

    // The same random 8-bit workload: the wide plan multiplies each pair
    // outright, the split plan computes the two nibble sub-products of
    // the same pair per step. Half the array stays out of the partial
    // products, so the split steps toggle less.
    std::mt19937_64 rng(31);
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> wide_steps;
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> split_steps;
    for (int k = 0; k < 400; ++k) {
        const std::uint64_t a = rng() & 0xFF;
        const std::uint64_t b = rng() & 0xFF;
        wide_steps.push_back({{a, b}});
        split_steps.push_back({{a & 15, b & 15}, {a >> 4, b >> 4}});
    }
    const auto [e_wide, p_wide] = workload_energy(array, wide, wide_steps, kTech);
    const auto [e_split, p_split] = workload_energy(array, split, split_steps, kTech);
    CHECK(e_split < e_wide);
    CHECK(p_split < p_wide);
}

TEST_CASE("energy of concatenated workloads is the sum of the parts") {
    const MultiplierArray array(8);
    const PartitionPlan plan = plan_partitions(8, {5, 3});
    const auto steps = random_steps(37, 60, plan);

    const auto [e_all, unused] = workload_energy(array, plan, steps, kTech);

    // Same sequence evaluated with explicitly chained state.
    double e_sum = 0.0;
    std::vector<std::uint8_t> state;
    for (const auto& step : steps) {
        const ArrayTrace t =
            simulate_multiply(array, plan, step, kTech.device, kTech.models, &state);
        e_sum += toggle_energy(array.netlist(), t.toggled, kTech.models);
    }
    CHECK(e_all == doctest::Approx(e_sum));
}

TEST_CASE("operand changes in one partition leave the other partition's gates silent") {
    const MultiplierArray array(8);
    const PartitionPlan plan = plan_partitions(8, {4, 4});

    std::vector<std::uint8_t> state;
    simulate_multiply(array, plan, {{3, 5}, {7, 9}}, kTech.device, kTech.models, &state);
    const ArrayTrace trace =
        simulate_multiply(array, plan, {{12, 14}, {7, 9}}, kTech.device, kTech.models, &state);

    // Partition B occupies rows/cols 4..7; none of its blocks' gates may
    // toggle when only partition A's operands changed.
    for (unsigned row = 4; row < 8; ++row) {
        for (unsigned col = 4; col < 8; ++col) {
            const auto [first, last] = array.block_gate_range(row, col);
            for (std::uint32_t g = first; g < last; ++g) {
                REQUIRE(trace.toggled[g] == 0);
            }
        }
    }
}

TEST_CASE("area grows with the block count and vanishes at n = 0") {
    CHECK(area_estimate(0, Technology::MemristorCmos, kTech) == 0.0);
    const double a4 = area_estimate(4, Technology::MemristorCmos, kTech);
    const double a8 = area_estimate(8, Technology::MemristorCmos, kTech);
    CHECK(a8 == doctest::Approx(4.0 * a4));
}

TEST_CASE("32-bit area ratio lands on the published 0.83") {
    const double mr = area_estimate(32, Technology::MemristorCmos, kTech);
    const double cmos = area_estimate(32, Technology::CmosBaseline, kTech);
    const double ratio = mr / cmos;
    CHECK(ratio > kAreaReference - 0.05);
    CHECK(ratio < kAreaReference + 0.05);
}

TEST_CASE("compare_report ratios") {
    CostReport a;
    a.delay_s = 1e-9;
    a.avg_power_w = 2e-3;
    a.area_units = 100.0;
    const CostRatios self = compare_report(a, a);
    CHECK(self.delay == doctest::Approx(1.0));
    CHECK(self.power == doctest::Approx(1.0));
    CHECK(self.area == doctest::Approx(1.0));

    CostReport zero;
    CHECK_THROWS_AS(compare_report(a, zero), ValidationError);
}

TEST_CASE("baseline technology carries no control inputs") {
    const MultiplierArray baseline(4, Technology::CmosBaseline);
    // a bus + b bus + constant zero.
    CHECK(baseline.netlist().input_count == 9);
    std::vector<std::uint8_t> scratch;
    ControlVectors none;
    CHECK(baseline.evaluate_product(13, 11, none, scratch) == 143);
}
