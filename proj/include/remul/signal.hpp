#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "remul/cost.hpp"

namespace remul {

// Sign-magnitude fixed-point sample. The multiplier array is unsigned, so
// signed workloads route magnitudes through the array and resolve signs
// separately.
struct FixedSample {
    int sign = 1; // +1 or -1
    std::uint64_t magnitude = 0;
    unsigned width = 8;

    std::int64_t value() const {
        return sign < 0 ? -static_cast<std::int64_t>(magnitude)
                        : static_cast<std::int64_t>(magnitude);
    }
    static FixedSample from_value(std::int64_t v, unsigned width);
    void validate() const;
};

struct ComplexFixed {
    FixedSample re;
    FixedSample im;
};

// Product magnitudes keep mult_bits; additions saturate the accumulated
// magnitude at 2^acc_bits - 1. Applied identically by the array-backed
// datapaths and their references.
struct TruncationPolicy {
    unsigned mult_bits = 16;
    unsigned acc_bits = 16;
};

struct FirConfig {
    std::array<FixedSample, 4> coefficients{};
    std::vector<unsigned> plan_widths = {8}; // multiplier configuration on the 8-bit array
    TruncationPolicy trunc;
    double sample_rate_hz = 100e6;
};

struct FirResult {
    std::vector<FixedSample> outputs;
    CostReport cost;
    std::uint64_t saturation_count = 0;
};

// y[k] = truncate(sum_t c_t * x[k-t]) over a 3-deep delay line, every
// product routed through the reconfigurable multiplier. A [w,w] plan
// computes two tap products per array invocation.
FirResult fir_filter(const FirConfig& cfg, const std::vector<FixedSample>& samples,
                     const TechConstants& tc);

// Direct-convolution oracle: native integer products, identical
// truncation, no array involvement.
std::vector<FixedSample> reference_fir(const FirConfig& cfg,
                                       const std::vector<FixedSample>& samples);

enum class TwiddleMode {
    Exact,  // W0 = 1, W1 = -j as exact integers
    Random, // caller-supplied twiddles, drawn from a seeded generator
};

struct FftConfig {
    TwiddleMode mode = TwiddleMode::Exact;
    std::array<ComplexFixed, 2> twiddles{}; // W0, W1; ignored in exact mode
    std::vector<unsigned> plan_widths = {8};
    TruncationPolicy trunc;
};

struct FftResult {
    std::array<ComplexFixed, 4> bins;
    CostReport cost;
    std::uint64_t saturation_count = 0;
};

// 4-point parallel-input transform: two radix-2 stages with the stage-2
// twiddle products routed through the reconfigurable multiplier.
// Butterfly outputs feeding a product must fit the multiplier port width,
// as in the physical datapath; violations raise OperandOverflow.
FftResult fft4(const FftConfig& cfg, const std::array<ComplexFixed, 4>& inputs,
               const TechConstants& tc);

// Dataflow-equivalent oracle in wide integer arithmetic; same width
// checks and truncation, never touching the array code path.
std::array<ComplexFixed, 4> reference_fft4(const FftConfig& cfg,
                                           const std::array<ComplexFixed, 4>& inputs);

std::array<ComplexFixed, 2> exact_twiddles();

// Benchmark harnesses: run the same seeded workload through the wide
// ([8]) and split ([4,4]) configurations, cross-check every output
// against the reference, and compare costs.
struct BenchResult {
    CostReport wide;
    CostReport split;
    CostRatios ratios; // split / wide
    ReferenceRatios reference;
    std::uint64_t cases = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t saturations_wide = 0;
    std::uint64_t saturations_split = 0;
};

BenchResult bench_fir(std::uint64_t samples, std::uint64_t seed, const TechConstants& tc);
BenchResult bench_fft(std::uint64_t transforms, std::uint64_t seed, TwiddleMode mode,
                      const TechConstants& tc);

// CSV ingestion: "k,sign,magnitude" rows, or
// "k,re_sign,re_mag,im_sign,im_mag" for complex streams. Lines starting
// with '#' or a non-numeric header row are skipped.
std::vector<FixedSample> read_samples_csv(std::istream& is, unsigned width);
std::vector<ComplexFixed> read_complex_csv(std::istream& is, unsigned width);

} // namespace remul
