#include "remul/signal.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <istream>
#include <random>
#include <sstream>

namespace remul {

namespace {

std::uint64_t bit_mask(unsigned bits) {
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

std::uint64_t mag_of(std::int64_t v) {
    return static_cast<std::uint64_t>(v < 0 ? -v : v);
}

// Saturating sign-magnitude accumulate: clamps |sum| at 2^acc_bits - 1.
std::int64_t sat_add(std::int64_t acc, std::int64_t term, unsigned acc_bits,
                     std::uint64_t& saturations) {
    std::int64_t sum = acc + term;
    const auto limit = static_cast<std::int64_t>(bit_mask(acc_bits));
    if (sum > limit) {
        sum = limit;
        ++saturations;
    } else if (sum < -limit) {
        sum = -limit;
        ++saturations;
    }
    return sum;
}

// Runs magnitude products through the array, one product per plan segment
// and invocation, chaining toggle state across invocations.
class MultEngine {
public:
    MultEngine(const std::vector<unsigned>& widths, unsigned mult_bits,
               const TechConstants& tc)
        : plan_(plan_partitions(8, widths)),
          array_(8, Technology::MemristorCmos),
          tc_(tc),
          mult_bits_(mult_bits),
          mult_delay_(critical_path_delay(array_, plan_, tc)) {}

    std::vector<std::uint64_t>
    products(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& requests) {
        const std::size_t slots = plan_.segments.size();
        std::vector<std::uint64_t> result;
        result.reserve(requests.size());
        for (std::size_t base = 0; base < requests.size(); base += slots) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> batch(slots, {0, 0});
            const std::size_t take = std::min(slots, requests.size() - base);
            for (std::size_t s = 0; s < take; ++s) {
                batch[s] = requests[base + s];
            }
            const ArrayTrace trace =
                simulate_multiply(array_, plan_, batch, tc_.device, tc_.models, &state_);
            energy_ += toggle_energy(array_.netlist(), trace.toggled, tc_.models);
            ++invocations_;
            const std::vector<std::uint64_t> extracted =
                extract_products(plan_, trace.raw_product);
            for (std::size_t s = 0; s < take; ++s) {
                result.push_back(extracted[s] & bit_mask(mult_bits_));
            }
        }
        return result;
    }

    // Largest magnitude a single product operand may take.
    std::uint64_t port_limit() const {
        unsigned w = plan_.segments.front().width;
        for (const Segment& seg : plan_.segments) {
            w = std::min(w, seg.width);
        }
        return bit_mask(w);
    }

    double energy() const { return energy_; }
    double mult_delay() const { return mult_delay_; }
    std::uint64_t invocations() const { return invocations_; }
    double area() const { return area_estimate(8, Technology::MemristorCmos, tc_); }
    std::uint64_t gate_count() const { return array_.netlist().gates.size(); }

private:
    PartitionPlan plan_;
    MultiplierArray array_;
    const TechConstants& tc_;
    unsigned mult_bits_;
    double mult_delay_;
    std::vector<std::uint8_t> state_;
    double energy_ = 0.0;
    std::uint64_t invocations_ = 0;
};

Netlist build_rca(unsigned width) {
    NetlistBuilder b;
    std::vector<NetId> a(width), x(width);
    for (unsigned k = 0; k < width; ++k) {
        a[k] = b.add_input("a" + std::to_string(k));
    }
    for (unsigned k = 0; k < width; ++k) {
        x[k] = b.add_input("b" + std::to_string(k));
    }
    NetId carry = b.add_input("zero");
    for (unsigned k = 0; k < width; ++k) {
        const auto [sum, cout] = emit_full_adder(b, a[k], x[k], carry);
        b.mark_output(sum, "s" + std::to_string(k));
        carry = cout;
    }
    b.mark_output(carry, "cout");
    return b.finish();
}

// Switching-activity model for the datapath adders: each functional add
// site owns a ripple-carry netlist evaluated on the operand magnitudes.
// Sign handling in a sign-magnitude adder is a handful of gates and is
// not modeled.
class AdderBank {
public:
    AdderBank(unsigned width, unsigned sites, const TechConstants& tc)
        : width_(width), netlist_(build_rca(width)), states_(sites), tc_(tc) {
        const std::vector<bool> live(netlist_.input_count, true);
        const std::vector<std::uint8_t> consts(netlist_.input_count, 0);
        delay_ = static_path_delay(netlist_, live, consts, tc);
    }

    void account(unsigned site, std::uint64_t a_mag, std::uint64_t b_mag) {
        std::vector<std::uint8_t> inputs(netlist_.input_count, 0);
        for (unsigned k = 0; k < width_; ++k) {
            inputs[k] = static_cast<std::uint8_t>((a_mag >> k) & 1);
            inputs[width_ + k] = static_cast<std::uint8_t>((b_mag >> k) & 1);
        }
        std::vector<std::uint8_t>& prev = states_.at(site);
        const NetlistEval eval = eval_netlist(netlist_, inputs, tc_.device, tc_.models,
                                              prev.empty() ? nullptr : &prev);
        energy_ += toggle_energy(netlist_, eval.toggled, tc_.models);
        prev = eval.gate_values;
    }

    double energy() const { return energy_; }
    double delay() const { return delay_; }
    double area() const {
        double a = 0.0;
        for (const Gate& g : netlist_.gates) {
            a += tc_.area_of(g.kind);
        }
        return a * static_cast<double>(states_.size());
    }
    std::uint64_t gate_count() const { return netlist_.gates.size() * states_.size(); }

private:
    unsigned width_;
    Netlist netlist_;
    std::vector<std::vector<std::uint8_t>> states_;
    const TechConstants& tc_;
    double delay_ = 0.0;
    double energy_ = 0.0;
};

// One datapath cycle per sample; combinational stages (multiplier, adder
// chain) sit between registers, so the reported delay is the slowest
// stage.
CostReport assemble_cost(const MultEngine& engine, const AdderBank& adders,
                         std::uint64_t steps, const TechConstants& tc) {
    CostReport cost;
    cost.delay_s = std::max(engine.mult_delay(), adders.delay());
    cost.energy_j = engine.energy() + adders.energy();
    cost.avg_power_w =
        steps == 0 ? 0.0 : cost.energy_j * tc.frequency_hz / static_cast<double>(steps);
    cost.area_units = engine.area() + adders.area();
    cost.gate_count = engine.gate_count() + adders.gate_count();
    return cost;
}

void check_width(const FixedSample& s, unsigned max_width, const char* what) {
    s.validate();
    if (s.width > max_width || s.magnitude > bit_mask(max_width)) {
        throw ValidationError(std::string(what) + ": magnitude exceeds " +
                              std::to_string(max_width) + "-bit datapath width");
    }
}

struct WideComplex {
    std::int64_t re = 0;
    std::int64_t im = 0;
};

WideComplex to_wide(const ComplexFixed& c) {
    return {c.re.value(), c.im.value()};
}

ComplexFixed to_fixed(const WideComplex& c, unsigned width) {
    return {FixedSample::from_value(c.re, width), FixedSample::from_value(c.im, width)};
}

// Signed products of a batch of (a, b) pairs, magnitudes truncated to the
// product width. The array-backed implementation groups the batch onto
// the plan's segments; the reference multiplies natively.
using BatchProductFn =
    std::function<std::vector<std::int64_t>(const std::vector<std::pair<std::int64_t, std::int64_t>>&)>;

// Observer of the dataflow's scalar saturating adds. Site indices are
// stable across calls: 0-7 first radix stage, 8-11 product combines,
// 12-19 second radix stage.
using AddObserverFn = std::function<void(unsigned site, std::uint64_t a_mag, std::uint64_t b_mag)>;

// The 4-point dataflow shared by the array-backed transform and its
// reference: only the product routine differs.
std::array<WideComplex, 4> fft4_dataflow(const std::array<ComplexFixed, 4>& inputs,
                                         const ComplexFixed& w0, const ComplexFixed& w1,
                                         const TruncationPolicy& trunc,
                                         std::uint64_t port_limit,
                                         const BatchProductFn& products,
                                         const AddObserverFn& on_add,
                                         std::uint64_t& saturations) {
    for (const ComplexFixed& c : inputs) {
        check_width(c.re, 8, "fft4 input");
        check_width(c.im, 8, "fft4 input");
    }
    for (const ComplexFixed& w : {w0, w1}) {
        check_width(w.re, 8, "twiddle");
        check_width(w.im, 8, "twiddle");
    }

    unsigned site = 0;
    const auto acc = [&](std::int64_t a, std::int64_t b) {
        on_add(site++, mag_of(a), mag_of(b));
        return sat_add(a, b, trunc.acc_bits, saturations);
    };
    const auto add = [&](const WideComplex& a, const WideComplex& b) {
        return WideComplex{acc(a.re, b.re), acc(a.im, b.im)};
    };
    const auto sub = [&](const WideComplex& a, const WideComplex& b) {
        return WideComplex{acc(a.re, -b.re), acc(a.im, -b.im)};
    };
    const auto check_port = [&](std::int64_t v) {
        if (mag_of(v) > port_limit) {
            throw OperandOverflow(
                "OperandOverflow: butterfly output does not fit the multiplier port "
                "(limit " +
                std::to_string(port_limit) + ")");
        }
    };
    // t = w * z via four real products: (ac, bd, ad, bc).
    const auto cmult = [&](const ComplexFixed& w, const WideComplex& z) {
        check_port(z.re);
        check_port(z.im);
        const std::vector<std::int64_t> p = products({{w.re.value(), z.re},
                                                      {w.im.value(), z.im},
                                                      {w.re.value(), z.im},
                                                      {w.im.value(), z.re}});
        return WideComplex{acc(p[0], -p[1]), acc(p[2], p[3])};
    };

    const WideComplex x0 = to_wide(inputs[0]);
    const WideComplex x1 = to_wide(inputs[1]);
    const WideComplex x2 = to_wide(inputs[2]);
    const WideComplex x3 = to_wide(inputs[3]);

    const WideComplex a0 = add(x0, x2);
    const WideComplex a1 = sub(x0, x2);
    const WideComplex a2 = add(x1, x3);
    const WideComplex a3 = sub(x1, x3);

    const WideComplex t0 = cmult(w0, a2);
    const WideComplex t1 = cmult(w1, a3);

    const WideComplex b0 = add(a0, t0);
    const WideComplex b1 = add(a1, t1);
    const WideComplex b2 = sub(a0, t0);
    const WideComplex b3 = sub(a1, t1);
    return {b0, b1, b2, b3};
}

constexpr unsigned kFftAddSites = 20;

std::uint64_t smallest_segment_limit(const std::vector<unsigned>& widths) {
    unsigned w = widths.empty() ? 8 : widths.front();
    for (unsigned s : widths) {
        w = std::min(w, s);
    }
    return bit_mask(w);
}

BatchProductFn engine_products(MultEngine& engine) {
    return [&engine](const std::vector<std::pair<std::int64_t, std::int64_t>>& ps) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> requests;
        requests.reserve(ps.size());
        for (const auto& [a, b] : ps) {
            requests.emplace_back(mag_of(a), mag_of(b));
        }
        const std::vector<std::uint64_t> mags = engine.products(requests);
        std::vector<std::int64_t> out(ps.size());
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const auto mag = static_cast<std::int64_t>(mags[k]);
            out[k] = (ps[k].first < 0) != (ps[k].second < 0) ? -mag : mag;
        }
        return out;
    };
}

BatchProductFn native_products(std::uint64_t port_limit, unsigned mult_bits) {
    return [port_limit, mult_bits](const std::vector<std::pair<std::int64_t, std::int64_t>>& ps) {
        std::vector<std::int64_t> out(ps.size());
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const std::uint64_t a = mag_of(ps[k].first);
            const std::uint64_t b = mag_of(ps[k].second);
            if (a > port_limit || b > port_limit) {
                throw OperandOverflow("OperandOverflow: operand exceeds the multiplier port");
            }
            const auto mag = static_cast<std::int64_t>((a * b) & bit_mask(mult_bits));
            out[k] = (ps[k].first < 0) != (ps[k].second < 0) ? -mag : mag;
        }
        return out;
    };
}

std::array<ComplexFixed, 4> fft4_with_engine(const FftConfig& cfg,
                                             const std::array<ComplexFixed, 4>& inputs,
                                             MultEngine& engine, AdderBank& adders,
                                             std::uint64_t& saturations) {
    const auto tw = cfg.mode == TwiddleMode::Exact ? exact_twiddles() : cfg.twiddles;
    const auto wide = fft4_dataflow(
        inputs, tw[0], tw[1], cfg.trunc, engine.port_limit(), engine_products(engine),
        [&adders](unsigned site, std::uint64_t a, std::uint64_t b) {
            adders.account(site, a, b);
        },
        saturations);
    std::array<ComplexFixed, 4> bins;
    for (std::size_t k = 0; k < 4; ++k) {
        bins[k] = to_fixed(wide[k], cfg.trunc.acc_bits);
    }
    return bins;
}

FixedSample draw_sample(std::mt19937_64& rng, std::uint64_t mag_mask) {
    FixedSample s;
    s.magnitude = rng() & mag_mask;
    s.sign = (rng() & 1) ? 1 : -1;
    s.width = 8;
    return s;
}

bool same_value(const FixedSample& a, const FixedSample& b) {
    return a.value() == b.value();
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

bool numeric_row(const std::vector<std::string>& fields) {
    if (fields.empty()) {
        return false;
    }
    const std::string& f = fields[0];
    return !f.empty() && (std::isdigit(static_cast<unsigned char>(f[0])) || f[0] == '-' ||
                          f[0] == '+');
}

} // namespace

FixedSample FixedSample::from_value(std::int64_t v, unsigned width) {
    FixedSample s;
    s.sign = v < 0 ? -1 : 1;
    s.magnitude = mag_of(v);
    s.width = width;
    return s;
}

void FixedSample::validate() const {
    if (sign != 1 && sign != -1) {
        throw ValidationError("FixedSample: sign must be +1 or -1");
    }
    if (magnitude > bit_mask(width)) {
        throw ValidationError("FixedSample: magnitude " + std::to_string(magnitude) +
                              " does not fit " + std::to_string(width) + " bits");
    }
}

FirResult fir_filter(const FirConfig& cfg, const std::vector<FixedSample>& samples,
                     const TechConstants& tc) {
    for (const FixedSample& c : cfg.coefficients) {
        check_width(c, 8, "fir coefficient");
    }
    for (const FixedSample& s : samples) {
        check_width(s, 8, "fir sample");
    }

    MultEngine engine(cfg.plan_widths, cfg.trunc.mult_bits, tc);
    AdderBank adders(cfg.trunc.acc_bits, 3, tc);

    FirResult result;
    result.outputs.reserve(samples.size());
    std::array<FixedSample, 3> delay_line{}; // x[k-1], x[k-2], x[k-3]

    for (const FixedSample& x : samples) {
        const std::array<FixedSample, 4> window = {x, delay_line[0], delay_line[1],
                                                   delay_line[2]};
        std::vector<std::pair<std::uint64_t, std::uint64_t>> requests;
        requests.reserve(4);
        for (unsigned t = 0; t < 4; ++t) {
            requests.emplace_back(cfg.coefficients[t].magnitude, window[t].magnitude);
        }
        const std::vector<std::uint64_t> mags = engine.products(requests);

        std::array<std::int64_t, 4> terms{};
        for (unsigned t = 0; t < 4; ++t) {
            const int sign = cfg.coefficients[t].sign * window[t].sign;
            terms[t] = sign < 0 ? -static_cast<std::int64_t>(mags[t])
                                : static_cast<std::int64_t>(mags[t]);
        }
        std::int64_t acc = terms[0];
        for (unsigned t = 1; t < 4; ++t) {
            adders.account(t - 1, mag_of(acc), mag_of(terms[t]));
            acc = sat_add(acc, terms[t], cfg.trunc.acc_bits, result.saturation_count);
        }
        result.outputs.push_back(FixedSample::from_value(acc, cfg.trunc.acc_bits));

        delay_line[2] = delay_line[1];
        delay_line[1] = delay_line[0];
        delay_line[0] = x;
    }

    result.cost = assemble_cost(engine, adders, samples.size(), tc);
    return result;
}

std::vector<FixedSample> reference_fir(const FirConfig& cfg,
                                       const std::vector<FixedSample>& samples) {
    for (const FixedSample& c : cfg.coefficients) {
        check_width(c, 8, "fir coefficient");
    }
    const std::uint64_t port = smallest_segment_limit(cfg.plan_widths);
    const std::uint64_t mult_mask = bit_mask(cfg.trunc.mult_bits);

    std::vector<FixedSample> outputs;
    outputs.reserve(samples.size());
    std::array<FixedSample, 3> delay_line{};
    std::uint64_t saturations = 0;

    for (const FixedSample& x : samples) {
        check_width(x, 8, "fir sample");
        const std::array<FixedSample, 4> window = {x, delay_line[0], delay_line[1],
                                                   delay_line[2]};
        std::int64_t acc = 0;
        for (unsigned t = 0; t < 4; ++t) {
            const FixedSample& c = cfg.coefficients[t];
            if (c.magnitude > port || window[t].magnitude > port) {
                throw OperandOverflow("OperandOverflow: operand exceeds the multiplier port");
            }
            const std::uint64_t mag = (c.magnitude * window[t].magnitude) & mult_mask;
            const int sign = c.sign * window[t].sign;
            const std::int64_t term =
                sign < 0 ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
            acc = t == 0 ? term : sat_add(acc, term, cfg.trunc.acc_bits, saturations);
        }
        outputs.push_back(FixedSample::from_value(acc, cfg.trunc.acc_bits));

        delay_line[2] = delay_line[1];
        delay_line[1] = delay_line[0];
        delay_line[0] = x;
    }
    return outputs;
}

std::array<ComplexFixed, 2> exact_twiddles() {
    // W0 = 1, W1 = -j as exact integers: no fractional scaling.
    const ComplexFixed w0{FixedSample{1, 1, 8}, FixedSample{1, 0, 8}};
    const ComplexFixed w1{FixedSample{1, 0, 8}, FixedSample{-1, 1, 8}};
    return {w0, w1};
}

FftResult fft4(const FftConfig& cfg, const std::array<ComplexFixed, 4>& inputs,
               const TechConstants& tc) {
    MultEngine engine(cfg.plan_widths, cfg.trunc.mult_bits, tc);
    AdderBank adders(cfg.trunc.acc_bits, kFftAddSites, tc);
    FftResult result;
    result.bins = fft4_with_engine(cfg, inputs, engine, adders, result.saturation_count);
    result.cost = assemble_cost(engine, adders, 1, tc);
    return result;
}

std::array<ComplexFixed, 4> reference_fft4(const FftConfig& cfg,
                                           const std::array<ComplexFixed, 4>& inputs) {
    const auto tw = cfg.mode == TwiddleMode::Exact ? exact_twiddles() : cfg.twiddles;
    const std::uint64_t port = smallest_segment_limit(cfg.plan_widths);
    std::uint64_t saturations = 0;
    const auto wide = fft4_dataflow(
        inputs, tw[0], tw[1], cfg.trunc, port, native_products(port, cfg.trunc.mult_bits),
        [](unsigned, std::uint64_t, std::uint64_t) {}, saturations);
    std::array<ComplexFixed, 4> bins;
    for (std::size_t k = 0; k < 4; ++k) {
        bins[k] = to_fixed(wide[k], cfg.trunc.acc_bits);
    }
    return bins;
}

// Restricts a sample to the low nibble; the split-plan correctness runs
// use these.
FixedSample low_nibble(const FixedSample& s) {
    return FixedSample{s.sign, s.magnitude & 0xF, s.width};
}

BenchResult bench_fir(std::uint64_t samples, std::uint64_t seed, const TechConstants& tc) {
    std::mt19937_64 rng(seed);
    FirConfig wide_cfg;
    wide_cfg.plan_widths = {8};
    for (auto& c : wide_cfg.coefficients) {
        c = draw_sample(rng, 0xFF);
    }
    std::vector<FixedSample> stream;
    stream.reserve(samples);
    for (std::uint64_t k = 0; k < samples; ++k) {
        stream.push_back(draw_sample(rng, 0xFF));
    }

    // Wide configuration: the real filter on full 8-bit data.
    const FirResult wide = fir_filter(wide_cfg, stream, tc);
    const std::vector<FixedSample> wide_oracle = reference_fir(wide_cfg, stream);

    // Split-configuration correctness: same stream restricted to 4-bit
    // magnitudes, which is the widest data the [4,4] plan accepts.
    FirConfig narrow_cfg = wide_cfg;
    narrow_cfg.plan_widths = {4, 4};
    for (auto& c : narrow_cfg.coefficients) {
        c = low_nibble(c);
    }
    std::vector<FixedSample> narrow_stream;
    narrow_stream.reserve(samples);
    for (const FixedSample& s : stream) {
        narrow_stream.push_back(low_nibble(s));
    }
    const FirResult narrow = fir_filter(narrow_cfg, narrow_stream, tc);
    const std::vector<FixedSample> narrow_oracle = reference_fir(narrow_cfg, narrow_stream);

    // Split-configuration cost: each 8x8 tap product maps onto one
    // invocation of two 4x4 nibble sub-products, so both configurations
    // retire four multiplier invocations per output sample; the adder
    // chain sees the wide run's operand stream in both cases.
    MultEngine split_engine({4, 4}, wide_cfg.trunc.mult_bits, tc);
    AdderBank split_adders(wide_cfg.trunc.acc_bits, 3, tc);
    {
        std::array<FixedSample, 3> delay_line{};
        std::uint64_t sat = 0;
        const std::uint64_t mult_mask = (std::uint64_t{1} << wide_cfg.trunc.mult_bits) - 1;
        for (const FixedSample& x : stream) {
            const std::array<FixedSample, 4> window = {x, delay_line[0], delay_line[1],
                                                       delay_line[2]};
            std::array<std::int64_t, 4> terms{};
            for (unsigned t = 0; t < 4; ++t) {
                const FixedSample& c = wide_cfg.coefficients[t];
                split_engine.products({{c.magnitude & 0xF, window[t].magnitude & 0xF},
                                       {c.magnitude >> 4, window[t].magnitude >> 4}});
                const std::uint64_t mag = (c.magnitude * window[t].magnitude) & mult_mask;
                const int sign = c.sign * window[t].sign;
                terms[t] = sign < 0 ? -static_cast<std::int64_t>(mag)
                                    : static_cast<std::int64_t>(mag);
            }
            std::int64_t acc = terms[0];
            for (unsigned t = 1; t < 4; ++t) {
                split_adders.account(t - 1, mag_of(acc), mag_of(terms[t]));
                acc = sat_add(acc, terms[t], wide_cfg.trunc.acc_bits, sat);
            }
            delay_line[2] = delay_line[1];
            delay_line[1] = delay_line[0];
            delay_line[0] = x;
        }
    }

    BenchResult bench;
    bench.wide = wide.cost;
    bench.split = assemble_cost(split_engine, split_adders, samples, tc);
    bench.ratios = compare_report(bench.split, bench.wide);
    bench.reference = kFirReference;
    bench.cases = samples;
    bench.saturations_wide = wide.saturation_count;
    bench.saturations_split = narrow.saturation_count;
    for (std::uint64_t k = 0; k < samples; ++k) {
        if (!same_value(wide.outputs[k], wide_oracle[k]) ||
            !same_value(narrow.outputs[k], narrow_oracle[k])) {
            ++bench.mismatches;
        }
    }
    return bench;
}

BenchResult bench_fft(std::uint64_t transforms, std::uint64_t seed, TwiddleMode mode,
                      const TechConstants& tc) {
    std::mt19937_64 rng(seed);

    FftConfig wide_cfg;
    wide_cfg.mode = mode;
    wide_cfg.plan_widths = {8};
    FftConfig narrow_cfg;
    narrow_cfg.mode = mode;
    narrow_cfg.plan_widths = {4, 4};

    MultEngine wide_engine(wide_cfg.plan_widths, wide_cfg.trunc.mult_bits, tc);
    MultEngine narrow_engine(narrow_cfg.plan_widths, narrow_cfg.trunc.mult_bits, tc);
    MultEngine split_engine(narrow_cfg.plan_widths, wide_cfg.trunc.mult_bits, tc);
    AdderBank wide_adders(wide_cfg.trunc.acc_bits, kFftAddSites, tc);
    AdderBank narrow_adders(narrow_cfg.trunc.acc_bits, kFftAddSites, tc);
    AdderBank split_adders(wide_cfg.trunc.acc_bits, kFftAddSites, tc);

    // Cost proxy for the split plan: every real 8x8 product becomes one
    // invocation carrying the two 4x4 nibble sub-products, so both
    // configurations retire one invocation per product; dataflow values
    // stay the wide run's, keeping the adder operand streams identical.
    const std::uint64_t mult_mask = (std::uint64_t{1} << wide_cfg.trunc.mult_bits) - 1;
    const BatchProductFn split_cost_products =
        [&](const std::vector<std::pair<std::int64_t, std::int64_t>>& ps) {
            std::vector<std::int64_t> out(ps.size());
            for (std::size_t k = 0; k < ps.size(); ++k) {
                const std::uint64_t a = mag_of(ps[k].first);
                const std::uint64_t b = mag_of(ps[k].second);
                split_engine.products({{a & 0xF, b & 0xF}, {a >> 4, b >> 4}});
                const auto mag = static_cast<std::int64_t>((a * b) & mult_mask);
                out[k] = (ps[k].first < 0) != (ps[k].second < 0) ? -mag : mag;
            }
            return out;
        };

    BenchResult bench;
    bench.cases = transforms;
    bench.reference = kFftReference;

    for (std::uint64_t k = 0; k < transforms; ++k) {
        // 7-bit input magnitudes keep butterfly outputs inside the 8-bit
        // product port.
        std::array<ComplexFixed, 4> in;
        for (auto& c : in) {
            c.re = draw_sample(rng, 0x7F);
            c.im = draw_sample(rng, 0x7F);
        }
        if (mode == TwiddleMode::Random) {
            std::array<ComplexFixed, 2> tw;
            for (auto& w : tw) {
                w.re = draw_sample(rng, 0xFF);
                w.im = draw_sample(rng, 0xFF);
            }
            wide_cfg.twiddles = tw;
            narrow_cfg.twiddles = tw;
        }

        // Wide configuration: the real transform, oracle-checked.
        const auto wide_bins =
            fft4_with_engine(wide_cfg, in, wide_engine, wide_adders, bench.saturations_wide);
        const auto wide_oracle = reference_fft4(wide_cfg, in);

        // Split-plan correctness on data narrowed to fit its ports:
        // 3-bit inputs bound butterfly outputs by 14, twiddles by 15.
        std::array<ComplexFixed, 4> narrow_in;
        for (std::size_t m = 0; m < 4; ++m) {
            narrow_in[m].re = FixedSample{in[m].re.sign, in[m].re.magnitude & 0x7, 8};
            narrow_in[m].im = FixedSample{in[m].im.sign, in[m].im.magnitude & 0x7, 8};
        }
        if (mode == TwiddleMode::Random) {
            for (auto& w : narrow_cfg.twiddles) {
                w.re.magnitude &= 0xF;
                w.im.magnitude &= 0xF;
            }
        }
        const auto narrow_bins = fft4_with_engine(narrow_cfg, narrow_in, narrow_engine,
                                                  narrow_adders, bench.saturations_split);
        const auto narrow_oracle = reference_fft4(narrow_cfg, narrow_in);

        // Split-plan cost on the wide workload.
        std::uint64_t proxy_sat = 0;
        const auto tw = wide_cfg.mode == TwiddleMode::Exact ? exact_twiddles()
                                                            : wide_cfg.twiddles;
        fft4_dataflow(in, tw[0], tw[1], wide_cfg.trunc, (std::uint64_t{1} << 8) - 1,
                      split_cost_products,
                      [&](unsigned site, std::uint64_t a, std::uint64_t b) {
                          split_adders.account(site, a, b);
                      },
                      proxy_sat);

        for (std::size_t bin = 0; bin < 4; ++bin) {
            if (!same_value(wide_bins[bin].re, wide_oracle[bin].re) ||
                !same_value(wide_bins[bin].im, wide_oracle[bin].im) ||
                !same_value(narrow_bins[bin].re, narrow_oracle[bin].re) ||
                !same_value(narrow_bins[bin].im, narrow_oracle[bin].im)) {
                ++bench.mismatches;
                break;
            }
        }
    }

    bench.wide = assemble_cost(wide_engine, wide_adders, transforms, tc);
    bench.split = assemble_cost(split_engine, split_adders, transforms, tc);
    bench.ratios = compare_report(bench.split, bench.wide);
    return bench;
}

std::vector<FixedSample> read_samples_csv(std::istream& is, unsigned width) {
    std::vector<FixedSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (!numeric_row(fields)) {
            continue; // header
        }
        if (fields.size() != 3) {
            throw ValidationError("samples csv line " + std::to_string(line_no) +
                                  ": expected k,sign,magnitude");
        }
        FixedSample s;
        s.sign = std::stoi(fields[1]) < 0 ? -1 : 1;
        s.magnitude = std::stoull(fields[2]);
        s.width = width;
        s.validate();
        samples.push_back(s);
    }
    return samples;
}

std::vector<ComplexFixed> read_complex_csv(std::istream& is, unsigned width) {
    std::vector<ComplexFixed> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (!numeric_row(fields)) {
            continue;
        }
        if (fields.size() != 5) {
            throw ValidationError("complex csv line " + std::to_string(line_no) +
                                  ": expected k,re_sign,re_mag,im_sign,im_mag");
        }
        ComplexFixed c;
        c.re.sign = std::stoi(fields[1]) < 0 ? -1 : 1;
        c.re.magnitude = std::stoull(fields[2]);
        c.re.width = width;
        c.im.sign = std::stoi(fields[3]) < 0 ? -1 : 1;
        c.im.magnitude = std::stoull(fields[4]);
        c.im.width = width;
        c.re.validate();
        c.im.validate();
        samples.push_back(c);
    }
    return samples;
}

} // namespace remul
