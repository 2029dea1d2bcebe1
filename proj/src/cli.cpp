#include "remul/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "remul/array.hpp"
#include "remul/cost.hpp"
#include "remul/memristor.hpp"
#include "remul/scenario.hpp"
#include "remul/signal.hpp"

namespace remul {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

ordered_json scenario_json(const Scenario& s) {
    ordered_json j;
    j["n"] = s.n;
    j["widths"] = s.widths;
    ordered_json pairs = ordered_json::array();
    for (const auto& [a, b] : s.pairs) {
        pairs.push_back({a, b});
    }
    j["pairs"] = pairs;
    j["workload"] = s.workload;
    j["csv_path"] = s.csv_path;
    j["seed"] = s.seed;
    j["samples"] = s.samples;
    j["transforms"] = s.transforms;
    j["twiddle_mode"] = s.twiddle_mode;
    j["format"] = s.format;
    j["device"] = {{"r_on", s.device.r_on},
                   {"r_off", s.device.r_off},
                   {"d", s.device.d},
                   {"mu_v", s.device.mu_v},
                   {"window_exponent", s.device.window_exponent}};
    j["frequency_hz"] = s.frequency_hz;
    j["waveform"] = s.waveform;
    j["amplitude"] = s.amplitude;
    j["wave_frequency_hz"] = s.wave_frequency_hz;
    j["constant_value"] = s.constant_value;
    j["periods"] = s.periods;
    j["steps_per_period"] = s.steps_per_period;
    j["x0"] = s.x0;
    return j;
}

ordered_json cost_json(const CostReport& c) {
    ordered_json j;
    j["delay_s"] = c.delay_s;
    j["energy_j"] = c.energy_j;
    j["avg_power_w"] = c.avg_power_w;
    j["area_units"] = c.area_units;
    j["gate_count"] = c.gate_count;
    if (c.ratios) {
        j["ratios"] = {{"delay", c.ratios->delay},
                       {"power", c.ratios->power},
                       {"area", c.ratios->area}};
    }
    return j;
}

void emit_json(std::ostream& out, const ordered_json& j) {
    out << j.dump(2) << '\n';
}

std::string mask_row(const BitMatrix& mask, std::size_t j) {
    // One row of the array: columns (h positions) rendered MSB-first.
    const std::size_t n = mask.size();
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
        s[n - 1 - i] = mask[i][j] ? '1' : '0';
    }
    return s;
}

void run_plan(const Scenario& s, std::ostream& out) {
    const PartitionPlan plan = plan_partitions(s.n, s.widths);
    const BitMatrix mask = enabled_mask(plan.ctrl);

    if (s.format == "json") {
        ordered_json j;
        j["command"] = "plan";
        j["scenario"] = scenario_json(s);
        ordered_json r;
        r["h"] = plan.ctrl.h_string();
        r["v"] = plan.ctrl.v_string();
        ordered_json segs = ordered_json::array();
        for (const Segment& seg : plan.segments) {
            segs.push_back({{"offset", seg.offset}, {"width", seg.width},
                            {"parity", seg.parity}});
        }
        r["segments"] = segs;
        ordered_json rows = ordered_json::array();
        for (std::size_t j2 = 0; j2 < mask.size(); ++j2) {
            rows.push_back(mask_row(mask, j2));
        }
        r["mask_rows"] = rows;
        j["results"] = r;
        emit_json(out, j);
        return;
    }

    out << "plan: n = " << plan.n << ", widths =";
    for (unsigned w : s.widths) {
        out << ' ' << w;
    }
    out << '\n';
    out << "h = " << plan.ctrl.h_string() << '\n';
    out << "v = " << plan.ctrl.v_string() << '\n';
    out << "enabled mask (row j uses v[j], columns are h positions, MSB first):\n";
    for (std::size_t j = mask.size(); j-- > 0;) {
        out << "  j=" << j << " v=" << int(plan.ctrl.v[j]) << " | " << mask_row(mask, j)
            << '\n';
    }
}

void run_multiply(const Scenario& s, std::ostream& out) {
    if (s.pairs.empty()) {
        throw ValidationError("multiply: no operand pairs given (--pairs or scenario)");
    }
    const PartitionPlan plan = plan_partitions(s.n, s.widths);
    const TechConstants tc = scenario_tech(s);
    const MultiplierArray array(s.n);

    const ArrayTrace trace = simulate_multiply(array, plan, s.pairs, tc.device, tc.models);
    const std::vector<std::uint64_t> products = extract_products(plan, trace.raw_product);

    CostReport cost;
    cost.delay_s = critical_path_delay(array, plan, tc);
    cost.energy_j = toggle_energy(array.netlist(), trace.toggled, tc.models);
    cost.avg_power_w = cost.energy_j * tc.frequency_hz;
    cost.area_units = area_estimate(s.n, Technology::MemristorCmos, tc);
    cost.gate_count = array.netlist().gates.size();

    if (s.format == "json") {
        ordered_json j;
        j["command"] = "multiply";
        j["scenario"] = scenario_json(s);
        ordered_json r;
        r["h"] = plan.ctrl.h_string();
        r["v"] = plan.ctrl.v_string();
        r["products"] = products;
        r["raw_product"] = trace.raw_product;
        r["toggles"] = trace.toggle_count;
        j["results"] = r;
        j["cost"] = cost_json(cost);
        emit_json(out, j);
        return;
    }

    out << "multiply: n = " << s.n << '\n';
    out << "h = " << plan.ctrl.h_string() << ", v = " << plan.ctrl.v_string() << '\n';
    for (std::size_t k = 0; k < s.pairs.size(); ++k) {
        out << "  " << s.pairs[k].first << " x " << s.pairs[k].second << " = "
            << products[k] << '\n';
    }
    out << "raw_product = " << trace.raw_product << '\n';
    out << "cost: delay_s = " << fmt(cost.delay_s) << ", energy_j = " << fmt(cost.energy_j)
        << ", toggles = " << trace.toggle_count << ", area_units = "
        << fmt(cost.area_units) << ", gates = " << cost.gate_count << '\n';
}

std::vector<double> build_waveform(const Scenario& s, unsigned steps_per_period,
                                   double* dt_out) {
    if (s.waveform != "sine" && s.waveform != "constant") {
        throw ValidationError("device: waveform must be 'sine' or 'constant'");
    }
    if (s.periods == 0 || steps_per_period == 0) {
        throw ValidationError("device: periods and steps_per_period must be positive");
    }
    if (!(s.wave_frequency_hz > 0.0)) {
        throw ValidationError("device: wave_frequency_hz must be positive");
    }
    const double dt = 1.0 / (s.wave_frequency_hz * steps_per_period);
    const std::size_t steps = std::size_t{s.periods} * steps_per_period;
    std::vector<double> wave(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        if (s.waveform == "sine") {
            wave[k] = s.amplitude *
                      std::sin(2.0 * std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(steps_per_period));
        } else {
            wave[k] = s.constant_value;
        }
    }
    *dt_out = dt;
    return wave;
}

void run_device(const Scenario& s, const std::string& csv_path, std::ostream& out) {
    double dt = 0.0;
    const std::vector<double> wave = build_waveform(s, s.steps_per_period, &dt);
    const SimTrace trace = simulate_waveform(s.device, wave, dt, s.x0);
    const double residual = verify_flux_charge(trace, s.device);

    double dt_half = 0.0;
    const std::vector<double> wave_half = build_waveform(s, s.steps_per_period * 2, &dt_half);
    const SimTrace trace_half = simulate_waveform(s.device, wave_half, dt_half, s.x0);
    const double residual_half = verify_flux_charge(trace_half, s.device);
    const double factor = residual_half > 0.0 ? residual / residual_half : 0.0;

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) {
            throw ValidationError("device: cannot open csv output file: " + csv_path);
        }
        write_trace_csv(csv, trace);
    }

    const TraceSample& last = trace.samples.back();
    if (s.format == "json") {
        ordered_json j;
        j["command"] = "device";
        j["scenario"] = scenario_json(s);
        ordered_json r;
        r["steps"] = trace.samples.size();
        r["dt"] = trace.dt;
        r["final"] = {{"t", last.t}, {"x", last.x}, {"q", last.q}, {"phi", last.phi},
                      {"m", last.m}};
        r["flux_charge_residual"] = residual;
        r["residual_half_dt"] = residual_half;
        r["convergence_factor"] = factor;
        if (!csv_path.empty()) {
            r["csv"] = csv_path;
        }
        j["results"] = r;
        emit_json(out, j);
        return;
    }

    out << "device: " << s.waveform << " drive, " << trace.samples.size()
        << " steps, dt = " << fmt(dt, "%.9g") << " s\n";
    out << "final: x = " << fmt(last.x) << ", q = " << fmt(last.q)
        << " C, phi = " << fmt(last.phi) << " Wb, m = " << fmt(last.m) << " ohm\n";
    out << "flux-charge residual = " << fmt(residual, "%.9g") << " (dt/2: "
        << fmt(residual_half, "%.9g") << ", factor " << fmt(factor, "%.3g") << ")\n";
    if (!csv_path.empty()) {
        out << "trace written to " << csv_path << '\n';
    }
}

void render_bench(const Scenario& s, const char* command, const BenchResult& bench,
                  std::ostream& out) {
    if (s.format == "json") {
        ordered_json j;
        j["command"] = command;
        j["scenario"] = scenario_json(s);
        ordered_json r;
        r["cases"] = bench.cases;
        r["oracle_mismatches"] = bench.mismatches;
        r["wide"] = cost_json(bench.wide);
        r["split"] = cost_json(bench.split);
        r["ratios"] = {{"delay", bench.ratios.delay},
                       {"power", bench.ratios.power},
                       {"area", bench.ratios.area}};
        r["paper_reference_ratios"] = {{"delay", bench.reference.delay},
                                       {"power", bench.reference.power}};
        r["saturations"] = {{"wide", bench.saturations_wide},
                            {"split", bench.saturations_split}};
        j["results"] = r;
        emit_json(out, j);
        return;
    }
    if (s.format == "csv") {
        out << "config,cases,delay_s,energy_j,avg_power_w,area_units,gate_count,"
               "delay_ratio,power_ratio,ref_delay_ratio,ref_power_ratio\n";
        out << "wide_8," << bench.cases << ',' << fmt(bench.wide.delay_s, "%.9g") << ','
            << fmt(bench.wide.energy_j, "%.9g") << ',' << fmt(bench.wide.avg_power_w, "%.9g")
            << ',' << fmt(bench.wide.area_units, "%.9g") << ',' << bench.wide.gate_count
            << ",,,,\n";
        out << "split_4_4," << bench.cases << ',' << fmt(bench.split.delay_s, "%.9g") << ','
            << fmt(bench.split.energy_j, "%.9g") << ','
            << fmt(bench.split.avg_power_w, "%.9g") << ','
            << fmt(bench.split.area_units, "%.9g") << ',' << bench.split.gate_count << ','
            << fmt(bench.ratios.delay, "%.6g") << ',' << fmt(bench.ratios.power, "%.6g")
            << ',' << fmt(bench.reference.delay, "%.6g") << ','
            << fmt(bench.reference.power, "%.6g") << '\n';
        return;
    }

    out << command << ": " << bench.cases << " cases, seed " << s.seed << '\n';
    out << "  config     delay_s        energy_j       avg_power_w\n";
    out << "  8          " << fmt(bench.wide.delay_s, "%-14.6g") << ' '
        << fmt(bench.wide.energy_j, "%-14.6g") << ' '
        << fmt(bench.wide.avg_power_w, "%-14.6g") << '\n';
    out << "  4+4        " << fmt(bench.split.delay_s, "%-14.6g") << ' '
        << fmt(bench.split.energy_j, "%-14.6g") << ' '
        << fmt(bench.split.avg_power_w, "%-14.6g") << '\n';
    out << "  ratio 4+4/8: delay " << fmt(bench.ratios.delay, "%.3g") << " (reference "
        << fmt(bench.reference.delay, "%.3g") << "), power "
        << fmt(bench.ratios.power, "%.3g") << " (reference "
        << fmt(bench.reference.power, "%.3g") << ")\n";
    out << "  oracle mismatches: " << bench.mismatches << '\n';
}

void run_bench_fir(const Scenario& s, std::ostream& out) {
    const TechConstants tc = scenario_tech(s);
    const BenchResult bench = bench_fir(s.samples, s.seed, tc);
    render_bench(s, "bench-fir", bench, out);
}

void run_bench_fft(const Scenario& s, std::ostream& out) {
    const TechConstants tc = scenario_tech(s);
    TwiddleMode mode;
    if (s.twiddle_mode == "random") {
        mode = TwiddleMode::Random;
    } else if (s.twiddle_mode == "exact") {
        mode = TwiddleMode::Exact;
    } else {
        throw ValidationError("bench-fft: twiddle_mode must be 'random' or 'exact'");
    }
    const BenchResult bench = bench_fft(s.transforms, s.seed, mode, tc);
    render_bench(s, "bench-fft", bench, out);
}

CostReport cost_from_json(const ordered_json& j, const std::string& path) {
    const ordered_json* c = nullptr;
    if (j.contains("delay_s")) {
        c = &j;
    } else if (j.contains("cost")) {
        c = &j.at("cost");
    } else {
        throw ValidationError("report: " + path + " has no cost fields (delay_s, ...)");
    }
    CostReport r;
    r.delay_s = c->at("delay_s").get<double>();
    r.energy_j = c->value("energy_j", 0.0);
    r.avg_power_w = c->at("avg_power_w").get<double>();
    r.area_units = c->at("area_units").get<double>();
    r.gate_count = c->value("gate_count", std::uint64_t{0});
    return r;
}

void run_report_table1(const Scenario& s, std::ostream& out) {
    const TechConstants tc = scenario_tech(s);
    const double mr = area_estimate(32, Technology::MemristorCmos, tc);
    const double cmos = area_estimate(32, Technology::CmosBaseline, tc);
    const double ratio = mr / cmos;

    if (s.format == "json") {
        ordered_json j;
        j["command"] = "report";
        ordered_json designs = ordered_json::array();
        for (const ReferenceDesign& d : kReferenceDesigns) {
            designs.push_back({{"design", d.name},
                               {"delay_ns", d.delay_ns},
                               {"delay_ratio", d.delay_ratio},
                               {"power_mw", d.power_mw},
                               {"power_ratio", d.power_ratio},
                               {"area_um2", d.area_um2},
                               {"area_ratio", d.area_ratio}});
        }
        j["reference_designs"] = designs;
        j["measured"] = {{"area_units_memristor_cmos", mr},
                         {"area_units_cmos_rca", cmos},
                         {"area_ratio", ratio},
                         {"paper_reference_area_ratio", kAreaReference}};
        emit_json(out, j);
        return;
    }

    out << "32-bit multiplier reference points:\n";
    out << "  design                 delay_ns        power_mw        area_um2\n";
    for (const ReferenceDesign& d : kReferenceDesigns) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-22s %5.1f (%4.2f)    %5.1f (%4.2f)    %6.1f (%4.2f)\n",
                      d.name, d.delay_ns, d.delay_ratio, d.power_mw, d.power_ratio,
                      d.area_um2, d.area_ratio);
        out << line;
    }
    out << "measured 32-bit area ratio (memristor-CMOS / CMOS RCA): " << fmt(ratio, "%.3f")
        << "  [reference " << fmt(kAreaReference, "%.2f") << "]\n";
}

void run_report_compare(const std::string& candidate_path, const std::string& baseline_path,
                        const Scenario& s, std::ostream& out) {
    const auto load = [](const std::string& path) {
        std::ifstream is(path);
        if (!is) {
            throw ValidationError("report: cannot open " + path);
        }
        ordered_json j;
        try {
            is >> j;
        } catch (const std::exception& e) {
            throw ValidationError("report: " + path + " is not valid JSON: " + e.what());
        }
        return j;
    };
    const CostReport candidate = cost_from_json(load(candidate_path), candidate_path);
    const CostReport baseline = cost_from_json(load(baseline_path), baseline_path);
    const CostRatios ratios = compare_report(candidate, baseline);

    if (s.format == "json") {
        ordered_json j;
        j["command"] = "report";
        j["candidate"] = cost_json(candidate);
        j["baseline"] = cost_json(baseline);
        j["ratios"] = {{"delay", ratios.delay}, {"power", ratios.power},
                       {"area", ratios.area}};
        emit_json(out, j);
        return;
    }
    out << "candidate / baseline ratios: delay " << fmt(ratios.delay, "%.4g") << ", power "
        << fmt(ratios.power, "%.4g") << ", area " << fmt(ratios.area, "%.4g") << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"remul - memristor-CMOS reconfigurable multiplier simulator"};
    app.name("remul");
    app.footer("Exit codes: 0 success, 2 usage error, 3 validation error, 4 internal error.");

    std::string scenario_path, widths_str, pairs_str, format, csv_out, input_csv;
    std::string candidate_path, baseline_path, twiddle_mode, waveform;
    unsigned n = 0;
    std::uint64_t seed = 0, samples = 0, transforms = 0;
    double amplitude = 0, wave_freq = 0, const_value = 0, x0 = 0;
    unsigned periods = 0, steps_per_period = 0;
    bool table1 = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "scenario file (key = value lines)");
        cmd->add_option("--format", format, "human | json | csv")
            ->check(CLI::IsMember({"human", "json", "csv"}));
    };

    CLI::App* plan_cmd = app.add_subcommand("plan", "derive control vectors and the enabled mask");
    plan_cmd->add_option("--n", n, "array width (2, 4, 8, 16, 32)");
    plan_cmd->add_option("--widths", widths_str, "partition widths, e.g. 5,3");
    add_common(plan_cmd);

    CLI::App* mult_cmd = app.add_subcommand("multiply", "one-shot array multiplication");
    mult_cmd->add_option("--n", n, "array width (2, 4, 8, 16, 32)");
    mult_cmd->add_option("--widths", widths_str, "partition widths, e.g. 5,3");
    mult_cmd->add_option("--pairs", pairs_str, "operand pairs, e.g. 21x19,5x6");
    add_common(mult_cmd);

    CLI::App* dev_cmd = app.add_subcommand("device", "memristor waveform simulation");
    dev_cmd->add_option("--waveform", waveform, "sine | constant");
    dev_cmd->add_option("--amplitude", amplitude, "drive amplitude, V");
    dev_cmd->add_option("--frequency", wave_freq, "drive frequency, Hz");
    dev_cmd->add_option("--value", const_value, "constant drive level, V");
    dev_cmd->add_option("--periods", periods, "number of drive periods");
    dev_cmd->add_option("--steps-per-period", steps_per_period, "integration steps per period");
    dev_cmd->add_option("--x0", x0, "initial normalized state in [0, 1]");
    dev_cmd->add_option("--csv", csv_out, "write the trace to this CSV file");
    add_common(dev_cmd);

    CLI::App* fir_cmd = app.add_subcommand("bench-fir", "FIR filter configuration comparison");
    fir_cmd->add_option("--samples", samples, "stream length");
    fir_cmd->add_option("--seed", seed, "workload seed")->required();
    add_common(fir_cmd);

    CLI::App* fft_cmd = app.add_subcommand("bench-fft", "4-point FFT configuration comparison");
    fft_cmd->add_option("--transforms", transforms, "number of transforms");
    fft_cmd->add_option("--seed", seed, "workload seed")->required();
    fft_cmd->add_option("--twiddle-mode", twiddle_mode, "random | exact")
        ->check(CLI::IsMember({"random", "exact"}));
    add_common(fft_cmd);

    CLI::App* rep_cmd = app.add_subcommand("report", "render reference tables or compare saved reports");
    rep_cmd->add_flag("--table1", table1, "render the 32-bit comparison table");
    rep_cmd->add_option("--candidate", candidate_path, "candidate cost report (JSON)");
    rep_cmd->add_option("--baseline", baseline_path, "baseline cost report (JSON)");
    add_common(rep_cmd);

    std::vector<std::string> argv_strings;
    argv_strings.reserve(args.size() + 1);
    argv_strings.push_back("remul");
    argv_strings.insert(argv_strings.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_strings.size());
    for (const std::string& a : argv_strings) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        Scenario s = scenario_path.empty() ? Scenario{} : load_scenario(scenario_path);
        const auto touched = [&](const CLI::App* cmd, const std::string& opt) {
            return cmd->count(opt) > 0;
        };

        if (app.got_subcommand(plan_cmd) || app.got_subcommand(mult_cmd)) {
            CLI::App* cmd = app.got_subcommand(plan_cmd) ? plan_cmd : mult_cmd;
            if (touched(cmd, "--n")) s.n = n;
            if (touched(cmd, "--widths")) s.widths = parse_width_list(widths_str);
            if (touched(cmd, "--format")) s.format = format;
            if (cmd == mult_cmd && touched(cmd, "--pairs")) s.pairs = parse_pair_list(pairs_str);
            if (cmd == plan_cmd) {
                run_plan(s, out);
            } else {
                run_multiply(s, out);
            }
            return kExitOk;
        }
        if (app.got_subcommand(dev_cmd)) {
            if (touched(dev_cmd, "--waveform")) s.waveform = waveform;
            if (touched(dev_cmd, "--amplitude")) s.amplitude = amplitude;
            if (touched(dev_cmd, "--frequency")) s.wave_frequency_hz = wave_freq;
            if (touched(dev_cmd, "--value")) s.constant_value = const_value;
            if (touched(dev_cmd, "--periods")) s.periods = periods;
            if (touched(dev_cmd, "--steps-per-period")) s.steps_per_period = steps_per_period;
            if (touched(dev_cmd, "--x0")) s.x0 = x0;
            if (touched(dev_cmd, "--format")) s.format = format;
            run_device(s, csv_out, out);
            return kExitOk;
        }
        if (app.got_subcommand(fir_cmd)) {
            if (touched(fir_cmd, "--samples")) s.samples = samples;
            if (touched(fir_cmd, "--format")) s.format = format;
            s.seed = seed;
            run_bench_fir(s, out);
            return kExitOk;
        }
        if (app.got_subcommand(fft_cmd)) {
            if (touched(fft_cmd, "--transforms")) s.transforms = transforms;
            if (touched(fft_cmd, "--twiddle-mode")) s.twiddle_mode = twiddle_mode;
            if (touched(fft_cmd, "--format")) s.format = format;
            s.seed = seed;
            run_bench_fft(s, out);
            return kExitOk;
        }
        if (app.got_subcommand(rep_cmd)) {
            if (touched(rep_cmd, "--format")) s.format = format;
            if (!candidate_path.empty() || !baseline_path.empty()) {
                if (candidate_path.empty() || baseline_path.empty()) {
                    throw ValidationError("report: --candidate and --baseline go together");
                }
                run_report_compare(candidate_path, baseline_path, s, out);
            } else if (table1) {
                run_report_table1(s, out);
            } else {
                throw ValidationError("report: pass --table1 or --candidate/--baseline");
            }
            return kExitOk;
        }

        out << app.help();
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

} // namespace remul
