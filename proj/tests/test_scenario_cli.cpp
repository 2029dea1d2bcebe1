#include <doctest.h>

#include <sstream>

#include "remul/cli.hpp"
#include "remul/scenario.hpp"

using namespace remul;

namespace {

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) {
        *out_text = out.str();
    }
    if (err_text) {
        *err_text = err.str();
    }
    return code;
}

} // namespace

TEST_CASE("scenario round-trips through render and parse") {
    Scenario s;
    s.n = 8;
    s.widths = {5, 3};
    s.pairs = {{21, 19}, {5, 6}};
    s.seed = 99;
    s.format = "json";
    s.device.r_on = 250.0;
    s.device.window_exponent = 2;
    s.amplitude = 0.125;

    const std::string text = render_scenario(s);
    std::istringstream is(text);
    const Scenario back = parse_scenario(is);
    CHECK(back == s);

    // And a second round for stability.
    std::istringstream is2(render_scenario(back));
    CHECK(parse_scenario(is2) == s);
}

TEST_CASE("minimal scenario leaves defaults in place") {
    std::istringstream is("n = 4\nwidths = [2, 2]\n");
    const Scenario s = parse_scenario(is);
    CHECK(s.n == 4);
    CHECK(s.widths == std::vector<unsigned>{2, 2});
    CHECK(s.device.r_on == MemristorParams{}.r_on);
    CHECK(s.seed == 1);
    CHECK(s.format == "human");
}

TEST_CASE("unknown scenario keys are rejected with a line number") {
    std::istringstream is("n = 8\nwidht = 4\n");
    try {
        parse_scenario(is);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("line 2") != std::string::npos);
        CHECK(what.find("widht") != std::string::npos);
    }
}

TEST_CASE("malformed scenario values are rejected") {
    std::istringstream is1("n = eight\n");
    CHECK_THROWS_AS(parse_scenario(is1), ValidationError);
    std::istringstream is2("pairs = 21*19\n");
    CHECK_THROWS_AS(parse_scenario(is2), ValidationError);
    std::istringstream is3("just a line\n");
    CHECK_THROWS_AS(parse_scenario(is3), ValidationError);
}

TEST_CASE("width and pair list helpers") {
    CHECK(parse_width_list("5,3") == std::vector<unsigned>{5, 3});
    CHECK(parse_width_list("[5, 3]") == std::vector<unsigned>{5, 3});
    const auto pairs = parse_pair_list("21x19,5x6");
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::pair<std::uint64_t, std::uint64_t>{21, 19});
    CHECK(pairs[1] == std::pair<std::uint64_t, std::uint64_t>{5, 6});
}

TEST_CASE("cli plan prints the published control strings") {
    std::string out;
    const int code = run({"plan", "--n", "8", "--widths", "5,3"}, &out);
    CHECK(code == kExitOk);
    CHECK(out.find("11100000") != std::string::npos);
    CHECK(out.find("00011111") != std::string::npos);
}

TEST_CASE("cli rejects a 3-way partition with the validation exit code") {
    std::string out, err;
    const int code = run({"plan", "--n", "8", "--widths", "3,3,2"}, &out, &err);
    CHECK(code == kExitValidation);
    CHECK(err.find("UnsupportedPartitioning") != std::string::npos);
    CHECK(out.empty());
}

TEST_CASE("cli multiply emits the expected products") {
    std::string out;
    const int code = run({"multiply", "--n", "8", "--widths", "5,3", "--pairs",
                          "21x19,5x6", "--format", "json"},
                         &out);
    CHECK(code == kExitOk);
    CHECK(out.find("\"products\": [") != std::string::npos);
    CHECK(out.find("399") != std::string::npos);
    CHECK(out.find("30") != std::string::npos);
}

TEST_CASE("cli usage errors use their own exit code") {
    std::string out, err;
    CHECK(run({"plan", "--no-such-flag"}, &out, &err) == kExitUsage);
    CHECK(run({"bench-fir"}, &out, &err) == kExitUsage); // --seed is required
    CHECK(run({}, &out, &err) == kExitUsage);
}

TEST_CASE("cli help exits cleanly") {
    std::string out;
    CHECK(run({"--help"}, &out) == kExitOk);
    CHECK(out.find("remul") != std::string::npos);
    CHECK(out.find("Exit codes") != std::string::npos);
}

TEST_CASE("scenario validation happens before any output") {
    std::string out, err;
    std::ostringstream scenario;
    // widths exceed n: must fail without emitting partial results.
    const int code = run({"multiply", "--n", "8", "--widths", "6,3", "--pairs", "1x1,1x1"},
                         &out, &err);
    CHECK(code == kExitValidation);
    CHECK(out.empty());
    CHECK(err.find("WidthOverflow") != std::string::npos);
}

TEST_CASE("benchmark runs are byte-identical for a fixed seed") {
    std::string first, second;
    const std::vector<std::string> cmd = {"bench-fir", "--samples", "40", "--seed", "7",
                                          "--format", "json"};
    CHECK(run(cmd, &first) == kExitOk);
    CHECK(run(cmd, &second) == kExitOk);
    CHECK(first == second);
    CHECK(first.find("paper_reference_ratios") != std::string::npos);
}

TEST_CASE("device command reports a convergent residual") {
    std::string out;
    const int code = run({"device", "--waveform", "sine", "--amplitude", "0.5",
                          "--frequency", "10", "--steps-per-period", "500", "--x0", "0.5",
                          "--format", "json"},
                         &out);
    CHECK(code == kExitOk);
    CHECK(out.find("flux_charge_residual") != std::string::npos);
    CHECK(out.find("convergence_factor") != std::string::npos);
}

TEST_CASE("report table renders reference designs") {
    std::string out;
    CHECK(run({"report", "--table1"}, &out) == kExitOk);
    CHECK(out.find("cmos_rca") != std::string::npos);
    CHECK(out.find("0.83") != std::string::npos);
}
