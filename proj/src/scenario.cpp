#include "remul/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace remul {

namespace {

std::string trim(const std::string& s) {
    const std::size_t first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return "";
    }
    const std::size_t last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) {
            throw std::invalid_argument(v);
        }
        return d;
    } catch (const std::exception&) {
        throw ValidationError(where + ": not a number: '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const std::uint64_t u = std::stoull(v, &pos);
        if (pos != v.size()) {
            throw std::invalid_argument(v);
        }
        return u;
    } catch (const std::exception&) {
        throw ValidationError(where + ": not an unsigned integer: '" + v + "'");
    }
}

std::vector<unsigned> parse_widths(std::string v, const std::string& where) {
    v = trim(v);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') {
            throw ValidationError(where + ": unterminated width list");
        }
        v = v.substr(1, v.size() - 2);
    }
    std::vector<unsigned> widths;
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        widths.push_back(static_cast<unsigned>(parse_u64(item, where)));
    }
    return widths;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pairs(const std::string& v,
                                                                 const std::string& where) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::istringstream is(trim(v));
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        const std::size_t x = item.find('x');
        if (x == std::string::npos) {
            throw ValidationError(where + ": operand pair must look like 21x19");
        }
        pairs.emplace_back(parse_u64(trim(item.substr(0, x)), where),
                           parse_u64(trim(item.substr(x + 1)), where));
    }
    return pairs;
}

std::string render_pairs(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
    std::string s;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (k) {
            s += ',';
        }
        s += std::to_string(pairs[k].first) + "x" + std::to_string(pairs[k].second);
    }
    return s;
}

std::string render_widths(const std::vector<unsigned>& widths) {
    std::string s = "[";
    for (std::size_t k = 0; k < widths.size(); ++k) {
        if (k) {
            s += ", ";
        }
        s += std::to_string(widths[k]);
    }
    return s + "]";
}

} // namespace

Scenario parse_scenario(std::istream& is) {
    Scenario s;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("scenario line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const std::string where = "scenario line " + std::to_string(line_no);

        if (key == "n") {
            s.n = static_cast<unsigned>(parse_u64(value, where));
        } else if (key == "widths") {
            s.widths = parse_widths(value, where);
        } else if (key == "pairs") {
            s.pairs = parse_pairs(value, where);
        } else if (key == "workload") {
            s.workload = value;
        } else if (key == "csv_path") {
            s.csv_path = value;
        } else if (key == "seed") {
            s.seed = parse_u64(value, where);
        } else if (key == "samples") {
            s.samples = parse_u64(value, where);
        } else if (key == "transforms") {
            s.transforms = parse_u64(value, where);
        } else if (key == "twiddle_mode") {
            s.twiddle_mode = value;
        } else if (key == "format") {
            s.format = value;
        } else if (key == "r_on") {
            s.device.r_on = parse_double(value, where);
        } else if (key == "r_off") {
            s.device.r_off = parse_double(value, where);
        } else if (key == "d") {
            s.device.d = parse_double(value, where);
        } else if (key == "mu_v") {
            s.device.mu_v = parse_double(value, where);
        } else if (key == "window_exponent") {
            s.device.window_exponent = static_cast<int>(parse_u64(value, where));
        } else if (key == "frequency_hz") {
            s.frequency_hz = parse_double(value, where);
        } else if (key == "waveform") {
            s.waveform = value;
        } else if (key == "amplitude") {
            s.amplitude = parse_double(value, where);
        } else if (key == "wave_frequency_hz") {
            s.wave_frequency_hz = parse_double(value, where);
        } else if (key == "constant_value") {
            s.constant_value = parse_double(value, where);
        } else if (key == "periods") {
            s.periods = static_cast<unsigned>(parse_u64(value, where));
        } else if (key == "steps_per_period") {
            s.steps_per_period = static_cast<unsigned>(parse_u64(value, where));
        } else if (key == "x0") {
            s.x0 = parse_double(value, where);
        } else {
            throw ValidationError("scenario line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw ValidationError("cannot open scenario file: " + path);
    }
    return parse_scenario(is);
}

std::string render_scenario(const Scenario& s) {
    std::ostringstream os;
    os << "# remul scenario\n";
    os << "n = " << s.n << '\n';
    os << "widths = " << render_widths(s.widths) << '\n';
    os << "pairs = " << render_pairs(s.pairs) << '\n';
    os << "workload = " << s.workload << '\n';
    os << "csv_path = " << s.csv_path << '\n';
    os << "seed = " << s.seed << '\n';
    os << "samples = " << s.samples << '\n';
    os << "transforms = " << s.transforms << '\n';
    os << "twiddle_mode = " << s.twiddle_mode << '\n';
    os << "format = " << s.format << '\n';
    os << "r_on = " << fmt_double(s.device.r_on) << '\n';
    os << "r_off = " << fmt_double(s.device.r_off) << '\n';
    os << "d = " << fmt_double(s.device.d) << '\n';
    os << "mu_v = " << fmt_double(s.device.mu_v) << '\n';
    os << "window_exponent = " << s.device.window_exponent << '\n';
    os << "frequency_hz = " << fmt_double(s.frequency_hz) << '\n';
    os << "waveform = " << s.waveform << '\n';
    os << "amplitude = " << fmt_double(s.amplitude) << '\n';
    os << "wave_frequency_hz = " << fmt_double(s.wave_frequency_hz) << '\n';
    os << "constant_value = " << fmt_double(s.constant_value) << '\n';
    os << "periods = " << s.periods << '\n';
    os << "steps_per_period = " << s.steps_per_period << '\n';
    os << "x0 = " << fmt_double(s.x0) << '\n';
    return os.str();
}

std::vector<unsigned> parse_width_list(const std::string& text) {
    return parse_widths(text, "width list");
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> parse_pair_list(const std::string& text) {
    return parse_pairs(text, "pair list");
}

TechConstants scenario_tech(const Scenario& s) {
    TechConstants tc;
    tc.device = s.device;
    tc.frequency_hz = s.frequency_hz;
    tc.validate();
    return tc;
}

} // namespace remul
