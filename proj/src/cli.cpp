#include "homsim/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace homsim {

namespace {

std::string normalize_key(std::string key) {
    std::replace(key.begin(), key.end(), '-', '_');
    return key;
}

double parse_double(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw UsageError("invalid value for " + key + ": '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE || v < INT_MIN || v > INT_MAX)
        throw UsageError("invalid value for " + key + ": '" + text + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw UsageError("invalid value for " + key + ": '" + text + "' (use true/false/1/0)");
}

PopulationConvention parse_convention(const std::string& text) {
    if (text == "as-published" || text == "as_published")
        return PopulationConvention::as_published;
    if (text == "excited") return PopulationConvention::excited;
    throw UsageError("invalid value for convention: '" + text +
                     "' (use as-published or excited)");
}

CoherenceMethod parse_method(const std::string& text) {
    if (text == "closed-form" || text == "closed_form")
        return CoherenceMethod::closed_form;
    if (text == "qrt-numeric" || text == "qrt_numeric")
        return CoherenceMethod::qrt_numeric;
    throw UsageError("invalid value for method: '" + text +
                     "' (use closed-form or qrt-numeric)");
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos || item.find(':', colon + 1) != std::string::npos)
            throw UsageError("invalid value for pairs: '" + item +
                             "' (expected delta1:delta2)");
        out.emplace_back(parse_double("pairs", item.substr(0, colon)),
                         parse_double("pairs", item.substr(colon + 1)));
    }
    if (out.empty()) throw UsageError("invalid value for pairs: empty list");
    return out;
}

// Raw settings prior to merging; unset fields fall back to documented
// defaults (some of which depend on the command).
struct Settings {
    std::optional<double> delta1, delta2, delta, gamma, tau, t_max, theta_max,
        omega_min, omega_max;
    std::optional<int> theta_steps, t_steps, omega_steps;
    std::optional<bool> no_pulses, steady;
    std::optional<PopulationConvention> convention;
    std::optional<CoherenceMethod> method;
    std::optional<std::vector<std::pair<double, double>>> pairs;
    std::optional<std::string> out;
};

void apply_setting(Settings& s, const std::string& key, const std::string& value) {
    if (key == "delta1")
        s.delta1 = parse_double(key, value);
    else if (key == "delta2")
        s.delta2 = parse_double(key, value);
    else if (key == "delta")
        s.delta = parse_double(key, value);
    else if (key == "gamma")
        s.gamma = parse_double(key, value);
    else if (key == "tau")
        s.tau = parse_double(key, value);
    else if (key == "t_max")
        s.t_max = parse_double(key, value);
    else if (key == "theta_max")
        s.theta_max = parse_double(key, value);
    else if (key == "omega_min")
        s.omega_min = parse_double(key, value);
    else if (key == "omega_max")
        s.omega_max = parse_double(key, value);
    else if (key == "theta_steps")
        s.theta_steps = parse_int(key, value);
    else if (key == "t_steps")
        s.t_steps = parse_int(key, value);
    else if (key == "omega_steps")
        s.omega_steps = parse_int(key, value);
    else if (key == "no_pulses")
        s.no_pulses = parse_bool(key, value);
    else if (key == "steady")
        s.steady = parse_bool(key, value);
    else if (key == "convention")
        s.convention = parse_convention(value);
    else if (key == "method")
        s.method = parse_method(value);
    else if (key == "pairs")
        s.pairs = parse_pairs(value);
    else if (key == "out")
        s.out = value;
    else
        throw UsageError("unknown key: " + key);
}

std::string trim(const std::string& text) {
    const std::size_t first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const std::size_t last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

void load_config_file(Settings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config file " + path + " line " +
                             std::to_string(line_no) + ": expected key=value");
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        if (key == "config")
            throw UsageError("config file " + path + ": key 'config' is not allowed");
        apply_setting(s, key, trim(line.substr(eq + 1)));
    }
}

Command parse_command(const std::string& text) {
    if (text == "g2") return Command::g2;
    if (text == "spectrum") return Command::spectrum;
    if (text == "sweep") return Command::sweep;
    throw UsageError("unknown command: '" + text + "' (use g2, spectrum or sweep)");
}

void check(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

RunConfig finalize(Command command, const Settings& s) {
    RunConfig cfg;
    cfg.command = command;
    cfg.delta1 = s.delta1.value_or(3.0);
    cfg.delta2 = s.delta2.value_or(-4.0);
    cfg.delta = s.delta.value_or(3.0);
    cfg.gamma = s.gamma.value_or(2.0);
    cfg.tau = s.tau.value_or(0.2);
    cfg.pulses = !s.no_pulses.value_or(false);
    cfg.t_max = s.t_max.value_or(command == Command::spectrum ? 8.0 : 4.8);
    cfg.theta_max = s.theta_max.value_or(3.0);
    cfg.theta_steps = s.theta_steps.value_or(601);
    cfg.t_steps = s.t_steps.value_or(4801);
    cfg.omega_min = s.omega_min.value_or(-20.0);
    cfg.omega_max = s.omega_max.value_or(20.0);
    cfg.omega_steps = s.omega_steps.value_or(1601);
    cfg.convention = s.convention.value_or(command == Command::spectrum
                                               ? PopulationConvention::excited
                                               : PopulationConvention::as_published);
    cfg.method = s.method.value_or(CoherenceMethod::closed_form);
    cfg.steady = s.steady.value_or(false);
    cfg.pairs = s.pairs.value_or(std::vector<std::pair<double, double>>{
        {3.0, -4.0}, {3.0, -2.0}, {3.0, 2.0}});
    switch (command) {
        case Command::g2: cfg.output_path = s.out.value_or("g2.csv"); break;
        case Command::spectrum: cfg.output_path = s.out.value_or("spectrum.csv"); break;
        case Command::sweep: cfg.output_path = s.out.value_or("sweep"); break;
    }

    check(cfg.gamma > 0.0 && std::isfinite(cfg.gamma), "gamma: must be positive");
    check(!cfg.pulses || (cfg.tau > 0.0 && std::isfinite(cfg.tau)),
          "tau: must be positive when pulses are enabled");
    check(cfg.t_max > 0.0 && std::isfinite(cfg.t_max), "t_max: must be positive");
    check(cfg.theta_max > 0.0 && std::isfinite(cfg.theta_max),
          "theta_max: must be positive");
    check(cfg.theta_steps >= 2, "theta_steps: must be >= 2");
    check(cfg.t_steps >= 2, "t_steps: must be >= 2");
    check(cfg.omega_steps >= 2, "omega_steps: must be >= 2");
    check(cfg.omega_min < cfg.omega_max, "omega_min: must be below omega_max");
    check(std::isfinite(cfg.delta1) && std::isfinite(cfg.delta2) &&
              std::isfinite(cfg.delta),
          "delta: detunings must be finite");
    check(!cfg.steady || cfg.pulses, "steady: requires pulses enabled");
    for (const auto& [d1, d2] : cfg.pairs)
        check(std::isfinite(d1) && std::isfinite(d2), "pairs: detunings must be finite");
    return cfg;
}

int worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

HomScenario scenario_for(const RunConfig& c, double d1, double d2) {
    HomScenario s;
    s.emitter1 = {d1, c.gamma};
    s.emitter2 = {d2, c.gamma};
    s.train = {c.tau, c.pulses};
    s.convention = c.convention;
    s.method = c.method;
    s.t_max = c.t_max;
    s.t_steps = c.t_steps;
    s.theta_grid = make_theta_grid(c.theta_max, c.theta_steps, s.train);
    return s;
}

void run_g2(const RunConfig& c) {
    const HomScenario s = scenario_for(c, c.delta1, c.delta2);
    const CorrelationCurve curve = c.steady
                                       ? g2_34_integrated_steady(s, worker_count())
                                       : g2_34_integrated(s, worker_count());
    write_curve_csv(c.output_path, curve, "theta", "g2");
}

void run_spectrum(const RunConfig& c) {
    const EmitterParams p{c.delta, c.gamma};
    const PulseTrain train{c.tau, c.pulses};
    const SpectrumGrid grid{c.omega_min, c.omega_max, c.omega_steps};
    write_curve_csv(c.output_path,
                    emission_spectrum(p, train, grid, c.t_max, c.convention),
                    "omega", "intensity");
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void run_sweep(const RunConfig& c) {
    std::vector<CorrelationCurve> curves;
    std::vector<std::string> labels;
    curves.reserve(c.pairs.size());
    for (const auto& [d1, d2] : c.pairs) {
        curves.push_back(g2_34_integrated(scenario_for(c, d1, d2), worker_count()));
        labels.push_back("(" + short_number(d1) + "," + short_number(d2) + ")");
        write_curve_csv(c.output_path + "_d1_" + short_number(d1) + "_d2_" +
                            short_number(d2) + ".csv",
                        curves.back(), "theta", "g2");
    }
    double peak = 0.0;
    for (const CorrelationCurve& curve : curves)
        for (double v : curve.values) peak = std::max(peak, v);
    std::ostringstream line;
    line << "sweep: " << curves.size() << " curves, peak " << format_value(peak);
    double worst = 0.0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
            double sup = 0.0;
            for (std::size_t k = 0; k < curves[i].values.size(); ++k)
                sup = std::max(sup,
                               std::abs(curves[i].values[k] - curves[j].values[k]));
            worst = std::max(worst, sup);
            line << ", sup-norm " << labels[i] << "-" << labels[j] << " "
                 << format_value(sup);
        }
    }
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.3f", peak > 0.0 ? 100.0 * worst / peak : 0.0);
    line << ", max " << pct << "% of peak";
    std::cout << line.str() << "\n";
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_file) {
    if (args.empty()) throw UsageError("missing command (use g2, spectrum or sweep)");
    const Command command = parse_command(args[0]);

    // Collect flags first so --config is known before the file is merged;
    // flag settings are applied after the file and therefore win.
    std::vector<std::pair<std::string, std::string>> flag_settings;
    std::optional<std::string> config_path = config_file;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& token = args[i];
        if (token.rfind("--", 0) != 0)
            throw UsageError("unexpected argument: '" + token + "'");
        std::string key = token.substr(2);
        std::optional<std::string> inline_value;
        const std::size_t eq = key.find('=');
        if (eq != std::string::npos) {
            inline_value = key.substr(eq + 1);
            key.erase(eq);
        }
        key = normalize_key(key);
        if (key == "no_pulses" || key == "steady") {
            flag_settings.emplace_back(key, inline_value.value_or("true"));
            continue;
        }
        std::string value;
        if (inline_value) {
            value = *inline_value;
        } else {
            if (i + 1 >= args.size())
                throw UsageError("missing value for --" + key);
            value = args[++i];
        }
        if (key == "config")
            config_path = value;
        else
            flag_settings.emplace_back(key, value);
    }

    Settings settings;
    if (config_path) load_config_file(settings, *config_path);
    for (const auto& [key, value] : flag_settings) apply_setting(settings, key, value);
    return finalize(command, settings);
}

int run(const RunConfig& config) {
    try {
        switch (config.command) {
            case Command::g2: run_g2(config); break;
            case Command::spectrum: run_spectrum(config); break;
            case Command::sweep: run_sweep(config); break;
        }
        return 0;
    } catch (const NumericError& e) {
        std::cerr << "homsim: numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "homsim: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "homsim: " << e.what() << "\n";
        return 2;
    }
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_curve_csv(const std::string& path, const CorrelationCurve& curve,
                     const std::string& abscissa_name,
                     const std::string& value_name) {
    std::string data;
    data.reserve(32 * curve.abscissa.size());
    data += abscissa_name;
    data += ',';
    data += value_name;
    data += '\n';
    for (std::size_t i = 0; i < curve.abscissa.size(); ++i) {
        data += format_value(curve.abscissa[i]);
        data += ',';
        data += format_value(curve.values[i]);
        data += '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file: " + path);
    out << data;
    out.flush();
    if (!out) throw UsageError("failed while writing: " + path);
}

CorrelationCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path);
    CorrelationCurve curve;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line.find(',') == std::string::npos)
                throw UsageError(path + ": missing CSV header");
            curve.metadata = line;
            continue;
        }
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw UsageError(path + " line " + std::to_string(line_no) +
                             ": expected two comma-separated values");
        const std::string key = path + " line " + std::to_string(line_no);
        curve.abscissa.push_back(parse_double(key, line.substr(0, comma)));
        curve.values.push_back(parse_double(key, line.substr(comma + 1)));
        if (curve.abscissa.size() > 1 &&
            !(curve.abscissa.back() > curve.abscissa[curve.abscissa.size() - 2]))
            throw UsageError(path + ": abscissa not strictly ascending");
    }
    return curve;
}

std::string usage_text() {
    return
        "usage: homsim <command> [--flag value ...]\n"
        "\n"
        "commands:\n"
        "  g2        integrated two-detector correlation g2(theta) -> CSV\n"
        "  spectrum  single-emitter emission spectrum S(omega) -> CSV\n"
        "  sweep     g2 curves for a list of detuning pairs + sup-norm summary\n"
        "\n"
        "flags (defaults in parentheses):\n"
        "  --delta1 X        detuning of emitter 1 (3.0)\n"
        "  --delta2 X        detuning of emitter 2 (-4.0)\n"
        "  --delta X         single-emitter detuning for spectrum (3.0)\n"
        "  --gamma X         spontaneous emission rate (2.0)\n"
        "  --tau X           pulse period (0.2)\n"
        "  --no-pulses       disable the pulse train\n"
        "  --t-max X         integration horizon (4.8; spectrum: 8.0)\n"
        "  --theta-max X     delay grid upper end (3.0)\n"
        "  --theta-steps N   delay grid points (601)\n"
        "  --t-steps N       uniform t-integration nodes (4801)\n"
        "  --omega-min X     spectrum grid lower end (-20)\n"
        "  --omega-max X     spectrum grid upper end (20)\n"
        "  --omega-steps N   spectrum grid points (1601)\n"
        "  --convention C    as-published | excited (as-published; spectrum: excited)\n"
        "  --method M        closed-form | qrt-numeric (closed-form)\n"
        "  --steady          integrate the stationary-regime correlation\n"
        "  --pairs L         sweep list, e.g. 3:-4,3:-2,3:2\n"
        "  --out PATH        output file (g2.csv/spectrum.csv) or prefix (sweep)\n"
        "  --config PATH     key=value file; '#' comments; flags win\n"
        "\n"
        "exit codes: 0 success, 2 invalid input, 3 numeric failure\n";
}

}  // namespace homsim
