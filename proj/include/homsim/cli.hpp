#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homsim/hom.hpp"
#include "homsim/spectrum.hpp"

namespace homsim {

enum class Command { g2, spectrum, sweep };

// Invalid input: unknown key, unparseable number, violated invariant,
// unwritable output. Mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::g2;
    double delta1 = 3.0;
    double delta2 = -4.0;
    double delta = 3.0;  // single-emitter detuning used by `spectrum`
    double gamma = 2.0;
    double tau = 0.2;
    bool pulses = true;
    double t_max = 4.8;  // 8.0 when the spectrum command leaves it unset
    double theta_max = 3.0;
    int theta_steps = 601;
    int t_steps = 4801;
    double omega_min = -20.0;
    double omega_max = 20.0;
    int omega_steps = 1601;
    PopulationConvention convention = PopulationConvention::as_published;
    CoherenceMethod method = CoherenceMethod::closed_form;
    bool steady = false;
    std::vector<std::pair<double, double>> pairs;  // sweep detuning pairs
    std::string output_path;
};

// Parses "<command> [--flag value ...]" merged over an optional line-oriented
// key=value config file ('#' comments; keys are flag names with '-' -> '_').
// Flags win over the file, the file wins over defaults. The file comes from
// --config, or from the config_file parameter when no flag names one. Throws
// UsageError naming the offending key on any invalid input.
RunConfig parse_config(const std::vector<std::string>& args,
                       const std::optional<std::string>& config_file = std::nullopt);

// Executes the configured command and writes CSV output. Returns 0 on
// success, 2 on invalid input (e.g. unwritable path), 3 on numeric failure.
int run(const RunConfig& config);

// CSV helpers: header "<abscissa>,<value>", one pair per line, 12 significant
// digits, newline-terminated. Identical configs produce byte-identical files.
void write_curve_csv(const std::string& path, const CorrelationCurve& curve,
                     const std::string& abscissa_name,
                     const std::string& value_name);
CorrelationCurve read_curve_csv(const std::string& path);

// 12-significant-digit formatting shared by the CSV writer and summaries.
std::string format_value(double v);

std::string usage_text();

}  // namespace homsim
