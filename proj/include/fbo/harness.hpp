#pragma once

// Experiment driver behind the fbo_lab command line.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbo {

// Invalid or unknown configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBlowUp = 3;

// Fully materialized run description. Parameters left as "auto" on the
// command line resolve per alpha to the admissible defaults and stay unset here.
struct ExperimentConfig {
    std::string subcommand;
    std::vector<double> alpha;
    std::vector<double> s;
    std::optional<double> b, b_prime, epsilon;

    std::size_t n_modes = 0;
    double box_length = 0.0;
    double t_span = 0.0;
    double dt = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::string out;

    std::string kind;
    std::vector<std::size_t> resolutions;

    std::string family;
    double amplitude = 0.0;
    double width = 0.0;
    double l2_norm = 0.0; // > 0 rescales the initial field to this L2 norm
    bool zero_mean = true;

    double T = 0.0;
    double tol = 0.0;
    std::size_t max_iter = 0;
    std::string scheme;
    std::size_t stride = 1;
};

// Parses argv (subcommand plus flags, optional --config file); throws
// ConfigError listing unknown keys. Returns nullopt after printing help.
std::optional<ExperimentConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out);

// Flat key = value text accepted back by --config.
std::string echo_config(const ExperimentConfig& config);

// Runs the configured subcommand and writes its artifacts under config.out.
int run(const ExperimentConfig& config, std::ostream& log);

// parse_arguments + run with exit-code mapping.
int run_cli(int argc, const char* const* argv);

} // namespace fbo
