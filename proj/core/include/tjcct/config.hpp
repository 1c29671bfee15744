#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tjcct/simulator.hpp"

namespace tjcct {

struct SweepSpec {
    std::string axis;            // empty: no sweep; "task-size" otherwise
    std::vector<double> grid;    // mean task sizes in bits
};

/// Fully resolved experiment description, SI units throughout.
struct ExperimentConfig {
    ScenarioConfig scenario;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    std::vector<StrategyKind> strategies{StrategyKind::tjcct};
    SweepSpec sweep;
    std::string output_dir = "results";
    bool audit = true;
    int threads = 0;  // 0: hardware concurrency

    /// Throws ConfigError on any invalid field.
    void validate() const;
};

/// Parses JSON config text (comments allowed). Bare numbers carry each
/// field's documented unit; strings such as "20 dBm" or "100 ms" name their
/// own. Unknown keys are errors. `origin` prefixes diagnostics.
ExperimentConfig parse_config_text(std::string_view text, std::string_view origin = "<config>");
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Resolved config as JSON with explicit SI units; parsing it back yields
/// the identical config.
std::string echo_config(const ExperimentConfig& config);

/// FNV-1a of the echo.
std::uint64_t config_hash(const ExperimentConfig& config);

/// Converts "<number> <unit>" for the given dimension into SI.
enum class Dimension { time, data, frequency, power, bandwidth, energy, length, speed };
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace tjcct
