// tjcct: run, compare and sweep the two time-scale offloading simulator.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tjcct/config.hpp"
#include "tjcct/errors.hpp"
#include "tjcct/experiment.hpp"
#include "tjcct/output.hpp"

namespace {

struct Common {
    std::string config_path;
    std::vector<std::uint64_t> seeds;
    bool audit = false;
    std::string out;
    std::string mode;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("config", c.config_path, "JSON experiment config (empty file = defaults)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seeds, "Seed(s); overrides experiment.seeds");
    cmd->add_flag("--audit", c.audit, "Force constraint auditing on");
    cmd->add_option("--out", c.out, "Results root directory");
    cmd->add_option("--mode", c.mode, "Channel gain mode")->check(CLI::IsMember({"expected", "sampled"}));
}

tjcct::ExperimentConfig load(const Common& c) {
    tjcct::ExperimentConfig cfg = tjcct::parse_config(c.config_path);
    if (!c.seeds.empty()) cfg.seeds = c.seeds;
    if (c.audit) cfg.audit = true;
    if (!c.out.empty()) cfg.output_dir = c.out;
    if (c.mode == "sampled") cfg.scenario.channel.mode = tjcct::FadingMode::sampled;
    if (c.mode == "expected") cfg.scenario.channel.mode = tjcct::FadingMode::expected;
    cfg.validate();
    return cfg;
}

int execute(const tjcct::ExperimentConfig& cfg) {
    const tjcct::ResultBundle bundle = tjcct::run_experiment(cfg);
    const auto dir = tjcct::emit_outputs(bundle, cfg.output_dir);

    std::printf("%-6s %8s %14s %14s %14s %6s\n", "cell", "seed", "utility", "qoe", "revenue", "audit");
    for (const auto& c : bundle.cells) {
        const std::string stem = tjcct::cell_stem(c.cell);
        if (!c.trace) {
            std::printf("%s  FAILED: %s\n", stem.c_str(), c.error.c_str());
            continue;
        }
        std::printf("%-6s %8llu %14.4f %14.4f %14.4f %6zu\n", std::string(tjcct::to_string(c.cell.strategy)).c_str(),
                    static_cast<unsigned long long>(c.cell.seed), c.trace->total_utility(), c.trace->total_qoe(),
                    c.trace->total_revenue(), c.trace->audits.size());
    }
    std::printf("results: %s\n", dir.string().c_str());
    if (bundle.failed_cells() > 0) return 3;
    if (bundle.audit_violations() > 0) {
        std::fprintf(stderr, "%zu audit violation(s); see %s\n", bundle.audit_violations(),
                     (dir / "audit.csv").string().c_str());
        return 2;
    }
    return 0;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(tjcct::parse_quantity(item, tjcct::Dimension::data));
    return grid;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two time-scale UAV-assisted edge computing simulator"};
    app.require_subcommand(1);

    Common run_opts;
    std::string strategy;
    auto* run = app.add_subcommand("run", "Run one strategy over the configured seeds");
    add_common(run, run_opts);
    run->add_option("--strategy", strategy, "TJCCT, LS, GS, NS or CS (default: first configured)");

    Common compare_opts;
    auto* compare = app.add_subcommand("compare", "Run TJCCT and every baseline");
    add_common(compare, compare_opts);

    Common sweep_opts;
    std::string axis = "task-size";
    std::string grid = "1,2,3,4,5";
    auto* sweep = app.add_subcommand("sweep", "Sweep the mean task size for every strategy");
    add_common(sweep, sweep_opts);
    sweep->add_option("--axis", axis, "Sweep axis")->check(CLI::IsMember({"task-size"}));
    sweep->add_option("--grid", grid, "Comma-separated mean task sizes (Mb unless suffixed)");

    Common validate_opts;
    auto* validate = app.add_subcommand("validate", "Parse a config and print the resolved echo");
    add_common(validate, validate_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            std::cout << tjcct::echo_config(load(validate_opts));
            return 0;
        }
        if (*run) {
            tjcct::ExperimentConfig cfg = load(run_opts);
            cfg.strategies = {strategy.empty() ? cfg.strategies.front() : tjcct::parse_strategy(strategy)};
            cfg.sweep = {};
            return execute(cfg);
        }
        const bool sweeping = static_cast<bool>(*sweep);
        tjcct::ExperimentConfig cfg = load(sweeping ? sweep_opts : compare_opts);
        cfg.strategies = {tjcct::StrategyKind::tjcct, tjcct::StrategyKind::cs, tjcct::StrategyKind::ns,
                          tjcct::StrategyKind::gs, tjcct::StrategyKind::ls};
        if (sweeping) {
            cfg.sweep = {axis, parse_grid(grid)};
        } else {
            cfg.sweep = {};
        }
        return execute(cfg);
    } catch (const tjcct::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
