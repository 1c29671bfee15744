#include "tjcct/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace tjcct {

std::size_t ResultBundle::audit_violations() const {
    std::size_t n = 0;
    for (const CellResult& c : cells) {
        if (c.trace) n += c.trace->audits.size();
    }
    return n;
}

std::size_t ResultBundle::failed_cells() const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [](const CellResult& c) { return !c.trace; }));
}

std::vector<Cell> plan_cells(const ExperimentConfig& config) {
    std::vector<Cell> cells;
    const auto add = [&](std::optional<std::size_t> idx, double value) {
        for (StrategyKind k : config.strategies) {
            for (std::uint64_t seed : config.seeds) cells.push_back({k, seed, idx, value});
        }
    };
    if (config.sweep.axis.empty()) {
        add(std::nullopt, 0.0);
    } else {
        for (std::size_t i = 0; i < config.sweep.grid.size(); ++i) add(i, config.sweep.grid[i]);
    }
    return cells;
}

ScenarioConfig cell_scenario(const ExperimentConfig& config, const Cell& cell) {
    ScenarioConfig s = config.scenario;
    if (cell.sweep_index) s.task_size = {cell.sweep_value / 3.0, 5.0 * cell.sweep_value / 3.0};
    return s;
}

ResultBundle run_experiment(const ExperimentConfig& config) {
    config.validate();
    ResultBundle bundle;
    bundle.config = config;
    for (const Cell& c : plan_cells(config)) bundle.cells.push_back({c, std::nullopt, {}});

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<std::size_t>(config.threads > 0 ? static_cast<unsigned>(config.threads) : hw);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < bundle.cells.size(); i = next++) {
            CellResult& r = bundle.cells[i];
            try {
                r.trace = run(cell_scenario(config, r.cell), r.cell.strategy, r.cell.seed, config.audit);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, bundle.cells.size()); ++w) pool.emplace_back(work);
    pool.clear();  // joins
    return bundle;
}

}  // namespace tjcct
