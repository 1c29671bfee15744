#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tjcct/config.hpp"
#include "tjcct/simulator.hpp"

namespace tjcct {

/// One (strategy, seed, sweep point) run.
struct Cell {
    StrategyKind strategy = StrategyKind::tjcct;
    std::uint64_t seed = 0;
    std::optional<std::size_t> sweep_index;
    double sweep_value = 0.0;  // mean task size in bits when sweeping
};

struct CellResult {
    Cell cell;
    std::optional<MetricTrace> trace;
    std::string error;  // set when the run threw
};

struct ResultBundle {
    ExperimentConfig config;
    std::vector<CellResult> cells;

    [[nodiscard]] std::size_t audit_violations() const;
    [[nodiscard]] std::size_t failed_cells() const;
};

/// Cells in emission order: sweep point, then strategy, then seed.
std::vector<Cell> plan_cells(const ExperimentConfig& config);

/// Scenario for a cell: a task-size sweep point m draws sizes from
/// [m/3, 5m/3], so m = 3 Mb reproduces the default [1, 5] Mb.
ScenarioConfig cell_scenario(const ExperimentConfig& config, const Cell& cell);

/// Runs every cell on a worker pool. A failing cell records its error and
/// leaves the others running.
ResultBundle run_experiment(const ExperimentConfig& config);

}  // namespace tjcct
