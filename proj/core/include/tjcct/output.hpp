#pragma once

#include <filesystem>
#include <string>

#include "tjcct/experiment.hpp"

namespace tjcct {

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double v);

inline constexpr const char* trace_header = "slot,strategy,seed,U_t,qoe_t,revenue_t,generated,completed,dropped";

std::string trace_csv(const MetricTrace& trace);
/// Columns: epoch,uav_id,x,y
std::string trajectory_csv(const MetricTrace& trace);
/// Columns: slot, then one busy-core count per server.
std::string occupancy_csv(const MetricTrace& trace);
std::string summary_json(const ResultBundle& bundle);
std::string audit_report(const ResultBundle& bundle);

/// Stem shared by a cell's files, e.g. "TJCCT_s3" or "GS_s1_p2".
std::string cell_stem(const Cell& cell);

/// `root`/<config hash>-s<seeds>, with -r2, -r3, ... appended when taken.
std::filesystem::path fresh_results_dir(const std::filesystem::path& root, const ExperimentConfig& config);

/// Writes the bundle into a fresh directory under `root` and returns it.
/// I/O failures throw std::runtime_error naming the path.
std::filesystem::path emit_outputs(const ResultBundle& bundle, const std::filesystem::path& root);

}  // namespace tjcct
