#include "tjcct/output.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tjcct {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string trace_csv(const MetricTrace& trace) {
    std::string out = trace_header;
    out += '\n';
    const std::string strategy(to_string(trace.strategy));
    const std::string seed = std::to_string(trace.seed);
    for (const SlotRecord& r : trace.slots) {
        out += std::to_string(r.slot) + ',' + strategy + ',' + seed + ',' + format_number(r.utility) + ',' +
               format_number(r.qoe) + ',' + format_number(r.revenue) + ',' + std::to_string(r.generated) + ',' +
               std::to_string(r.completed) + ',' + std::to_string(r.dropped) + '\n';
    }
    return out;
}

std::string trajectory_csv(const MetricTrace& trace) {
    std::string out = "epoch,uav_id,x,y\n";
    for (std::size_t u = 0; u < trace.uav_paths.size(); ++u) {
        for (std::size_t k = 0; k < trace.uav_paths[u].size(); ++k) {
            const Vec2 p = trace.uav_paths[u][k];
            out += std::to_string(k + 1) + ',' + std::to_string(trace.uav_ids[u]) + ',' + format_number(p.x) + ',' +
                   format_number(p.y) + '\n';
        }
    }
    return out;
}

std::string occupancy_csv(const MetricTrace& trace) {
    std::string out = "slot";
    for (const std::string& name : trace.server_names) out += ',' + name;
    out += '\n';
    for (const SlotRecord& r : trace.slots) {
        out += std::to_string(r.slot);
        for (int busy : r.occupancy) out += ',' + std::to_string(busy);
        out += '\n';
    }
    return out;
}

std::string cell_stem(const Cell& cell) {
    std::string stem = std::string(to_string(cell.strategy)) + "_s" + std::to_string(cell.seed);
    if (cell.sweep_index) stem += "_p" + std::to_string(*cell.sweep_index);
    return stem;
}

std::string summary_json(const ResultBundle& bundle) {
    using json = nlohmann::json;
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(bundle.config)));
    json rows = json::array();
    for (const CellResult& c : bundle.cells) {
        json row = {{"strategy", std::string(to_string(c.cell.strategy))},
                    {"seed", c.cell.seed},
                    {"file", cell_stem(c.cell) + "_trace.csv"}};
        if (c.cell.sweep_index) {
            row["sweep_index"] = *c.cell.sweep_index;
            row["mean_task_size_bits"] = c.cell.sweep_value;
        }
        if (c.trace) {
            const MetricTrace& t = *c.trace;
            row["total_utility"] = t.total_utility();
            row["total_qoe"] = t.total_qoe();
            row["total_revenue"] = t.total_revenue();
            row["generated"] = t.total_generated();
            row["completed"] = t.total_completed();
            row["dropped"] = t.total_dropped();
            row["in_flight"] = t.in_flight;
            row["pending"] = t.pending;
            row["audit_violations"] = t.audits.size();
            row["sca_iteration_caps"] = t.sca_iteration_caps;
        } else {
            row["error"] = c.error;
        }
        rows.push_back(row);
    }
    const json doc = {{"config_hash", hash},
                      {"audit_violations", bundle.audit_violations()},
                      {"failed_cells", bundle.failed_cells()},
                      {"cells", rows}};
    return doc.dump(2) + "\n";
}

std::string audit_report(const ResultBundle& bundle) {
    std::string out = "cell,slot,constraint,detail\n";
    for (const CellResult& c : bundle.cells) {
        if (!c.trace) {
            out += cell_stem(c.cell) + ",0,error,\"" + c.error + "\"\n";
            continue;
        }
        for (const AuditRecord& a : c.trace->audits) {
            out += cell_stem(c.cell) + ',' + std::to_string(a.slot) + ',' + a.constraint + ",\"" + a.detail + "\"\n";
        }
    }
    return out;
}

std::filesystem::path fresh_results_dir(const std::filesystem::path& root, const ExperimentConfig& config) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(config)));
    std::string name = std::string(hash) + "-s";
    for (std::size_t i = 0; i < config.seeds.size(); ++i) {
        if (i > 0) name += '_';
        name += std::to_string(config.seeds[i]);
    }
    std::filesystem::path dir = root / name;
    for (int r = 2; std::filesystem::exists(dir); ++r) dir = root / (name + "-r" + std::to_string(r));
    return dir;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::filesystem::path emit_outputs(const ResultBundle& bundle, const std::filesystem::path& root) {
    const std::filesystem::path dir = fresh_results_dir(root, bundle.config);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    write_file(dir / "config.json", echo_config(bundle.config));
    for (const CellResult& c : bundle.cells) {
        if (!c.trace) continue;
        const std::string stem = cell_stem(c.cell);
        write_file(dir / (stem + "_trace.csv"), trace_csv(*c.trace));
        write_file(dir / (stem + "_trajectory.csv"), trajectory_csv(*c.trace));
        write_file(dir / (stem + "_occupancy.csv"), occupancy_csv(*c.trace));
    }
    write_file(dir / "summary.json", summary_json(bundle));
    write_file(dir / "audit.csv", audit_report(bundle));
    return dir;
}

}  // namespace tjcct
