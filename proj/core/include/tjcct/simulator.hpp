#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tjcct/bargaining.hpp"
#include "tjcct/channel.hpp"
#include "tjcct/cost_model.hpp"
#include "tjcct/scenario.hpp"
#include "tjcct/trajectory.hpp"

namespace tjcct {

enum class StrategyKind { tjcct, ls, gs, ns, cs };

std::string_view to_string(StrategyKind k);
/// Accepts the lower- or upper-case short names; throws ConfigError otherwise.
StrategyKind parse_strategy(std::string_view name);

struct Range {
    double min = 0.0;
    double max = 0.0;
};

struct IntRange {
    int min = 0;
    int max = 0;
};

struct TerrestrialSpec {
    Vec2 position{250.0, 250.0};
    double antenna_height = 25.0;
    Range core_capacity{20e9, 40e9};
    IntRange cores{4, 8};
    double energy_cap = 1000.0;
    double price_cap = 1.0;
    double weight = 0.5;
    double capacitance = 1e-28;
};

struct AerialSpec {
    Vec2 start;
    Vec2 destination;
    double altitude = 100.0;
    double max_speed = 25.0;
    Range core_capacity{10e9, 20e9};
    IntRange cores{2, 4};
    double energy_cap = 500.0;
    double price_cap = 1.0;
    double weight = 0.5;
    double capacitance = 1e-28;
    PropulsionParams propulsion;
};

inline AerialSpec aerial_route(Vec2 start, Vec2 destination) {
    AerialSpec a;
    a.start = start;
    a.destination = destination;
    return a;
}

/// Everything a run depends on besides the seed and strategy, in SI units.
struct ScenarioConfig {
    Clock clock;
    Arena arena;

    int md_count = 20;
    Range md_cpu{0.5e9, 1e9};
    Range md_transmit_power{0.01, 1.0};  // W (10..30 dBm)
    double md_energy_cap = 10.0;
    double md_budget = 5.0;
    double md_weight = 0.5;
    double md_capacitance = 1e-28;
    Range md_speed{0.5, 1.5};
    double mobility_memory = 0.8;
    double mobility_std = 0.3;

    double arrival_probability = 0.05;
    Range task_size{1e6, 5e6};           // bits
    Range cycles_per_bit{500.0, 1500.0};
    Range deadline{0.5, 5.0};            // s

    std::vector<TerrestrialSpec> terrestrial{TerrestrialSpec{}};
    std::vector<AerialSpec> aerial{aerial_route({0.0, 0.0}, {500.0, 0.0}),
                                   aerial_route({500.0, 0.0}, {0.0, 0.0})};

    ChannelParams channel;
    BargainParams bargain;
    ScaParams sca;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// One executed decision: the outcome plus the terms it was priced with.
struct Decision {
    Outcome outcome;
    std::optional<Deal> deal;
    double delay = 0.0;
    double md_energy = 0.0;
    double deadline = 0.0;
};

struct AuditRecord {
    int slot = 0;
    std::string constraint;  // e.g. "deadline", "core-capacity", "uav-reachability", "conservation"
    std::string detail;
};

struct SlotRecord {
    int slot = 0;
    double utility = 0.0;
    double qoe = 0.0;
    double revenue = 0.0;
    int generated = 0;
    int completed = 0;
    int dropped = 0;
    int requests = 0;              // |K_req| entering the offloading stage
    int trial_negotiations = 0;
    int bargaining_iterations = 0;
    std::vector<int> occupancy;    // busy cores per server after the slot's decisions
};

struct SlotOutcome {
    SlotRecord record;
    std::vector<Decision> decisions;
};

struct EpochDeal {
    int task = 0;
    int md = 0;
    int server = 0;     // index into World::servers
    Deal deal;
    double elapsed = 0.0;
};

/// Mutable simulation state for one (config, seed, strategy) run.
struct World {
    ScenarioConfig config;
    std::uint64_t seed = 0;
    Clock clock;
    std::vector<MobileDevice> mds;
    std::vector<EdgeServer> servers;
    std::vector<Task> tasks;
    std::vector<Decision> decided;  // indexed like tasks; target set once
    std::vector<bool> has_decision;
    std::vector<RngStream> arrival_rng;
    std::vector<RngStream> task_rng;
    std::vector<RngStream> mobility_rng;
    std::vector<RngStream> fading_rng;  // per (md, server), md-major
    std::vector<EpochDeal> epoch_deals;
    std::vector<UavTrace> sca_traces;
    std::vector<AuditRecord> audits;
    bool audit = true;
};

/// Draws MDs and servers for `seed`. UAVs start at their start points with
/// a one-entry history.
World make_world(const ScenarioConfig& config, std::uint64_t seed);

/// Link state of every (md, server) pair at the current positions.
std::vector<LinkState> slot_links(World& world);

/// MD utility and cost terms of executing `task` on its own CPU now.
Decision local_decision(const World& world, const Task& task, int slot);

/// One slot: arrivals, completions, expiry, the strategy's decisions,
/// metrics and audits. Advances nothing on the epoch scale.
SlotOutcome run_slot(World& world, StrategyKind strategy);

/// At t = k*Delta: plans and applies the UAV moves for epoch k+1, then moves
/// the MDs. No-op away from a boundary.
void run_epoch_boundary(World& world, StrategyKind strategy);

/// The trajectory problem the boundary would solve now.
EpochProblem build_epoch_problem(const World& world);

struct MetricTrace {
    StrategyKind strategy = StrategyKind::tjcct;
    std::uint64_t seed = 0;
    std::vector<SlotRecord> slots;
    std::vector<AuditRecord> audits;
    std::vector<std::vector<Vec2>> uav_paths;   // per UAV, one position per epoch
    std::vector<int> uav_ids;
    std::vector<std::string> server_names;
    int sca_iteration_caps = 0;
    int in_flight = 0;   // executing at the horizon
    int pending = 0;     // still waiting at the horizon

    [[nodiscard]] double total_utility() const;
    [[nodiscard]] double total_qoe() const;
    [[nodiscard]] double total_revenue() const;
    [[nodiscard]] int total_generated() const;
    [[nodiscard]] int total_completed() const;
    [[nodiscard]] int total_dropped() const;
};

/// Runs the whole horizon.
MetricTrace run(const ScenarioConfig& config, StrategyKind strategy, std::uint64_t seed, bool audit = true);

/// Slots needed for `seconds` of work, at least one.
int slots_for(double seconds, double slot_duration);

}  // namespace tjcct
