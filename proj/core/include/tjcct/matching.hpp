#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tjcct/cost_model.hpp"

namespace tjcct {

/// Capacity snapshot of one server for the current slot.
struct ServerSlots {
    int id = 0;
    int idle_cores = 0;
    double available_cycles = 0.0;
    /// Extra per-slot admission cap (one-to-one variants); unset means none.
    std::optional<int> quota;

    [[nodiscard]] int admission_cap() const { return quota ? std::min(*quota, idle_cores) : idle_cores; }
};

/// Tasks x servers with the cached trial negotiation of every pair. Tasks and
/// servers are indexed in ascending id order, so lower index wins ties.
struct MatchingInstance {
    std::vector<int> task_ids;
    std::vector<ServerSlots> servers;
    std::vector<std::optional<Deal>> trials;  // task-major

    [[nodiscard]] std::size_t num_tasks() const { return task_ids.size(); }
    [[nodiscard]] std::size_t num_servers() const { return servers.size(); }
    [[nodiscard]] const std::optional<Deal>& trial(std::size_t task, std::size_t server) const {
        return trials[task * servers.size() + server];
    }
};

using TrialNegotiator = std::function<std::optional<Deal>(std::size_t task, std::size_t server)>;

/// Runs the trial negotiation of every task-server pair.
MatchingInstance make_instance(std::vector<int> task_ids, std::vector<ServerSlots> servers,
                               const TrialNegotiator& negotiator);

struct PreferenceLists {
    std::vector<std::vector<std::size_t>> tasks;    // server indices, most preferred first
    std::vector<std::vector<std::size_t>> servers;  // task indices, most preferred first
};

/// Sorts viable pairs by MD utility (task lists) and server utility (server
/// lists), descending; pairs without a deal are left out.
PreferenceLists build_preferences(const MatchingInstance& instance);

struct Matching {
    static constexpr int unmatched = -1;

    std::vector<int> task_server;                    // server index or unmatched
    std::vector<std::vector<std::size_t>> server_tasks;
    std::vector<std::size_t> rejected;               // tasks left without a server
    int proposals = 0;
    int rounds = 0;

    [[nodiscard]] std::size_t matched_count() const;
};

/// The tasks `server` keeps out of `candidates`: walked in preference order,
/// each admitted while a core is free and its cycles still fit.
std::vector<std::size_t> server_choice(const MatchingInstance& instance, const PreferenceLists& prefs,
                                       std::size_t server, std::vector<std::size_t> candidates);

/// Task-proposing deferred acceptance under core and cycle capacities.
Matching run_matching(const PreferenceLists& prefs, const MatchingInstance& instance);

struct StabilityReport {
    bool stable = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;  // (task, server)
};

/// Scans for a blocking pair: a task preferring a server to its assignment
/// that the server would keep if offered alongside its current tasks.
StabilityReport is_stable(const Matching& matching, const MatchingInstance& instance,
                          const PreferenceLists& prefs);

inline constexpr std::size_t pareto_max_tasks = 6;
inline constexpr std::size_t pareto_max_servers = 3;

/// True when no feasible assignment strictly improves every matched task
/// and every server holding tasks. Exhaustive; throws InstanceTooLarge
/// beyond 6 tasks or 3 servers.
bool is_weak_pareto(const Matching& matching, const MatchingInstance& instance);

}  // namespace tjcct
