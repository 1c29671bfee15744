#include "tjcct/matching.hpp"

#include <algorithm>
#include <numeric>

#include "tjcct/errors.hpp"

namespace tjcct {

MatchingInstance make_instance(std::vector<int> task_ids, std::vector<ServerSlots> servers,
                               const TrialNegotiator& negotiator) {
    MatchingInstance inst;
    inst.task_ids = std::move(task_ids);
    inst.servers = std::move(servers);
    inst.trials.resize(inst.task_ids.size() * inst.servers.size());
    for (std::size_t t = 0; t < inst.task_ids.size(); ++t) {
        for (std::size_t s = 0; s < inst.servers.size(); ++s) {
            if (inst.servers[s].admission_cap() <= 0) continue;
            inst.trials[t * inst.servers.size() + s] = negotiator(t, s);
        }
    }
    return inst;
}

PreferenceLists build_preferences(const MatchingInstance& inst) {
    PreferenceLists prefs;
    prefs.tasks.resize(inst.num_tasks());
    prefs.servers.resize(inst.num_servers());
    for (std::size_t t = 0; t < inst.num_tasks(); ++t) {
        for (std::size_t s = 0; s < inst.num_servers(); ++s) {
            if (!inst.trial(t, s)) continue;
            prefs.tasks[t].push_back(s);
            prefs.servers[s].push_back(t);
        }
        std::stable_sort(prefs.tasks[t].begin(), prefs.tasks[t].end(), [&](std::size_t a, std::size_t b) {
            return inst.trial(t, a)->md_utility > inst.trial(t, b)->md_utility;
        });
    }
    for (std::size_t s = 0; s < inst.num_servers(); ++s) {
        std::stable_sort(prefs.servers[s].begin(), prefs.servers[s].end(), [&](std::size_t a, std::size_t b) {
            return inst.trial(a, s)->server_utility > inst.trial(b, s)->server_utility;
        });
    }
    return prefs;
}

std::size_t Matching::matched_count() const {
    return static_cast<std::size_t>(
        std::count_if(task_server.begin(), task_server.end(), [](int s) { return s != unmatched; }));
}

namespace {

/// Position of `task` in the server's list (lower = preferred).
std::vector<std::vector<std::size_t>> server_ranks(const MatchingInstance& inst, const PreferenceLists& prefs) {
    std::vector<std::vector<std::size_t>> rank(inst.num_servers(),
                                               std::vector<std::size_t>(inst.num_tasks(), inst.num_tasks()));
    for (std::size_t s = 0; s < inst.num_servers(); ++s) {
        for (std::size_t r = 0; r < prefs.servers[s].size(); ++r) rank[s][prefs.servers[s][r]] = r;
    }
    return rank;
}

std::vector<std::size_t> choose(const MatchingInstance& inst, const std::vector<std::size_t>& rank,
                                std::size_t server, std::vector<std::size_t> candidates) {
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    const ServerSlots& slots = inst.servers[server];
    const auto cap = static_cast<std::size_t>(std::max(0, slots.admission_cap()));
    // Greedy in preference order, skipping a task whose cycles no longer fit.
    // Dropping a rival never evicts a kept task, so DA stays stable.
    std::vector<std::size_t> kept;
    double used = 0.0;
    for (std::size_t t : candidates) {
        if (kept.size() == cap) break;
        const double need = inst.trial(t, server)->allocated_cycles;
        if (used + need > slots.available_cycles) continue;
        used += need;
        kept.push_back(t);
    }
    return kept;
}

}  // namespace

std::vector<std::size_t> server_choice(const MatchingInstance& inst, const PreferenceLists& prefs,
                                       std::size_t server, std::vector<std::size_t> candidates) {
    const auto rank = server_ranks(inst, prefs);
    return choose(inst, rank[server], server, std::move(candidates));
}

Matching run_matching(const PreferenceLists& prefs, const MatchingInstance& inst) {
    const std::size_t n_tasks = inst.num_tasks();
    const std::size_t n_servers = inst.num_servers();
    const auto rank = server_ranks(inst, prefs);

    Matching m;
    m.task_server.assign(n_tasks, Matching::unmatched);
    m.server_tasks.assign(n_servers, {});
    std::vector<std::size_t> next(n_tasks, 0);
    std::vector<std::size_t> rejected(n_tasks);
    std::iota(rejected.begin(), rejected.end(), std::size_t{0});

    for (;;) {
        std::vector<std::vector<std::size_t>> incoming(n_servers);
        bool any = false;
        for (std::size_t t : rejected) {
            const auto& list = prefs.tasks[t];
            while (next[t] < list.size() && !(inst.trial(t, list[next[t]])->md_utility > 0.0)) ++next[t];
            if (next[t] >= list.size()) continue;
            const std::size_t s = list[next[t]];
            m.task_server[t] = static_cast<int>(s);
            incoming[s].push_back(t);
            ++m.proposals;
            any = true;
        }
        if (!any) break;
        ++m.rounds;
        rejected.clear();
        for (std::size_t s = 0; s < n_servers; ++s) {
            if (incoming[s].empty()) continue;
            std::vector<std::size_t> pool = m.server_tasks[s];
            pool.insert(pool.end(), incoming[s].begin(), incoming[s].end());
            std::vector<std::size_t> kept = choose(inst, rank[s], s, pool);
            for (std::size_t t : pool) {
                if (std::find(kept.begin(), kept.end(), t) != kept.end()) continue;
                m.task_server[t] = Matching::unmatched;
                ++next[t];
                rejected.push_back(t);
            }
            std::sort(kept.begin(), kept.end());
            m.server_tasks[s] = std::move(kept);
        }
        std::sort(rejected.begin(), rejected.end());
    }
    for (std::size_t t = 0; t < n_tasks; ++t) {
        if (m.task_server[t] == Matching::unmatched) m.rejected.push_back(t);
    }
    return m;
}

StabilityReport is_stable(const Matching& m, const MatchingInstance& inst, const PreferenceLists& prefs) {
    const auto rank = server_ranks(inst, prefs);
    for (std::size_t t = 0; t < inst.num_tasks(); ++t) {
        for (std::size_t s : prefs.tasks[t]) {
            if (m.task_server[t] == static_cast<int>(s)) break;  // the rest are worse
            const auto& deal = inst.trial(t, s);
            if (!(deal->md_utility > 0.0 && deal->server_utility > 0.0)) continue;
            std::vector<std::size_t> pool = m.server_tasks[s];
            pool.push_back(t);
            const auto kept = choose(inst, rank[s], s, pool);
            if (std::find(kept.begin(), kept.end(), t) != kept.end()) {
                return {false, std::make_pair(t, s)};
            }
        }
    }
    return {};
}

bool is_weak_pareto(const Matching& m, const MatchingInstance& inst) {
    const std::size_t n_tasks = inst.num_tasks();
    const std::size_t n_servers = inst.num_servers();
    if (n_tasks > pareto_max_tasks || n_servers > pareto_max_servers) {
        throw InstanceTooLarge("weak Pareto enumeration limited to 6 tasks and 3 servers");
    }
    std::vector<double> server_value(n_servers, 0.0);
    bool any_matched = false;
    for (std::size_t s = 0; s < n_servers; ++s) {
        for (std::size_t t : m.server_tasks[s]) server_value[s] += inst.trial(t, s)->server_utility;
        any_matched = any_matched || !m.server_tasks[s].empty();
    }
    if (!any_matched) return true;

    // Odometer over assignments: digit n_servers means unmatched.
    std::vector<std::size_t> pick(n_tasks, 0);
    const std::size_t base = n_servers + 1;
    std::size_t total = 1;
    for (std::size_t t = 0; t < n_tasks; ++t) total *= base;

    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t t = 0; t < n_tasks; ++t) {
            pick[t] = c % base;
            c /= base;
        }
        bool feasible = true;
        std::vector<int> count(n_servers, 0);
        std::vector<double> cycles(n_servers, 0.0);
        std::vector<double> value(n_servers, 0.0);
        for (std::size_t t = 0; t < n_tasks && feasible; ++t) {
            if (pick[t] == n_servers) continue;
            const auto& deal = inst.trial(t, pick[t]);
            if (!deal) {
                feasible = false;
                break;
            }
            ++count[pick[t]];
            cycles[pick[t]] += deal->allocated_cycles;
            value[pick[t]] += deal->server_utility;
        }
        for (std::size_t s = 0; s < n_servers && feasible; ++s) {
            feasible = count[s] <= inst.servers[s].admission_cap() &&
                       cycles[s] <= inst.servers[s].available_cycles;
        }
        if (!feasible) continue;

        bool dominates = true;
        for (std::size_t t = 0; t < n_tasks && dominates; ++t) {
            if (m.task_server[t] == Matching::unmatched) continue;
            if (pick[t] == n_servers) {
                dominates = false;
                break;
            }
            const auto cur = static_cast<std::size_t>(m.task_server[t]);
            dominates = inst.trial(t, pick[t])->md_utility > inst.trial(t, cur)->md_utility;
        }
        for (std::size_t s = 0; s < n_servers && dominates; ++s) {
            if (m.server_tasks[s].empty()) continue;
            dominates = value[s] > server_value[s];
        }
        if (dominates) return false;
    }
    return true;
}

}  // namespace tjcct
