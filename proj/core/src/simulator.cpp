#include "tjcct/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tjcct/errors.hpp"
#include "tjcct/matching.hpp"
#include "tjcct/units.hpp"

namespace tjcct {

std::string_view to_string(StrategyKind k) {
    switch (k) {
        case StrategyKind::tjcct: return "TJCCT";
        case StrategyKind::ls: return "LS";
        case StrategyKind::gs: return "GS";
        case StrategyKind::ns: return "NS";
        case StrategyKind::cs: return "CS";
    }
    return "?";
}

StrategyKind parse_strategy(std::string_view name) {
    std::string up(name);
    for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (StrategyKind k : {StrategyKind::tjcct, StrategyKind::ls, StrategyKind::gs, StrategyKind::ns,
                           StrategyKind::cs}) {
        if (up == to_string(k)) return k;
    }
    throw ConfigError("unknown strategy '" + std::string(name) + "' (expected TJCCT, LS, GS, NS or CS)");
}

namespace {

void check_range(const Range& r, const std::string& field) {
    if (!(r.min <= r.max)) {
        throw ConfigError(field + ": min " + std::to_string(r.min) + " exceeds max " + std::to_string(r.max));
    }
}

void check_range(const IntRange& r, const std::string& field) {
    if (r.min > r.max) {
        throw ConfigError(field + ": min " + std::to_string(r.min) + " exceeds max " + std::to_string(r.max));
    }
    if (r.min < 1) throw ConfigError(field + ": at least one core required");
}

void check_positive(double v, const std::string& field) {
    if (!(v > 0.0)) throw ConfigError(field + " must be positive");
}

void check_unit(double v, const std::string& field) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(field + " must lie in [0, 1]");
}

}  // namespace

void ScenarioConfig::validate() const {
    clock.validate();
    check_positive(arena.width, "arena.width");
    check_positive(arena.height, "arena.height");
    if (md_count < 0) throw ConfigError("mds.count must be non-negative");
    check_range(md_cpu, "mds.cpu");
    check_positive(md_cpu.min, "mds.cpu.min");
    check_range(md_transmit_power, "mds.transmit_power");
    check_positive(md_transmit_power.min, "mds.transmit_power.min");
    check_positive(md_energy_cap, "mds.energy_cap");
    check_positive(md_budget, "mds.budget");
    check_unit(md_weight, "mds.weight");
    check_range(md_speed, "mds.speed");
    check_unit(mobility_memory, "mds.mobility_memory");
    if (mobility_std < 0.0) throw ConfigError("mds.mobility_std must be non-negative");
    check_unit(arrival_probability, "tasks.arrival_probability");
    check_range(task_size, "tasks.size");
    check_positive(task_size.min, "tasks.size.min");
    check_range(cycles_per_bit, "tasks.cycles_per_bit");
    check_positive(cycles_per_bit.min, "tasks.cycles_per_bit.min");
    check_range(deadline, "tasks.deadline");
    check_positive(deadline.min, "tasks.deadline.min");
    for (std::size_t j = 0; j < terrestrial.size(); ++j) {
        const std::string f = "terrestrial[" + std::to_string(j) + "]";
        check_range(terrestrial[j].core_capacity, f + ".core_capacity");
        check_positive(terrestrial[j].core_capacity.min, f + ".core_capacity.min");
        check_range(terrestrial[j].cores, f + ".cores");
        check_positive(terrestrial[j].energy_cap, f + ".energy_cap");
        check_positive(terrestrial[j].price_cap, f + ".price_cap");
        check_unit(terrestrial[j].weight, f + ".weight");
        check_positive(terrestrial[j].antenna_height, f + ".antenna_height");
    }
    for (std::size_t j = 0; j < aerial.size(); ++j) {
        const std::string f = "aerial[" + std::to_string(j) + "]";
        const AerialSpec& a = aerial[j];
        check_range(a.core_capacity, f + ".core_capacity");
        check_positive(a.core_capacity.min, f + ".core_capacity.min");
        check_range(a.cores, f + ".cores");
        check_positive(a.energy_cap, f + ".energy_cap");
        check_positive(a.price_cap, f + ".price_cap");
        check_unit(a.weight, f + ".weight");
        check_positive(a.altitude, f + ".altitude");
        check_positive(a.max_speed, f + ".max_speed");
        const double reach = a.max_speed * std::max(0, clock.num_epochs() - 1) * clock.epoch_duration();
        if (clock.horizon > 0 && distance(a.start, a.destination) > reach + kinematic_tolerance) {
            throw ConfigError(f + ": destination unreachable within the horizon");
        }
    }
    channel.validate();
    if (bargain.max_iterations < 1) throw ConfigError("bargaining.max_iterations must be at least 1");
    if (bargain.horizon_rounds < 1) throw ConfigError("bargaining.horizon_rounds must be at least 1");
    if (!(sca.tolerance >= 0.0)) throw ConfigError("trajectory.tolerance must be non-negative");
    if (sca.max_iterations < 1) throw ConfigError("trajectory.max_iterations must be at least 1");
}

int slots_for(double seconds, double slot_duration) {
    return std::max(1, static_cast<int>(std::ceil(seconds / slot_duration - 1e-9)));
}

namespace {

int uniform_int(RngStream& rng, IntRange r) {
    const int span = r.max - r.min + 1;
    return std::min(r.max, r.min + static_cast<int>(rng.uniform() * span));
}

}  // namespace

World make_world(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();
    World w;
    w.config = config;
    w.seed = seed;
    w.clock = config.clock;
    w.clock.slot = 1;

    for (int i = 0; i < config.md_count; ++i) {
        const auto e = static_cast<std::uint64_t>(i);
        RngStream rng(seed, StreamDomain::md_setup, e);
        MobileDevice md;
        md.id = i;
        md.position = {rng.uniform(0.0, config.arena.width), rng.uniform(0.0, config.arena.height)};
        md.cpu_capacity = rng.uniform(config.md_cpu.min, config.md_cpu.max);
        md.transmit_power = units::dbm_to_watt(rng.uniform(units::watt_to_dbm(config.md_transmit_power.min),
                                                           units::watt_to_dbm(config.md_transmit_power.max)));
        const double speed = rng.uniform(config.md_speed.min, config.md_speed.max);
        const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
        md.mobility.memory = config.mobility_memory;
        md.mobility.std_dev = config.mobility_std;
        md.mobility.mean_velocity = {speed * std::cos(heading), speed * std::sin(heading)};
        md.velocity = md.mobility.mean_velocity;
        md.energy_cap = config.md_energy_cap;
        md.budget = config.md_budget;
        md.weight = config.md_weight;
        md.capacitance = config.md_capacitance;
        w.mds.push_back(md);
        w.arrival_rng.emplace_back(seed, StreamDomain::task_arrival, e);
        w.task_rng.emplace_back(seed, StreamDomain::task_parameters, e);
        w.mobility_rng.emplace_back(seed, StreamDomain::md_mobility, e);
    }

    int id = 0;
    for (const TerrestrialSpec& spec : config.terrestrial) {
        RngStream rng(seed, StreamDomain::server_setup, static_cast<std::uint64_t>(id));
        EdgeServer s;
        s.id = id++;
        s.kind = ServerKind::terrestrial;
        s.position = spec.position;
        s.antenna_height = spec.antenna_height;
        s.core_capacity = rng.uniform(spec.core_capacity.min, spec.core_capacity.max);
        s.core_count = uniform_int(rng, spec.cores);
        s.energy_cap = spec.energy_cap;
        s.price_cap = spec.price_cap;
        s.weight = spec.weight;
        s.capacitance = spec.capacitance;
        s.core_busy_until.assign(s.core_count, 0);
        w.servers.push_back(s);
    }
    for (const AerialSpec& spec : config.aerial) {
        RngStream rng(seed, StreamDomain::server_setup, static_cast<std::uint64_t>(id));
        EdgeServer s;
        s.id = id++;
        s.kind = ServerKind::aerial;
        s.position = spec.start;
        s.core_capacity = rng.uniform(spec.core_capacity.min, spec.core_capacity.max);
        s.core_count = uniform_int(rng, spec.cores);
        s.energy_cap = spec.energy_cap;
        s.price_cap = spec.price_cap;
        s.weight = spec.weight;
        s.capacitance = spec.capacitance;
        s.core_busy_until.assign(s.core_count, 0);
        UavState u;
        u.altitude = spec.altitude;
        u.max_speed = spec.max_speed;
        u.start = spec.start;
        u.destination = spec.destination;
        u.propulsion = spec.propulsion;
        u.history.push_back(spec.start);
        s.uav = u;
        w.servers.push_back(s);
    }

    for (int i = 0; i < config.md_count; ++i) {
        for (std::size_t j = 0; j < w.servers.size(); ++j) {
            w.fading_rng.emplace_back(seed, StreamDomain::fading, static_cast<std::uint64_t>(i) * 1024 + j);
        }
    }
    return w;
}

std::vector<LinkState> slot_links(World& w) {
    std::vector<LinkState> links;
    links.reserve(w.mds.size() * w.servers.size());
    const bool sampled = w.config.channel.mode == FadingMode::sampled;
    for (std::size_t i = 0; i < w.mds.size(); ++i) {
        for (std::size_t j = 0; j < w.servers.size(); ++j) {
            RngStream* rng = sampled ? &w.fading_rng[i * w.servers.size() + j] : nullptr;
            links.push_back(evaluate_link(w.mds[i], w.servers[j], w.config.channel, rng));
        }
    }
    return links;
}

Decision local_decision(const World& w, const Task& task, int slot) {
    const MobileDevice& md = w.mds[task.owner];
    Decision d;
    d.outcome.task = task.id;
    d.outcome.md = md.id;
    d.outcome.target = Target::local();
    d.delay = task.elapsed(slot, w.clock.slot_duration) + local_delay(task.cycles, md.cpu_capacity);
    d.md_energy = local_energy(task.cycles, md.cpu_capacity, md.capacitance);
    d.deadline = task.deadline;
    QoeTerms q;
    q.weight = md.weight;
    q.deadline = task.deadline;
    q.delay = d.delay;
    q.energy = d.md_energy;
    q.energy_cap = md.energy_cap;
    q.budget = md.budget;
    d.outcome.md_utility = md_qoe(q);
    return d;
}

namespace {

class SlotKernel {
public:
    SlotKernel(World& w, StrategyKind strategy) : w_(w), strategy_(strategy), t_(w.clock.slot) {
        out_.record.slot = t_;
    }

    SlotOutcome run() {
        arrivals();
        completions();
        expiries();
        available_.clear();
        for (const EdgeServer& s : w_.servers) available_.push_back(s.available_cycles(t_));
        committed_.assign(w_.servers.size(), 0.0);
        links_ = slot_links(w_);

        switch (strategy_) {
            case StrategyKind::tjcct: matched(std::nullopt); break;
            case StrategyKind::cs: matched(1); break;
            case StrategyKind::ls: local_only(); break;
            case StrategyKind::gs: greedy(); break;
            case StrategyKind::ns: nearest(); break;
        }
        finish();
        return std::move(out_);
    }

private:
    void violation(const std::string& c, const std::string& detail) {
        if (w_.audit) w_.audits.push_back({t_, c, detail});
    }

    void arrivals() {
        const ScenarioConfig& c = w_.config;
        for (std::size_t i = 0; i < w_.mds.size(); ++i) {
            if (!w_.arrival_rng[i].bernoulli(c.arrival_probability)) continue;
            RngStream& rng = w_.task_rng[i];
            Task task;
            task.id = static_cast<int>(w_.tasks.size());
            task.owner = static_cast<int>(i);
            task.generation_slot = t_;
            task.size_bits = rng.uniform(c.task_size.min, c.task_size.max);
            task.cycles = task.size_bits * rng.uniform(c.cycles_per_bit.min, c.cycles_per_bit.max);
            task.deadline = rng.uniform(c.deadline.min, c.deadline.max);
            w_.tasks.push_back(task);
            w_.decided.emplace_back();
            w_.has_decision.push_back(false);
            ++out_.record.generated;
        }
    }

    void completions() {
        for (Task& task : w_.tasks) {
            const bool running =
                task.state == TaskState::executing_local || task.state == TaskState::executing_edge;
            if (!running || task.finish_slot >= t_) continue;
            const Decision& d = w_.decided[task.id];
            if (d.delay <= task.deadline) {
                task.transition(TaskState::completed);
                ++out_.record.completed;
            } else {
                // Only local-only execution runs tasks that cannot meet the deadline.
                task.transition(TaskState::dropped);
                ++out_.record.dropped;
            }
        }
    }

    void expiries() {
        for (Task& task : w_.tasks) {
            if (task.state != TaskState::pending) continue;
            if (task.elapsed(t_, w_.clock.slot_duration) >= task.deadline) {
                task.transition(TaskState::dropped);
                ++out_.record.dropped;
            }
        }
    }

    /// Pending tasks, by owner then age.
    std::vector<int> pending() const {
        std::vector<int> ids;
        for (const Task& task : w_.tasks) {
            if (task.state == TaskState::pending) ids.push_back(task.id);
        }
        std::stable_sort(ids.begin(), ids.end(),
                         [&](int a, int b) { return w_.tasks[a].owner < w_.tasks[b].owner; });
        return ids;
    }

    const LinkState& link(int md, std::size_t server) const { return links_[md * w_.servers.size() + server]; }

    std::optional<Deal> trial(int task_id, std::size_t server) {
        const Task& task = w_.tasks[task_id];
        const TradeContext ctx = make_trade_context(w_.mds[task.owner], task, w_.servers[server],
                                                    link(task.owner, server), t_, w_.clock.slot_duration);
        const NegotiationResult r = negotiate(ctx, w_.config.bargain);
        ++out_.record.trial_negotiations;
        out_.record.bargaining_iterations += r.iterations;
        return r.deal;
    }

    void record(Task& task, Decision d) {
        const int n_targets = static_cast<int>(w_.servers.size()) + 1;
        if (w_.has_decision[task.id]) violation("single-decision", "task " + std::to_string(task.id) + " decided twice");
        if (d.outcome.target.value < 0 || d.outcome.target.value >= n_targets) {
            violation("single-target", "task " + std::to_string(task.id) + " has no valid target");
        }
        w_.has_decision[task.id] = true;
        w_.decided[task.id] = d;
        out_.decisions.push_back(std::move(d));
    }

    void commit_local(Task& task, Decision d) {
        MobileDevice& md = w_.mds[task.owner];
        const int busy = t_ + slots_for(local_delay(task.cycles, md.cpu_capacity), w_.clock.slot_duration) - 1;
        md.busy_until = busy;
        task.finish_slot = busy;
        task.transition(TaskState::executing_local);
        record(task, std::move(d));
    }

    void commit_edge(Task& task, std::size_t server, const Deal& deal) {
        EdgeServer& s = w_.servers[server];
        const double dt = w_.clock.slot_duration;
        const int busy = t_ + slots_for(task.size_bits / deal.rate, dt) +
                         slots_for(task.cycles / deal.allocated_cycles, dt) - 1;
        if (s.reserve_core(t_, busy) < 0) {
            violation("core-capacity", "server " + std::to_string(s.id) + " has no idle core for task " +
                                 std::to_string(task.id));
        }
        committed_[server] += deal.allocated_cycles;
        if (committed_[server] > available_[server] * (1.0 + 1e-12)) {
            violation("cycle-capacity", "server " + std::to_string(s.id) + " allocates " +
                                 std::to_string(committed_[server]) + " of " + std::to_string(available_[server]));
        }
        if (deal.payment() > w_.mds[task.owner].budget * (1.0 + 1e-12)) {
            violation("budget", "task " + std::to_string(task.id) + " pays " + std::to_string(deal.payment()));
        }
        if (deal.delay > task.deadline) {
            violation("deadline", "task " + std::to_string(task.id) + " offloaded with delay " +
                                 std::to_string(deal.delay) + " > " + std::to_string(task.deadline));
        }
        task.finish_slot = busy;
        task.server = s.id;
        task.transition(TaskState::executing_edge);

        Decision d;
        d.outcome.task = task.id;
        d.outcome.md = task.owner;
        d.outcome.target = Target::server(s.id);
        d.outcome.md_utility = deal.md_utility;
        d.outcome.server_utility = deal.server_utility;
        d.deal = deal;
        d.delay = deal.delay;
        d.md_energy = deal.upload_energy;
        d.deadline = task.deadline;
        record(task, std::move(d));
        if (s.is_aerial()) {
            w_.epoch_deals.push_back(
                {task.id, task.owner, static_cast<int>(server), deal, task.elapsed(t_, w_.clock.slot_duration)});
        }
    }

    /// Local execution when it pays off, then deferred-acceptance matching
    /// of the rest. `quota` caps new admissions per server.
    void matched(std::optional<int> quota) {
        for (int id : pending()) {
            Task& task = w_.tasks[id];
            if (!w_.mds[task.owner].core_idle(t_)) continue;
            Decision d = local_decision(w_, task, t_);
            if (d.outcome.md_utility > 0.0) commit_local(task, std::move(d));
        }
        std::vector<int> req = pending();
        out_.record.requests = static_cast<int>(req.size());
        if (req.empty()) return;

        std::vector<ServerSlots> slots;
        for (std::size_t j = 0; j < w_.servers.size(); ++j) {
            slots.push_back({static_cast<int>(j), w_.servers[j].idle_cores(t_), available_[j], quota});
        }
        const MatchingInstance inst = make_instance(
            req, slots, [&](std::size_t t, std::size_t s) { return trial(req[t], s); });
        const PreferenceLists prefs = build_preferences(inst);
        const Matching m = run_matching(prefs, inst);
        for (std::size_t t = 0; t < req.size(); ++t) {
            if (m.task_server[t] == Matching::unmatched) continue;
            const auto s = static_cast<std::size_t>(m.task_server[t]);
            commit_edge(w_.tasks[req[t]], s, *inst.trial(t, s));
        }
    }

    void local_only() {
        for (int id : pending()) {
            Task& task = w_.tasks[id];
            if (!w_.mds[task.owner].core_idle(t_)) continue;
            commit_local(task, local_decision(w_, task, t_));
        }
    }

    void greedy() {
        struct Choice {
            int task;
            std::optional<std::size_t> server;  // empty: local
            std::optional<Deal> deal;
        };
        const std::vector<int> req = pending();
        out_.record.requests = static_cast<int>(req.size());
        std::vector<Choice> choices;
        for (int id : req) {
            const Task& task = w_.tasks[id];
            double best = 0.0;
            std::optional<Choice> pick;
            if (w_.mds[task.owner].core_idle(t_)) {
                const double u = local_decision(w_, task, t_).outcome.md_utility;
                if (u > best) {
                    best = u;
                    pick = Choice{id, std::nullopt, std::nullopt};
                }
            }
            for (std::size_t j = 0; j < w_.servers.size(); ++j) {
                if (w_.servers[j].idle_cores(t_) <= 0) continue;
                auto deal = trial(id, j);
                if (deal && deal->md_utility > best) {
                    best = deal->md_utility;
                    pick = Choice{id, j, deal};
                }
            }
            if (pick) choices.push_back(*pick);
        }
        // First come, first served: earlier MDs win contested capacity.
        for (const Choice& c : choices) {
            Task& task = w_.tasks[c.task];
            if (!c.server) {
                if (w_.mds[task.owner].core_idle(t_)) commit_local(task, local_decision(w_, task, t_));
            } else if (w_.servers[*c.server].idle_cores(t_) > 0) {
                commit_edge(task, *c.server, *c.deal);
            }
        }
    }

    void nearest() {
        const std::vector<int> req = pending();
        out_.record.requests = static_cast<int>(req.size());
        for (int id : req) {
            Task& task = w_.tasks[id];
            std::size_t near = 0;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < w_.servers.size(); ++j) {
                const double d = link_geometry(w_.mds[task.owner], w_.servers[j]).distance3d();
                if (d < best) {
                    best = d;
                    near = j;
                }
            }
            if (w_.servers.empty()) return;
            std::optional<Deal> deal;
            if (w_.servers[near].idle_cores(t_) > 0) deal = trial(id, near);
            if (deal) {
                commit_edge(task, near, *deal);
            } else {
                task.transition(TaskState::dropped);
                ++out_.record.dropped;
            }
        }
    }

    void finish() {
        SlotRecord& r = out_.record;
        for (const Decision& d : out_.decisions) {
            r.qoe += d.outcome.md_utility;
            if (!d.outcome.target.is_local()) r.revenue += d.outcome.server_utility;
        }
        std::vector<Outcome> outcomes;
        for (const Decision& d : out_.decisions) outcomes.push_back(d.outcome);
        r.utility = system_utility_slot(outcomes);
        for (std::size_t j = 0; j < w_.servers.size(); ++j) {
            const EdgeServer& s = w_.servers[j];
            const int busy = s.core_count - s.idle_cores(t_);
            r.occupancy.push_back(busy);
            int running = 0;
            for (const Task& task : w_.tasks) {
                if (task.state == TaskState::executing_edge && task.server == s.id) ++running;
            }
            if (running > s.core_count) {
                violation("core-capacity", "server " + std::to_string(s.id) + " runs " + std::to_string(running) +
                                     " tasks on " + std::to_string(s.core_count) + " cores");
            }
        }
    }

    World& w_;
    StrategyKind strategy_;
    int t_;
    SlotOutcome out_;
    std::vector<LinkState> links_;
    std::vector<double> available_;
    std::vector<double> committed_;
};

}  // namespace

SlotOutcome run_slot(World& world, StrategyKind strategy) { return SlotKernel(world, strategy).run(); }

EpochProblem build_epoch_problem(const World& w) {
    EpochProblem problem;
    const int k = w.clock.slot / w.clock.epoch_length;
    const int epochs = w.clock.num_epochs();
    const double te = w.clock.epoch_duration();
    const ChannelParams& ch = w.config.channel;
    for (std::size_t j = 0; j < w.servers.size(); ++j) {
        const EdgeServer& s = w.servers[j];
        if (!s.uav) continue;
        UavEpochProblem u;
        u.uav_id = s.id;
        u.current = s.position;
        u.destination = s.uav->destination;
        u.altitude = s.uav->altitude;
        u.step_radius = s.uav->max_speed * te;
        u.reach_radius = s.uav->max_speed * std::max(0, epochs - k - 1) * te;
        u.epochs_remaining = std::max(1, epochs - k);
        u.epoch_duration = te;
        u.slot_duration = w.clock.slot_duration;
        u.propulsion = s.uav->propulsion;
        u.server_weight = s.weight;
        u.server_energy_cap = s.energy_cap;
        u.bandwidth = ch.bandwidth;
        u.noise_power = ch.noise_power();
        u.exponent = ch.exponent_los;
        for (const EpochDeal& e : w.epoch_deals) {
            if (e.server != static_cast<int>(j)) continue;
            const MobileDevice& md = w.mds[e.md];
            const Task& task = w.tasks[e.task];
            const LinkGeometry g = link_geometry(md, s);
            ServedTask st;
            st.md_position = md.position;
            st.size_bits = task.size_bits;
            st.deadline = task.deadline;
            st.compute_delay = task.cycles / e.deal.allocated_cycles + e.elapsed;
            st.md_weight = md.weight;
            st.transmit_power = md.transmit_power;
            st.md_energy_cap = md.energy_cap;
            // Fold the LoS/NLoS mixture at the current geometry into the gain
            // so the single power law reproduces today's expected gain.
            st.mean_gain = channel_gain(g, ch) * std::pow(g.distance3d(), ch.exponent_los);
            u.tasks.push_back(st);
        }
        problem.uavs.push_back(std::move(u));
    }
    return problem;
}

void run_epoch_boundary(World& w, StrategyKind strategy) {
    if (!w.clock.at_epoch_boundary()) return;
    const int k = w.clock.slot / w.clock.epoch_length;
    const int epochs = w.clock.num_epochs();
    const double te = w.clock.epoch_duration();

    if (k < epochs) {
        const EpochProblem problem = build_epoch_problem(w);
        std::vector<Vec2> targets;
        if (strategy == StrategyKind::cs) {
            // Segment-constrained flight: straight line at uniform pace.
            for (const UavEpochProblem& u : problem.uavs) targets.push_back(pacing_target(u));
        } else {
            TrajectoryResult r = optimize_trajectory(problem, w.config.sca);
            targets = std::move(r.positions);
            for (UavTrace& tr : r.traces) w.sca_traces.push_back(std::move(tr));
        }
        std::size_t n = 0;
        for (EdgeServer& s : w.servers) {
            if (!s.uav) continue;
            const UavEpochProblem& u = problem.uavs[n];
            const Vec2 target = targets[n++];
            try {
                s = advance_uav_position(s, target, te, epochs - k - 1);
            } catch (const KinematicViolation& e) {
                if (w.audit) w.audits.push_back({w.clock.slot, "uav-displacement", e.what()});
                s = advance_uav_position(s, pacing_target(u), te, epochs - k - 1);
            }
        }
    }
    w.epoch_deals.clear();
    for (std::size_t i = 0; i < w.mds.size(); ++i) {
        w.mds[i] = advance_md_mobility(w.mds[i], w.mobility_rng[i], w.config.arena, te);
    }
}

double MetricTrace::total_utility() const {
    double s = 0.0;
    for (const SlotRecord& r : slots) s += r.utility;
    return s;
}

double MetricTrace::total_qoe() const {
    double s = 0.0;
    for (const SlotRecord& r : slots) s += r.qoe;
    return s;
}

double MetricTrace::total_revenue() const {
    double s = 0.0;
    for (const SlotRecord& r : slots) s += r.revenue;
    return s;
}

int MetricTrace::total_generated() const {
    int s = 0;
    for (const SlotRecord& r : slots) s += r.generated;
    return s;
}

int MetricTrace::total_completed() const {
    int s = 0;
    for (const SlotRecord& r : slots) s += r.completed;
    return s;
}

int MetricTrace::total_dropped() const {
    int s = 0;
    for (const SlotRecord& r : slots) s += r.dropped;
    return s;
}

MetricTrace run(const ScenarioConfig& config, StrategyKind strategy, std::uint64_t seed, bool audit) {
    World w = make_world(config, seed);
    w.audit = audit;
    MetricTrace trace;
    trace.strategy = strategy;
    trace.seed = seed;
    for (const EdgeServer& s : w.servers) {
        trace.server_names.push_back((s.is_aerial() ? "uav" : "mbs") + std::to_string(s.id));
    }
    for (int t = 1; t <= w.clock.horizon; ++t) {
        w.clock.slot = t;
        trace.slots.push_back(run_slot(w, strategy).record);
        run_epoch_boundary(w, strategy);
    }

    for (const Task& task : w.tasks) {
        if (task.state == TaskState::pending) ++trace.pending;
        if (task.state == TaskState::executing_local || task.state == TaskState::executing_edge) ++trace.in_flight;
    }
    for (const UavTrace& tr : w.sca_traces) trace.sca_iteration_caps += tr.hit_iteration_cap ? 1 : 0;

    if (audit && w.clock.horizon > 0) {
        const int end = w.clock.horizon;
        for (const EdgeServer& s : w.servers) {
            if (!s.uav) continue;
            const KinematicAudit ka = check_uav_kinematics(*s.uav, w.clock);
            const std::string who = "UAV " + std::to_string(s.id) + " slack ";
            if (!ka.anchoring.passed) w.audits.push_back({end, "uav-anchoring", who + std::to_string(ka.anchoring.slack)});
            if (!ka.displacement.passed) {
                w.audits.push_back({end, "uav-displacement", who + std::to_string(ka.displacement.slack)});
            }
            if (!ka.reachability.passed) {
                w.audits.push_back({end, "uav-reachability", who + std::to_string(ka.reachability.slack)});
            }
        }
        const int accounted = trace.total_completed() + trace.total_dropped() + trace.in_flight + trace.pending;
        if (accounted != trace.total_generated()) {
            w.audits.push_back({end, "conservation", std::to_string(trace.total_generated()) + " generated, " +
                                                         std::to_string(accounted) + " accounted"});
        }
    }
    for (const EdgeServer& s : w.servers) {
        if (!s.uav) continue;
        trace.uav_ids.push_back(s.id);
        trace.uav_paths.push_back(s.uav->history);
    }
    trace.audits = std::move(w.audits);
    return trace;
}

}  // namespace tjcct
