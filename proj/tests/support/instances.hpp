#pragma once

// Random instance builders shared by the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tjcct/bargaining.hpp"
#include "tjcct/matching.hpp"
#include "tjcct/rng.hpp"
#include "tjcct/scenario.hpp"
#include "tjcct/trajectory.hpp"
#include "tjcct/units.hpp"

namespace tjcct::fixture {

inline RngStream test_rng(std::uint64_t seed, std::uint64_t entity = 0) {
    return RngStream(seed, StreamDomain::test, entity);
}

/// A trade context plus the server it borrows.
struct Trade {
    std::unique_ptr<EdgeServer> server;
    TradeContext ctx;
};

/// Default-range MD/task/server draw. Aerial servers hover at a random speed.
inline Trade random_trade(RngStream& rng) {
    Trade t;
    t.server = std::make_unique<EdgeServer>();
    EdgeServer& s = *t.server;
    const bool aerial = rng.uniform() < 0.5;
    s.id = 0;
    s.kind = aerial ? ServerKind::aerial : ServerKind::terrestrial;
    s.core_capacity = aerial ? rng.uniform(10e9, 20e9) : rng.uniform(20e9, 40e9);
    s.core_count = 4;
    s.core_busy_until.assign(4, 0);
    s.energy_cap = aerial ? 500.0 : 1000.0;
    s.price_cap = 1.0;
    s.weight = rng.uniform(0.2, 0.8);
    if (aerial) s.uav = UavState{};

    TradeContext& c = t.ctx;
    c.md_weight = rng.uniform(0.2, 0.8);
    c.budget = 5.0;
    c.transmit_power = units::dbm_to_watt(rng.uniform(10.0, 30.0));
    c.md_energy_cap = 10.0;
    c.size_bits = rng.uniform(1e6, 5e6);
    c.cycles = c.size_bits * rng.uniform(500.0, 1500.0);
    c.deadline = rng.uniform(0.5, 5.0);
    c.elapsed = 0.0;
    c.rate = rng.uniform(2e6, 3e7);
    c.server = t.server.get();
    c.server_speed = aerial ? rng.uniform(0.0, 25.0) : 0.0;
    c.slot_duration = 0.1;
    c.capacity = s.core_capacity;
    return t;
}

/// Random matching instance with direct utilities (no negotiation), sized
/// up to `max_tasks` x `servers`. Some pairs have no deal.
inline MatchingInstance random_instance(RngStream& rng, std::size_t max_tasks, std::size_t servers,
                                        bool tight_cycles = true) {
    const auto n = static_cast<std::size_t>(1 + rng.uniform() * static_cast<double>(max_tasks));
    std::vector<int> ids;
    for (std::size_t i = 0; i < std::min(n, max_tasks); ++i) ids.push_back(static_cast<int>(i));
    std::vector<ServerSlots> slots;
    for (std::size_t s = 0; s < servers; ++s) {
        const int idle = static_cast<int>(1 + rng.uniform() * 3.0);
        const double per_core = 10e9;
        const double cycles = tight_cycles ? idle * per_core * rng.uniform(0.5, 1.0) : idle * per_core;
        slots.push_back({static_cast<int>(s), idle, cycles, std::nullopt});
    }
    MatchingInstance inst;
    inst.task_ids = ids;
    inst.servers = slots;
    inst.trials.resize(ids.size() * servers);
    for (std::size_t t = 0; t < ids.size(); ++t) {
        for (std::size_t s = 0; s < servers; ++s) {
            if (rng.uniform() < 0.15) continue;
            Deal d;
            d.md = static_cast<int>(t);
            d.server = static_cast<int>(s);
            d.allocated_cycles = rng.uniform(1e9, 10e9);
            d.md_utility = rng.uniform(0.01, 1.0);
            d.server_utility = rng.uniform(0.01, 1.0);
            inst.trials[t * servers + s] = d;
        }
    }
    return inst;
}

/// One UAV and a few MDs around it; radii follow the default kinematics.
inline UavEpochProblem random_epoch(RngStream& rng, int tasks) {
    UavEpochProblem u;
    u.uav_id = 1;
    u.current = {rng.uniform(50.0, 450.0), rng.uniform(0.0, 300.0)};
    u.epochs_remaining = static_cast<int>(2 + rng.uniform() * 40.0);
    u.step_radius = 25.0;
    u.epoch_duration = 1.0;
    u.slot_duration = 0.1;
    const double reach = 25.0 * (u.epochs_remaining - 1);
    const double ang = rng.uniform(0.0, 6.283185307179586);
    const double dist = rng.uniform(0.0, reach + 20.0);
    u.destination = u.current + Vec2{std::cos(ang), std::sin(ang)} * dist;
    u.reach_radius = reach;
    u.server_weight = 0.5;
    u.server_energy_cap = 500.0;
    u.noise_power = units::dbm_to_watt(-174.0) * 1e6;
    for (int k = 0; k < tasks; ++k) {
        ServedTask st;
        st.md_position = u.current + Vec2{rng.uniform(-120.0, 120.0), rng.uniform(-120.0, 120.0)};
        st.size_bits = rng.uniform(1e6, 5e6);
        st.deadline = rng.uniform(0.5, 5.0);
        st.compute_delay = rng.uniform(0.05, 0.3);
        st.md_weight = 0.5;
        st.transmit_power = units::dbm_to_watt(rng.uniform(10.0, 30.0));
        st.mean_gain = 1e-4 * rng.uniform(0.3, 1.0);
        u.tasks.push_back(st);
    }
    // The mover must be able to satisfy both disks.
    if (distance(u.current, u.destination) > u.step_radius + u.reach_radius) {
        u.destination = u.current + (u.destination - u.current) *
                                        ((u.step_radius + u.reach_radius) / distance(u.current, u.destination));
    }
    return u;
}

}  // namespace tjcct::fixture
