#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tjcct/geometry.hpp"
#include "tjcct/rng.hpp"

namespace tjcct {

/// Two time-scale clock. Slots are 1-based; epoch k covers slots
/// ((k-1)*epoch_length, k*epoch_length].
struct Clock {
    int slot = 1;
    double slot_duration = 0.1;  // seconds
    int epoch_length = 10;       // slots per epoch
    int horizon = 500;           // slots

    [[nodiscard]] int epoch_index() const { return (slot + epoch_length - 1) / epoch_length; }
    [[nodiscard]] int num_epochs() const { return horizon / epoch_length; }
    [[nodiscard]] double epoch_duration() const { return slot_duration * epoch_length; }
    [[nodiscard]] bool at_epoch_boundary() const { return slot % epoch_length == 0; }
    /// Throws ConfigError when the invariants (horizon divisible by the epoch
    /// length, positive durations) do not hold.
    void validate() const;
};

struct Arena {
    double width = 500.0;
    double height = 500.0;

    [[nodiscard]] bool contains(Vec2 p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }
};

struct GaussMarkovParams {
    double memory = 0.8;    // alpha
    Vec2 mean_velocity;     // asymptotic mean
    double std_dev = 0.3;   // asymptotic standard deviation
};

struct MobileDevice {
    int id = 0;
    Vec2 position;
    Vec2 velocity;
    GaussMarkovParams mobility;
    double cpu_capacity = 1e9;     // cycles/s
    int core_count = 1;
    double transmit_power = 0.1;   // W
    double energy_cap = 10.0;      // J
    double budget = 5.0;           // currency
    double weight = 0.5;
    double capacitance = 1e-28;
    int busy_until = 0;            // last slot the local core is occupied

    [[nodiscard]] bool core_idle(int slot) const { return busy_until < slot; }
};

enum class TaskState { pending, executing_local, executing_edge, completed, dropped };

std::string_view to_string(TaskState s);

struct Task {
    int id = 0;
    int owner = 0;
    int generation_slot = 0;
    double size_bits = 0.0;
    double cycles = 0.0;
    double deadline = 0.0;  // seconds
    TaskState state = TaskState::pending;
    int server = -1;        // executing server id when offloaded
    int finish_slot = 0;    // last slot of execution once started

    /// Seconds spent waiting since generation when decided at `slot`.
    [[nodiscard]] double elapsed(int slot, double slot_duration) const {
        return (slot - generation_slot) * slot_duration;
    }
    /// Moves to `next`, rejecting non-monotone transitions.
    void transition(TaskState next);
};

enum class ServerKind { terrestrial, aerial };

struct PropulsionParams {
    double blade_profile = 79.86;   // eta1, W
    double induced = 88.63;         // eta2, W
    double induced_speed4 = 263.7;  // eta3, m^4/s^4
    double parasite = 0.00925;      // eta4, kg/m
    double tip_speed = 120.0;       // m/s
};

struct UavState {
    double altitude = 100.0;
    double max_speed = 25.0;
    Vec2 start;
    Vec2 destination;
    PropulsionParams propulsion;
    double speed = 0.0;             // implied speed of the current epoch's move
    std::vector<Vec2> history;      // position held in epoch k at index k-1
};

struct EdgeServer {
    int id = 0;
    ServerKind kind = ServerKind::terrestrial;
    Vec2 position;
    double antenna_height = 25.0;   // terrestrial only; aerial uses uav->altitude
    int core_count = 4;
    double core_capacity = 30e9;    // cycles/s per core
    double energy_cap = 1000.0;
    double price_cap = 1.0;         // currency per GHz
    double weight = 0.5;
    double capacitance = 1e-28;
    std::vector<int> core_busy_until;
    std::optional<UavState> uav;

    [[nodiscard]] bool is_aerial() const { return kind == ServerKind::aerial; }
    [[nodiscard]] double height() const { return uav ? uav->altitude : antenna_height; }
    [[nodiscard]] int idle_cores(int slot) const;
    [[nodiscard]] double available_cycles(int slot) const { return idle_cores(slot) * core_capacity; }
    /// Reserves the idle core that frees earliest; returns its index or -1.
    int reserve_core(int slot, int busy_until);
};

// ---- mobility ----

/// One epoch of Gauss-Markov motion: position advances with the current
/// velocity over the epoch, then the velocity is redrawn. Walls reflect the
/// normal velocity component and clamp the position.
MobileDevice advance_md_mobility(const MobileDevice& md, RngStream& rng, const Arena& arena,
                                 double epoch_duration);

/// Tolerance applied to the kinematic bounds, in meters.
inline constexpr double kinematic_tolerance = 1e-6;

/// Moves a UAV to `target` for the next epoch. `epochs_after_move` is
/// T0 - (k+1), the number of epochs left once the move is applied.
/// Throws KinematicViolation on a displacement or reachability breach.
EdgeServer advance_uav_position(const EdgeServer& server, Vec2 target, double epoch_duration,
                                int epochs_after_move);

struct KinematicCheck {
    bool passed = true;
    double slack = 0.0;  // worst-case margin in meters (negative on failure)
};

struct KinematicAudit {
    KinematicCheck anchoring;     // initial and final positions
    KinematicCheck displacement;  // per-epoch step bound
    KinematicCheck reachability;  // destination still reachable
    [[nodiscard]] bool passed() const {
        return anchoring.passed && displacement.passed && reachability.passed;
    }
};

/// Audits a UAV's epoch history against the anchoring, per-epoch
/// displacement and reachability constraints.
KinematicAudit check_uav_kinematics(const UavState& uav, const Clock& clock);

}  // namespace tjcct
