#pragma once

#include <vector>

#include "tjcct/geometry.hpp"
#include "tjcct/scenario.hpp"

namespace tjcct {

/// A task served by a UAV during the epoch, frozen for trajectory planning.
struct ServedTask {
    Vec2 md_position;
    double size_bits = 0.0;
    double deadline = 1.0;
    double compute_delay = 0.0;   // theta_1: cycles / allocation (+ time already waited)
    double md_weight = 0.5;
    double transmit_power = 0.1;
    double md_energy_cap = 10.0;
    double mean_gain = 1e-4;      // g-bar: reference gain times the LoS mixture factor

    [[nodiscard]] double theta0() const { return md_weight / (1.0 + deadline); }
    [[nodiscard]] double theta2() const { return (1.0 - md_weight) * transmit_power / md_energy_cap; }
};

/// Per-UAV slice of the epoch problem; UAVs do not interact, so each is
/// solved on its own.
struct UavEpochProblem {
    int uav_id = 0;
    Vec2 current;
    Vec2 destination;
    double altitude = 100.0;
    double step_radius = 25.0;     // v_max * epoch duration
    double reach_radius = 0.0;     // v_max * (epochs after the move) * epoch duration
    int epochs_remaining = 1;      // T0 - k: moves left including this one
    double epoch_duration = 1.0;
    double slot_duration = 0.1;
    PropulsionParams propulsion;
    double server_weight = 0.5;
    double server_energy_cap = 500.0;
    double bandwidth = 1e6;
    double noise_power = 4e-15;
    double exponent = 2.2;         // beta_A
    std::vector<ServedTask> tasks;

    [[nodiscard]] Disk step_disk() const { return {current, step_radius}; }
    [[nodiscard]] Disk reach_disk() const { return {destination, reach_radius}; }
    [[nodiscard]] double theta3() const { return (1.0 - server_weight) / server_energy_cap; }
    [[nodiscard]] double speed_to(Vec2 q) const { return distance(q, current) / epoch_duration; }
};

struct EpochProblem {
    std::vector<UavEpochProblem> uavs;
};

/// Expected rate under the single power-law channel of the epoch model.
double epoch_rate(Vec2 q, const ServedTask& task, const UavEpochProblem& uav);

/// First-order lower bound of epoch_rate in the squared horizontal distance,
/// expanded at `base`; exact at q = base.
double surrogate_rate(Vec2 q, Vec2 base, const ServedTask& task, const UavEpochProblem& uav);

struct PhiBound {
    double phi_tilde = 0.0;  // linearized phi^2 + v^2
    double residual = 0.0;   // eta3 / v^2 - phi_tilde; feasible when <= 0
};

/// Linearization of phi^2 + v^2 at (phi_base, q_base), with v the speed from
/// `q_prev` to `q` over `epoch_duration`.
PhiBound surrogate_phi(double phi, Vec2 q, double phi_base, Vec2 q_base, Vec2 q_prev,
                       double epoch_duration, double induced_speed4);

/// Induced-power auxiliary at speed v: sqrt(sqrt(eta3 + v^4/4) - v^2/2).
double induced_auxiliary(double speed, double induced_speed4);

/// Trajectory-dependent utility at q with the exact expected rate.
double true_objective(const UavEpochProblem& uav, Vec2 q);
/// Same objective with every rate replaced by its surrogate at `base`.
double surrogate_objective(const UavEpochProblem& uav, Vec2 q, Vec2 base);

/// Nearest point of the intersection of the two disks. Throws InfeasibleEpoch
/// when they do not intersect.
Vec2 project_feasible(Vec2 p, const Disk& a, const Disk& b);

/// Uniform-pacing move toward the destination.
Vec2 pacing_target(const UavEpochProblem& uav);

struct SubproblemResult {
    Vec2 position;
    double objective = 0.0;
};

/// Maximizes the surrogate objective over the feasible disk intersection
/// (multi-start projected gradient ascent with backtracking).
SubproblemResult solve_epoch_subproblem(const UavEpochProblem& uav, Vec2 base);

struct UavTrace {
    int uav_id = 0;
    std::vector<double> objective;  // U^0, U^1, ...
    int iterations = 0;
    bool hit_iteration_cap = false;
    bool fallback = false;          // no served tasks: paced toward destination
};

struct TrajectoryResult {
    std::vector<Vec2> positions;
    std::vector<UavTrace> traces;
};

struct ScaParams {
    double tolerance = 1e-3;
    int max_iterations = 50;
};

/// Successive convex approximation per UAV: re-expand the surrogate at the
/// last solution until the objective moves by at most the tolerance.
TrajectoryResult optimize_trajectory(const EpochProblem& problem, const ScaParams& params = {});

}  // namespace tjcct
