#include "tjcct/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tjcct/errors.hpp"

namespace tjcct {

void Clock::validate() const {
    if (!(slot_duration > 0.0)) throw ConfigError("slot duration must be positive");
    if (epoch_length < 1) throw ConfigError("epoch length must be at least one slot");
    if (horizon < 0) throw ConfigError("horizon must be non-negative");
    if (horizon % epoch_length != 0) {
        throw ConfigError("horizon (" + std::to_string(horizon) +
                          ") must be a multiple of the epoch length (" +
                          std::to_string(epoch_length) + ")");
    }
}

std::string_view to_string(TaskState s) {
    switch (s) {
        case TaskState::pending: return "pending";
        case TaskState::executing_local: return "executing-local";
        case TaskState::executing_edge: return "executing-edge";
        case TaskState::completed: return "completed";
        case TaskState::dropped: return "dropped";
    }
    return "unknown";
}

namespace {

int stage(TaskState s) {
    switch (s) {
        case TaskState::pending: return 0;
        case TaskState::executing_local:
        case TaskState::executing_edge: return 1;
        case TaskState::completed:
        case TaskState::dropped: return 2;
    }
    return 3;
}

}  // namespace

void Task::transition(TaskState next) {
    if (stage(next) <= stage(state)) {
        throw IllegalTransition("task " + std::to_string(id) + ": " + std::string(to_string(state)) +
                                " -> " + std::string(to_string(next)));
    }
    state = next;
}

int EdgeServer::idle_cores(int slot) const {
    return static_cast<int>(std::count_if(core_busy_until.begin(), core_busy_until.end(),
                                          [slot](int b) { return b < slot; }));
}

int EdgeServer::reserve_core(int slot, int busy_until) {
    int best = -1;
    for (int c = 0; c < static_cast<int>(core_busy_until.size()); ++c) {
        if (core_busy_until[c] >= slot) continue;
        if (best < 0 || core_busy_until[c] < core_busy_until[best]) best = c;
    }
    if (best >= 0) core_busy_until[best] = busy_until;
    return best;
}

MobileDevice advance_md_mobility(const MobileDevice& md, RngStream& rng, const Arena& arena,
                                 double epoch_duration) {
    MobileDevice next = md;
    const GaussMarkovParams& gm = md.mobility;

    next.position = md.position + md.velocity * epoch_duration;

    const double innovation = gm.std_dev * std::sqrt(std::max(0.0, 1.0 - gm.memory * gm.memory));
    const double wx = rng.normal();
    const double wy = rng.normal();
    next.velocity = gm.memory * md.velocity + (1.0 - gm.memory) * gm.mean_velocity +
                    Vec2{innovation * wx, innovation * wy};

    if (next.position.x < 0.0) {
        next.position.x = 0.0;
        next.velocity.x = std::abs(next.velocity.x);
    } else if (next.position.x > arena.width) {
        next.position.x = arena.width;
        next.velocity.x = -std::abs(next.velocity.x);
    }
    if (next.position.y < 0.0) {
        next.position.y = 0.0;
        next.velocity.y = std::abs(next.velocity.y);
    } else if (next.position.y > arena.height) {
        next.position.y = arena.height;
        next.velocity.y = -std::abs(next.velocity.y);
    }
    return next;
}

EdgeServer advance_uav_position(const EdgeServer& server, Vec2 target, double epoch_duration,
                                int epochs_after_move) {
    if (!server.uav) throw KinematicViolation("server " + std::to_string(server.id) + " is not aerial");
    const UavState& uav = *server.uav;
    const double step_bound = uav.max_speed * epoch_duration;
    const double step = distance(target, server.position);
    if (step > step_bound + kinematic_tolerance) {
        throw KinematicViolation("UAV " + std::to_string(server.id) + ": step " + std::to_string(step) +
                                 " m exceeds bound " + std::to_string(step_bound) + " m");
    }
    const double reach_bound = uav.max_speed * std::max(0, epochs_after_move) * epoch_duration;
    const double remaining = distance(uav.destination, target);
    if (remaining > reach_bound + kinematic_tolerance) {
        throw KinematicViolation("UAV " + std::to_string(server.id) + ": destination " +
                                 std::to_string(remaining) + " m away, reachable " +
                                 std::to_string(reach_bound) + " m");
    }
    EdgeServer next = server;
    next.position = target;
    next.uav->speed = step / epoch_duration;
    next.uav->history.push_back(target);
    return next;
}

KinematicAudit check_uav_kinematics(const UavState& uav, const Clock& clock) {
    KinematicAudit audit;
    const int epochs = clock.num_epochs();
    const double step_bound = uav.max_speed * clock.epoch_duration();
    const auto fold = [](KinematicCheck& c, double slack) {
        c.slack = std::min(c.slack, slack);
        c.passed = c.slack >= -kinematic_tolerance;
    };

    audit.anchoring.slack = std::numeric_limits<double>::infinity();
    audit.displacement.slack = std::numeric_limits<double>::infinity();
    audit.reachability.slack = std::numeric_limits<double>::infinity();

    if (!uav.history.empty()) {
        fold(audit.anchoring, -distance(uav.history.front(), uav.start));
        if (static_cast<int>(uav.history.size()) >= epochs) {
            fold(audit.anchoring, -distance(uav.history[epochs - 1], uav.destination));
        }
    }
    for (std::size_t k = 1; k < uav.history.size(); ++k) {
        fold(audit.displacement, step_bound - distance(uav.history[k], uav.history[k - 1]));
    }
    for (std::size_t k = 0; k < uav.history.size(); ++k) {
        const int epoch = static_cast<int>(k) + 1;
        const double bound = uav.max_speed * std::max(0, epochs - epoch) * clock.epoch_duration();
        fold(audit.reachability, bound - distance(uav.destination, uav.history[k]));
    }
    for (KinematicCheck* c : {&audit.anchoring, &audit.displacement, &audit.reachability}) {
        if (std::isinf(c->slack)) c->slack = 0.0;
    }
    return audit;
}

}  // namespace tjcct
