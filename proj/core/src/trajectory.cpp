#include "tjcct/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "tjcct/cost_model.hpp"
#include "tjcct/errors.hpp"

namespace tjcct {

namespace {

constexpr double rate_floor = 1.0;  // bits/s; keeps l/r finite far from the MD

double snr_at(double sq_dist, const ServedTask& task, const UavEpochProblem& uav) {
    const double h2 = uav.altitude * uav.altitude;
    return task.transmit_power * task.mean_gain /
           (uav.noise_power * std::pow(h2 + sq_dist, uav.exponent / 2.0));
}

double task_term(double rate, const ServedTask& task) {
    const double upload = task.size_bits / std::max(rate, rate_floor);
    const double slack = 1.0 + task.deadline - task.compute_delay - upload;
    return task.theta0() * std::log(std::max(1.0, slack)) - task.theta2() * upload;
}

double propulsion_term(const UavEpochProblem& uav, Vec2 q) {
    return uav.theta3() * propulsion_power(uav.speed_to(q), uav.propulsion) * uav.slot_duration *
           static_cast<double>(uav.tasks.size());
}

bool inside(Vec2 p, const Disk& d) { return d.contains(p, 1e-9 * std::max(1.0, d.radius)); }

Vec2 project_disk(Vec2 p, const Disk& d) {
    const Vec2 off = p - d.center;
    const double n = norm(off);
    if (n <= d.radius) return p;
    if (n == 0.0) return d.center;
    return d.center + off * (d.radius / n);
}

}  // namespace

double epoch_rate(Vec2 q, const ServedTask& task, const UavEpochProblem& uav) {
    const double snr = snr_at(squared_norm(q - task.md_position), task, uav);
    return uav.bandwidth * std::log2(1.0 + snr);
}

double surrogate_rate(Vec2 q, Vec2 base, const ServedTask& task, const UavEpochProblem& uav) {
    const double x = squared_norm(q - task.md_position);
    const double x0 = squared_norm(base - task.md_position);
    const double snr = snr_at(x0, task, uav);
    const double r0 = uav.bandwidth * std::log2(1.0 + snr);
    const double h2 = uav.altitude * uav.altitude;
    // d r / d x at x0; the rate is convex in x, so the tangent lies below it.
    const double slope = -uav.bandwidth * uav.exponent / (2.0 * std::numbers::ln2) * snr / (1.0 + snr) / (h2 + x0);
    return r0 + slope * (x - x0);
}

PhiBound surrogate_phi(double phi, Vec2 q, double phi_base, Vec2 q_base, Vec2 q_prev,
                       double epoch_duration, double induced_speed4) {
    const Vec2 dir = q_base - q_prev;
    const double t2 = epoch_duration * epoch_duration;
    const double v2_lin = (squared_norm(dir) + 2.0 * dot(dir, q - q_base)) / t2;
    PhiBound b;
    b.phi_tilde = phi_base * phi_base + 2.0 * phi_base * (phi - phi_base) + v2_lin;
    const double v2 = squared_norm(q - q_prev) / t2;
    b.residual = v2 > 0.0 ? induced_speed4 / v2 - b.phi_tilde : std::numeric_limits<double>::infinity();
    return b;
}

double induced_auxiliary(double speed, double induced_speed4) {
    const double v2 = speed * speed;
    return std::sqrt(std::sqrt(induced_speed4 + v2 * v2 / 4.0) - v2 / 2.0);
}

double true_objective(const UavEpochProblem& uav, Vec2 q) {
    double sum = 0.0;
    for (const auto& t : uav.tasks) sum += task_term(epoch_rate(q, t, uav), t);
    return sum - propulsion_term(uav, q);
}

double surrogate_objective(const UavEpochProblem& uav, Vec2 q, Vec2 base) {
    double sum = 0.0;
    for (const auto& t : uav.tasks) sum += task_term(surrogate_rate(q, base, t, uav), t);
    return sum - propulsion_term(uav, q);
}

Vec2 project_feasible(Vec2 p, const Disk& a, const Disk& b) {
    const double d = distance(a.center, b.center);
    // Disks that only touch (a binding reachability constraint) may miss by
    // rounding; accept that within the kinematic tolerance.
    const double tol = kinematic_tolerance;
    if (d > a.radius + b.radius + tol) {
        throw InfeasibleEpoch("step and reachability disks do not intersect");
    }
    if (inside(p, a) && inside(p, b)) return p;
    const Vec2 pa = project_disk(p, a);
    if (inside(pa, b)) return pa;
    const Vec2 pb = project_disk(p, b);
    if (inside(pb, a)) return pb;

    // Nearest of the two boundary crossings.
    if (d <= tol) return pa;
    const double along = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
    const Vec2 u = (b.center - a.center) * (1.0 / d);
    const Vec2 perp{-u.y, u.x};
    const Vec2 mid = a.center + u * along;
    const Vec2 c1 = mid + perp * h;
    const Vec2 c2 = mid - perp * h;
    return distance(p, c1) <= distance(p, c2) ? c1 : c2;
}

Vec2 pacing_target(const UavEpochProblem& uav) {
    const int left = std::max(1, uav.epochs_remaining);
    const Vec2 target = uav.current + (uav.destination - uav.current) * (1.0 / left);
    return project_feasible(target, uav.step_disk(), uav.reach_disk());
}

namespace {

// Newton direction from a finite-difference Hessian when it is negative
// definite; the ridge between rate and propulsion terms is too narrow for
// plain gradient steps to finish in reasonable time.
std::optional<Vec2> newton_step(const std::function<double(Vec2)>& f, Vec2 x, Vec2 g, double fx, double h) {
    const double fxx = (f(x + Vec2{h, 0}) - 2.0 * fx + f(x - Vec2{h, 0})) / (h * h);
    const double fyy = (f(x + Vec2{0, h}) - 2.0 * fx + f(x - Vec2{0, h})) / (h * h);
    const double fxy = (f(x + Vec2{h, h}) - f(x + Vec2{h, -h}) - f(x + Vec2{-h, h}) + f(x + Vec2{-h, -h})) /
                       (4.0 * h * h);
    const double det = fxx * fyy - fxy * fxy;
    if (!(fxx < 0.0 && det > 0.0)) return std::nullopt;
    const Vec2 d{-(fyy * g.x - fxy * g.y) / det, -(-fxy * g.x + fxx * g.y) / det};
    if (!(dot(d, g) > 0.0)) return std::nullopt;
    return d;
}

Vec2 ascend(const UavEpochProblem& uav, Vec2 start, Vec2 base, double& value) {
    const Disk a = uav.step_disk();
    const Disk b = uav.reach_disk();
    const std::function<double(Vec2)> f = [&](Vec2 q) { return surrogate_objective(uav, q, base); };
    const double scale = std::max(1.0, uav.step_radius);
    const double h = 1e-6 * scale;

    Vec2 x = project_feasible(start, a, b);
    value = f(x);
    double step = scale;
    for (int it = 0; it < 400; ++it) {
        const Vec2 g{(f(x + Vec2{h, 0}) - f(x - Vec2{h, 0})) / (2 * h),
                     (f(x + Vec2{0, h}) - f(x - Vec2{0, h})) / (2 * h)};
        const double gn = norm(g);
        if (!(gn > 0.0)) break;

        bool moved = false;
        if (const auto d = newton_step(f, x, g, value, 1e-3 * scale)) {
            for (double t = 1.0; t > 1e-6; t *= 0.5) {
                const Vec2 y = project_feasible(x + *d * t, a, b);
                const double fy = f(y);
                if (fy > value) {
                    moved = distance(x, y) > 1e-10 * scale;
                    x = y;
                    value = fy;
                    break;
                }
            }
            if (moved) continue;
        }

        const Vec2 dir = g * (1.0 / gn);
        step = std::min(scale, step * 2.0);
        while (step > 1e-9 * scale) {
            const Vec2 y = project_feasible(x + dir * step, a, b);
            const double fy = f(y);
            if (fy > value + 1e-4 * dot(g, y - x) && fy > value) {
                moved = distance(x, y) > 1e-10 * scale;
                x = y;
                value = fy;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return x;
}

}  // namespace

SubproblemResult solve_epoch_subproblem(const UavEpochProblem& uav, Vec2 base) {
    const Disk a = uav.step_disk();
    std::vector<Vec2> seeds{base, uav.current, pacing_target(uav), a.center};
    Vec2 centroid;
    for (const auto& t : uav.tasks) {
        seeds.push_back(t.md_position);
        centroid += t.md_position;
    }
    if (!uav.tasks.empty()) seeds.push_back(centroid * (1.0 / static_cast<double>(uav.tasks.size())));
    for (int k = 0; k < 8; ++k) {
        const double ang = k * std::numbers::pi / 4.0;
        seeds.push_back(a.center + Vec2{std::cos(ang), std::sin(ang)} * a.radius);
    }

    SubproblemResult best;
    best.objective = -std::numeric_limits<double>::infinity();
    for (Vec2 s : seeds) {
        double v = 0.0;
        const Vec2 q = ascend(uav, s, base, v);
        if (v > best.objective) best = {q, v};
    }
    return best;
}

TrajectoryResult optimize_trajectory(const EpochProblem& problem, const ScaParams& params) {
    TrajectoryResult out;
    for (const auto& uav : problem.uavs) {
        UavTrace trace;
        trace.uav_id = uav.uav_id;
        if (uav.tasks.empty()) {
            trace.fallback = true;
            trace.iterations = 1;
            out.positions.push_back(pacing_target(uav));
            out.traces.push_back(std::move(trace));
            continue;
        }
        // A start outside the reachability disk is pulled back first so that
        // every iterate stays feasible.
        Vec2 base = project_feasible(uav.current, uav.step_disk(), uav.reach_disk());
        trace.objective.push_back(true_objective(uav, base));
        Vec2 best = base;
        double best_u = trace.objective.back();
        for (;;) {
            const SubproblemResult sub = solve_epoch_subproblem(uav, base);
            const double u = true_objective(uav, sub.position);
            ++trace.iterations;
            trace.objective.push_back(u);
            if (u > best_u) {
                best_u = u;
                best = sub.position;
            }
            base = sub.position;
            const double change = std::abs(u - trace.objective[trace.objective.size() - 2]);
            if (change <= params.tolerance) break;
            if (trace.iterations >= params.max_iterations) {
                trace.hit_iteration_cap = true;
                break;
            }
        }
        out.positions.push_back(best);
        out.traces.push_back(std::move(trace));
    }
    return out;
}

}  // namespace tjcct
