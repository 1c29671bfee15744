#include <gtest/gtest.h>

#include <cmath>

#include "tjcct/errors.hpp"
#include "tjcct/scenario.hpp"

using namespace tjcct;

namespace {

MobileDevice walker(double alpha, Vec2 mean, double sigma) {
    MobileDevice md;
    md.position = {250.0, 250.0};
    md.velocity = mean;
    md.mobility = {alpha, mean, sigma};
    return md;
}

EdgeServer uav_at(Vec2 p, Vec2 destination) {
    EdgeServer s;
    s.id = 1;
    s.kind = ServerKind::aerial;
    s.position = p;
    UavState u;
    u.start = p;
    u.destination = destination;
    u.history = {p};
    s.uav = u;
    return s;
}

}  // namespace

TEST(Clock, EpochIndexing) {
    Clock c;
    c.slot = 1;
    EXPECT_EQ(c.epoch_index(), 1);
    c.slot = 10;
    EXPECT_EQ(c.epoch_index(), 1);
    EXPECT_TRUE(c.at_epoch_boundary());
    c.slot = 11;
    EXPECT_EQ(c.epoch_index(), 2);
    EXPECT_FALSE(c.at_epoch_boundary());
    EXPECT_EQ(c.num_epochs(), 50);
    EXPECT_DOUBLE_EQ(c.epoch_duration(), 1.0);
}

TEST(Clock, RejectsRaggedHorizon) {
    Clock c;
    c.horizon = 505;
    EXPECT_THROW(c.validate(), ConfigError);
    c.horizon = 500;
    c.slot_duration = 0.0;
    EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Task, TransitionsAreMonotone) {
    Task t;
    t.transition(TaskState::executing_edge);
    EXPECT_THROW(t.transition(TaskState::pending), IllegalTransition);
    EXPECT_THROW(t.transition(TaskState::executing_local), IllegalTransition);
    t.transition(TaskState::completed);
    EXPECT_THROW(t.transition(TaskState::dropped), IllegalTransition);
}

TEST(Task, PendingMayDropDirectly) {
    Task t;
    t.transition(TaskState::dropped);
    EXPECT_EQ(t.state, TaskState::dropped);
}

TEST(EdgeServer, IdleCoresAndReservation) {
    EdgeServer s;
    s.core_count = 3;
    s.core_capacity = 2e9;
    s.core_busy_until = {0, 5, 2};
    EXPECT_EQ(s.idle_cores(3), 2);
    EXPECT_DOUBLE_EQ(s.available_cycles(3), 4e9);
    // The idle core freed earliest is taken.
    EXPECT_EQ(s.reserve_core(3, 9), 0);
    EXPECT_EQ(s.reserve_core(3, 9), 2);
    EXPECT_EQ(s.reserve_core(3, 9), -1);
}

TEST(Mobility, FullMemoryKeepsVelocity) {
    RngStream rng(1, StreamDomain::test, 0);
    MobileDevice md = walker(1.0, {0.3, -0.2}, 0.5);
    md.velocity = {1.0, 0.5};
    const MobileDevice next = advance_md_mobility(md, rng, Arena{}, 1.0);
    EXPECT_DOUBLE_EQ(next.velocity.x, 1.0);
    EXPECT_DOUBLE_EQ(next.velocity.y, 0.5);
    EXPECT_DOUBLE_EQ(next.position.x, 251.0);
    EXPECT_DOUBLE_EQ(next.position.y, 250.5);
}

TEST(Mobility, NoMemoryNoNoiseGivesMean) {
    RngStream rng(1, StreamDomain::test, 0);
    MobileDevice md = walker(0.0, {0.7, 0.1}, 0.0);
    md.velocity = {-3.0, 2.0};
    const MobileDevice next = advance_md_mobility(md, rng, Arena{}, 1.0);
    EXPECT_DOUBLE_EQ(next.velocity.x, 0.7);
    EXPECT_DOUBLE_EQ(next.velocity.y, 0.1);
}

TEST(Mobility, StationaryMeanVelocity) {
    RngStream rng(2, StreamDomain::test, 0);
    MobileDevice md = walker(0.5, {1.0, 0.0}, 0.3);
    // A huge arena keeps walls out of the statistics.
    const Arena arena{1e9, 1e9};
    md.position = {5e8, 5e8};
    const int n = 100000;
    Vec2 sum;
    for (int i = 0; i < n; ++i) {
        md = advance_md_mobility(md, rng, arena, 1.0);
        sum += md.velocity;
    }
    EXPECT_NEAR(sum.x / n, 1.0, 0.01);
    EXPECT_NEAR(sum.y / n, 0.0, 0.01);
}

TEST(Mobility, ReflectsAtWalls) {
    RngStream rng(3, StreamDomain::test, 0);
    MobileDevice md = walker(1.0, {0.0, 0.0}, 0.0);
    md.position = {499.5, 0.2};
    md.velocity = {2.0, -1.0};
    const MobileDevice next = advance_md_mobility(md, rng, Arena{}, 1.0);
    EXPECT_DOUBLE_EQ(next.position.x, 500.0);
    EXPECT_DOUBLE_EQ(next.position.y, 0.0);
    EXPECT_LT(next.velocity.x, 0.0);
    EXPECT_GT(next.velocity.y, 0.0);
}

TEST(Mobility, StaysInsideArena) {
    RngStream rng(4, StreamDomain::test, 0);
    MobileDevice md = walker(0.8, {1.2, 0.9}, 2.0);
    const Arena arena;
    for (int i = 0; i < 5000; ++i) {
        md = advance_md_mobility(md, rng, arena, 1.0);
        ASSERT_TRUE(arena.contains(md.position)) << "epoch " << i;
    }
}

TEST(Mobility, SeedDeterminism) {
    MobileDevice a = walker(0.8, {1.0, 0.0}, 0.3);
    MobileDevice b = a;
    RngStream ra(11, StreamDomain::md_mobility, 3);
    RngStream rb(11, StreamDomain::md_mobility, 3);
    for (int i = 0; i < 200; ++i) {
        a = advance_md_mobility(a, ra, Arena{}, 1.0);
        b = advance_md_mobility(b, rb, Arena{}, 1.0);
    }
    EXPECT_EQ(a.position, b.position);
    EXPECT_EQ(a.velocity, b.velocity);
}

TEST(UavMove, HoverKeepsPosition) {
    const EdgeServer s = uav_at({0.0, 0.0}, {100.0, 0.0});
    const EdgeServer n = advance_uav_position(s, {0.0, 0.0}, 1.0, 10);
    EXPECT_EQ(n.position, (Vec2{0.0, 0.0}));
    EXPECT_DOUBLE_EQ(n.uav->speed, 0.0);
    EXPECT_EQ(n.uav->history.size(), 2u);
}

TEST(UavMove, FullSpeedStepAccepted) {
    const EdgeServer s = uav_at({0.0, 0.0}, {500.0, 0.0});
    const EdgeServer n = advance_uav_position(s, {25.0, 0.0}, 1.0, 40);
    EXPECT_DOUBLE_EQ(n.uav->speed, 25.0);
}

TEST(UavMove, OverspeedRejected) {
    const EdgeServer s = uav_at({0.0, 0.0}, {500.0, 0.0});
    EXPECT_THROW(advance_uav_position(s, {26.0, 0.0}, 1.0, 40), KinematicViolation);
}

TEST(UavMove, UnreachableDestinationRejected) {
    const EdgeServer s = uav_at({0.0, 0.0}, {100.0, 0.0});
    // After the move 3 epochs remain: 75 m reach, but 90 m would be left.
    EXPECT_THROW(advance_uav_position(s, {10.0, 0.0}, 1.0, 3), KinematicViolation);
    EXPECT_NO_THROW(advance_uav_position(s, {25.0, 0.0}, 1.0, 3));
}

TEST(UavAudit, ArrivalAnchorsPass) {
    Clock c;
    c.horizon = 30;
    UavState u;
    u.start = {0.0, 0.0};
    u.destination = {50.0, 0.0};
    u.history = {{0.0, 0.0}, {25.0, 0.0}, {50.0, 0.0}};
    const KinematicAudit a = check_uav_kinematics(u, c);
    EXPECT_TRUE(a.passed());
}

TEST(UavAudit, ReachabilitySlackIsMinusOneMeter) {
    Clock c;
    c.horizon = 50;  // 5 epochs
    UavState u;
    u.start = {0.0, 0.0};
    u.destination = {0.0, 0.0};
    // At epoch 2, three epochs remain: bound 75 m; placed at 76 m.
    u.history = {{0.0, 0.0}, {76.0, 0.0}};
    const KinematicAudit a = check_uav_kinematics(u, c);
    EXPECT_FALSE(a.reachability.passed);
    EXPECT_NEAR(a.reachability.slack, -1.0, 1e-9);
}
