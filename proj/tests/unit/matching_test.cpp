#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support/instances.hpp"
#include "support/oracles.hpp"
#include "tjcct/errors.hpp"
#include "tjcct/matching.hpp"

using namespace tjcct;
using tjcct::fixture::random_instance;
using tjcct::fixture::test_rng;

namespace {

Deal deal(int md, int server, double f, double md_u, double server_u) {
    Deal d;
    d.md = md;
    d.server = server;
    d.allocated_cycles = f;
    d.md_utility = md_u;
    d.server_utility = server_u;
    return d;
}

MatchingInstance direct(std::size_t tasks, std::vector<ServerSlots> servers,
                        std::vector<std::optional<Deal>> trials) {
    MatchingInstance inst;
    inst.task_ids.resize(tasks);
    std::iota(inst.task_ids.begin(), inst.task_ids.end(), 0);
    inst.servers = std::move(servers);
    inst.trials = std::move(trials);
    return inst;
}

}  // namespace

TEST(Preferences, SortedByUtility) {
    const auto inst = direct(1, {{0, 1, 1e10, {}}, {1, 1, 1e10, {}}},
                             {deal(0, 0, 1e9, 0.2, 0.1), deal(0, 1, 1e9, 0.4, 0.1)});
    const auto prefs = build_preferences(inst);
    EXPECT_EQ(prefs.tasks[0], (std::vector<std::size_t>{1, 0}));
}

TEST(Preferences, NoDealsGiveEmptyLists) {
    const auto inst = direct(2, {{0, 1, 1e10, {}}}, {std::nullopt, std::nullopt});
    const auto prefs = build_preferences(inst);
    EXPECT_TRUE(prefs.tasks[0].empty());
    EXPECT_TRUE(prefs.servers[0].empty());
    const Matching m = run_matching(prefs, inst);
    EXPECT_EQ(m.matched_count(), 0u);
    EXPECT_TRUE(is_stable(m, inst, prefs).stable);
}

TEST(Preferences, TrialsRunOncePerPair) {
    int calls = 0;
    const auto inst = make_instance({10, 11, 12}, {{0, 1, 1e10, {}}, {1, 2, 2e10, {}}},
                                    [&](std::size_t t, std::size_t s) -> std::optional<Deal> {
                                        ++calls;
                                        return deal(static_cast<int>(t), static_cast<int>(s), 1e9,
                                                    0.1 * (t + 1) + 0.01 * s, 0.1);
                                    });
    EXPECT_EQ(calls, 6);
    const auto prefs = build_preferences(inst);
    for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(prefs.tasks[t], (std::vector<std::size_t>{1, 0}));
}

TEST(Matching, SingleViablePair) {
    const auto inst = direct(1, {{0, 1, 1e10, {}}}, {deal(0, 0, 1e9, 0.3, 0.2)});
    const auto prefs = build_preferences(inst);
    const Matching m = run_matching(prefs, inst);
    EXPECT_EQ(m.task_server[0], 0);
}

TEST(Matching, ServerKeepsPreferredAndLoserMovesOn) {
    // Both tasks want server 0 with one idle core; it prefers task 1.
    const auto inst = direct(2, {{0, 1, 1e10, {}}, {1, 1, 1e10, {}}},
                             {deal(0, 0, 1e9, 0.5, 0.1), deal(0, 1, 1e9, 0.3, 0.1),
                              deal(1, 0, 1e9, 0.5, 0.4), deal(1, 1, 1e9, 0.2, 0.1)});
    const auto prefs = build_preferences(inst);
    const Matching m = run_matching(prefs, inst);
    EXPECT_EQ(m.task_server[1], 0);
    EXPECT_EQ(m.task_server[0], 1);
}

TEST(Matching, ExhaustedTaskStaysUnmatched) {
    const auto inst = direct(2, {{0, 1, 1e10, {}}},
                             {deal(0, 0, 1e9, 0.5, 0.1), deal(1, 0, 1e9, 0.5, 0.4)});
    const auto prefs = build_preferences(inst);
    const Matching m = run_matching(prefs, inst);
    EXPECT_EQ(m.task_server[0], Matching::unmatched);
    EXPECT_EQ(m.rejected, (std::vector<std::size_t>{0}));
}

TEST(Matching, CycleCapDropsLeastPreferred) {
    const auto inst = direct(3, {{0, 3, 5e9, {}}},
                             {deal(0, 0, 2e9, 0.5, 0.3), deal(1, 0, 2e9, 0.5, 0.2), deal(2, 0, 2e9, 0.5, 0.1)});
    const auto prefs = build_preferences(inst);
    const Matching m = run_matching(prefs, inst);
    EXPECT_EQ(m.server_tasks[0], (std::vector<std::size_t>{0, 1}));
}

TEST(Matching, QuotaLimitsAdmission) {
    const auto inst = direct(2, {{0, 4, 1e11, 1}},
                             {deal(0, 0, 1e9, 0.5, 0.3), deal(1, 0, 1e9, 0.5, 0.2)});
    const Matching m = run_matching(build_preferences(inst), inst);
    EXPECT_EQ(m.matched_count(), 1u);
}

TEST(Stability, HandBuiltWorstAssignmentIsUnstable) {
    const auto inst = direct(2, {{0, 2, 1e10, {}}, {1, 2, 1e10, {}}},
                             {deal(0, 0, 1e9, 0.5, 0.1), deal(0, 1, 1e9, 0.2, 0.1),
                              deal(1, 0, 1e9, 0.5, 0.1), deal(1, 1, 1e9, 0.2, 0.1)});
    const auto prefs = build_preferences(inst);
    Matching m;
    m.task_server = {1, 1};
    m.server_tasks = {{}, {0, 1}};
    const StabilityReport r = is_stable(m, inst, prefs);
    EXPECT_FALSE(r.stable);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->second, 0u);
}

TEST(Stability, EmptyIsStable) {
    const MatchingInstance inst;
    const PreferenceLists prefs;
    Matching m;
    EXPECT_TRUE(is_stable(m, inst, prefs).stable);
}

TEST(Stability, RandomInstancesAgainstBlockingPairScan) {
    auto rng = test_rng(50);
    for (int i = 0; i < 1000; ++i) {
        // Cycles equal idle cores times core capacity, as in the simulator.
        const auto inst = random_instance(rng, 20, 3, false);
        const auto prefs = build_preferences(inst);
        const Matching m = run_matching(prefs, inst);
        ASSERT_TRUE(oracle::capacity_feasible(m, inst)) << "instance " << i;
        ASSERT_FALSE(oracle::blocking_pair_exists(m, inst)) << "instance " << i;
        ASSERT_TRUE(is_stable(m, inst, prefs).stable) << "instance " << i;
        ASSERT_LE(m.proposals, static_cast<int>(inst.num_tasks() * inst.num_servers()));
    }
}

TEST(Stability, CheckerAgreesWithScanUnderBindingCycleCaps) {
    // A cycle cap tighter than the cores makes the server's choice
    // non-substitutable, so DA may leave blocking pairs. The checker must
    // still report exactly what the scan finds.
    auto rng = test_rng(56);
    int unstable = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto inst = random_instance(rng, 20, 3, true);
        const auto prefs = build_preferences(inst);
        const Matching m = run_matching(prefs, inst);
        ASSERT_TRUE(oracle::capacity_feasible(m, inst));
        const bool want = !oracle::blocking_pair_exists(m, inst);
        ASSERT_EQ(is_stable(m, inst, prefs).stable, want) << "instance " << i;
        unstable += !want;
    }
    RecordProperty("unstable", unstable);
}

TEST(Stability, CheckerAgreesWithScanOnPerturbedMatchings) {
    auto rng = test_rng(51);
    int unstable = 0;
    for (int i = 0; i < 500; ++i) {
        const auto inst = random_instance(rng, 6, 2, false);
        const auto prefs = build_preferences(inst);
        // Random feasible assignment, built greedily in task order.
        Matching m;
        m.task_server.assign(inst.num_tasks(), Matching::unmatched);
        m.server_tasks.assign(inst.num_servers(), {});
        for (std::size_t t = 0; t < inst.num_tasks(); ++t) {
            const auto s = static_cast<std::size_t>(rng.uniform() * 3.0);
            if (s >= inst.num_servers() || !inst.trial(t, s)) continue;
            m.server_tasks[s].push_back(t);
            if (!oracle::capacity_feasible(m, inst)) {
                m.server_tasks[s].pop_back();
                continue;
            }
            m.task_server[t] = static_cast<int>(s);
        }
        const bool want = !oracle::blocking_pair_exists(m, inst);
        ASSERT_EQ(is_stable(m, inst, prefs).stable, want) << "instance " << i;
        unstable += !want;
    }
    EXPECT_GT(unstable, 50);
}

TEST(WeakPareto, SingleTaskAlwaysHolds) {
    auto rng = test_rng(52);
    for (int i = 0; i < 200; ++i) {
        const auto inst = random_instance(rng, 1, 3);
        const Matching m = run_matching(build_preferences(inst), inst);
        ASSERT_TRUE(is_weak_pareto(m, inst));
    }
}

TEST(WeakPareto, RandomSmallInstancesAgainstEnumeration) {
    auto rng = test_rng(53);
    for (int i = 0; i < 1000; ++i) {
        const auto inst = random_instance(rng, 4, 2);
        const Matching m = run_matching(build_preferences(inst), inst);
        ASSERT_FALSE(oracle::pareto_dominated(m, inst)) << "instance " << i;
        ASSERT_TRUE(is_weak_pareto(m, inst)) << "instance " << i;
    }
}

TEST(WeakPareto, CheckerMatchesEnumerationOnPerturbedMatchings) {
    auto rng = test_rng(54);
    int dominated_count = 0;
    for (int i = 0; i < 500; ++i) {
        const auto inst = random_instance(rng, 4, 2, false);
        Matching m = run_matching(build_preferences(inst), inst);
        // Swap two matched tasks across servers, if both pairs are viable.
        for (std::size_t a = 0; a < inst.num_tasks(); ++a) {
            for (std::size_t b = a + 1; b < inst.num_tasks(); ++b) {
                const int sa = m.task_server[a];
                const int sb = m.task_server[b];
                if (sa < 0 || sb < 0 || sa == sb) continue;
                if (!inst.trial(a, sb) || !inst.trial(b, sa)) continue;
                Matching p = m;
                p.task_server[a] = sb;
                p.task_server[b] = sa;
                for (auto& list : p.server_tasks) {
                    for (auto& t : list) t = t == a ? b : (t == b ? a : t);
                }
                if (!oracle::capacity_feasible(p, inst)) continue;
                const bool want = !oracle::pareto_dominated(p, inst);
                ASSERT_EQ(is_weak_pareto(p, inst), want) << "instance " << i;
                dominated_count += !want;
            }
        }
    }
    SUCCEED() << dominated_count << " dominated perturbations";
}

TEST(WeakPareto, RefusesLargeInstances) {
    auto rng = test_rng(55);
    MatchingInstance inst = random_instance(rng, 1, 4);
    Matching m = run_matching(build_preferences(inst), inst);
    EXPECT_THROW(is_weak_pareto(m, inst), InstanceTooLarge);
}
