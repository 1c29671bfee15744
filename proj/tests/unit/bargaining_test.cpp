#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support/instances.hpp"
#include "support/oracles.hpp"
#include "tjcct/bargaining.hpp"
#include "tjcct/errors.hpp"

using namespace tjcct;
using tjcct::fixture::random_trade;
using tjcct::fixture::test_rng;


TEST(PriceBounds, FullyProfitDrivenServerHasZeroFloor) {
    auto rng = test_rng(30);
    auto t = random_trade(rng);
    t.server->weight = 1.0;
    EXPECT_EQ(raw_price_bounds(t.ctx, t.ctx.capacity).floor, 0.0);
}

TEST(PriceBounds, DelayDominantMdHitsSentinel) {
    auto rng = test_rng(31);
    auto t = random_trade(rng);
    t.ctx.md_weight = 1.0;
    const BargainParams bp;
    const PriceSurplus b = raw_price_bounds(t.ctx, t.ctx.capacity, bp);
    EXPECT_EQ(b.ceiling, bp.price_sentinel);
}

TEST(PriceBounds, MatchFormulas) {
    auto rng = test_rng(32);
    for (int i = 0; i < 500; ++i) {
        auto t = random_trade(rng);
        const TradeContext& c = t.ctx;
        const EdgeServer& s = *t.server;
        const double f = rng.uniform(0.2, 1.0) * c.capacity;
        const double e = oracle::server_energy(c, f);
        const double floor = (1.0 - s.weight) * e * s.price_cap * (s.core_capacity / 1e9) /
                             (s.weight * s.energy_cap * (f / 1e9));
        const double d = c.elapsed + c.size_bits / c.rate + c.cycles / f;
        const double ceiling = (c.md_weight * std::log(1.0 + std::max(0.0, c.deadline - d)) /
                                    ((1.0 - c.md_weight) * std::log(1.0 + c.deadline)) -
                                c.transmit_power * c.size_bits / (c.rate * c.deadline)) *
                               c.budget / (f / 1e9);
        const PriceSurplus b = raw_price_bounds(c, f);
        ASSERT_NEAR(b.floor, floor, 1e-12 * std::max(1.0, std::abs(floor)));
        ASSERT_NEAR(b.ceiling, ceiling, 1e-12 * std::max(1.0, std::abs(ceiling)));
    }
}

TEST(PriceBounds, ThrowsWhenSurplusEmpty) {
    auto rng = test_rng(33);
    auto t = random_trade(rng);
    t.ctx.deadline = 1e-3;  // satisfaction zero, ceiling negative
    EXPECT_THROW(price_bounds(t.ctx, t.ctx.capacity), NoViableTrade);
}

TEST(PriceBounds, FloorNonDecreasingInServerWeight) {
    auto rng = test_rng(34);
    for (int i = 0; i < 300; ++i) {
        auto t = random_trade(rng);
        const double w1 = rng.uniform(0.05, 0.95);
        const double w2 = rng.uniform(0.05, 0.95);
        t.server->weight = std::min(w1, w2);
        const double lo = raw_price_bounds(t.ctx, t.ctx.capacity).floor;
        t.server->weight = std::max(w1, w2);
        const double hi = raw_price_bounds(t.ctx, t.ctx.capacity).floor;
        ASSERT_GE(lo, hi);  // a larger profit weight weighs cost less
    }
}

TEST(Partition, Anchors) {
    const Partition half = rubinstein_partition(0.5, 0.5, 2);
    EXPECT_NEAR(half.md_share, 0.0, 1e-15);
    EXPECT_NEAR(half.server_share, 1.0, 1e-15);
    const Partition patient = rubinstein_partition(1.0, 0.3, 2);
    EXPECT_DOUBLE_EQ(patient.md_share, 1.0);
    EXPECT_DOUBLE_EQ(patient.server_share, 0.0);
}

TEST(Partition, BothPatientIsDegenerate) {
    EXPECT_THROW(rubinstein_partition(1.0, 1.0, 2), DegenerateDiscounts);
    EXPECT_THROW(rubinstein_partition_server_proposing(1.0, 1.0, 4), DegenerateDiscounts);
}

TEST(Partition, MatchesOracleOnRandomTriples) {
    auto rng = test_rng(35);
    for (int i = 0; i < 1000; ++i) {
        const double li = rng.uniform();
        const double lj = rng.uniform();
        const int tb = 1 + static_cast<int>(rng.uniform() * 10.0);
        const auto [own, other] = oracle::partition(li, lj, tb);
        const Partition p = rubinstein_partition(li, lj, tb);
        ASSERT_NEAR(p.md_share, own, 1e-12);
        ASSERT_NEAR(p.server_share, other, 1e-12);
        const auto [sown, sother] = oracle::partition(lj, li, tb);
        const Partition q = rubinstein_partition_server_proposing(li, lj, tb);
        ASSERT_NEAR(q.server_share, sown, 1e-12);
        ASSERT_NEAR(q.md_share, sother, 1e-12);
        ASSERT_TRUE(std::isfinite(p.md_share + p.server_share));
    }
}

TEST(Price, Interpolates) {
    const PriceSurplus b{0.2, 0.6};
    EXPECT_DOUBLE_EQ(optimal_price(b, {0.0, 1.0}), 0.6);
    EXPECT_DOUBLE_EQ(optimal_price(b, {1.0, 0.0}), 0.2);
    EXPECT_NEAR(optimal_price(b, {0.5, 0.5}), 0.4, 1e-15);
    // Shares outside [0, 1] are clamped into the bounds.
    EXPECT_DOUBLE_EQ(optimal_price(b, {-3.0, 0.0}), 0.6);
    EXPECT_DOUBLE_EQ(optimal_price(b, {7.0, 0.0}), 0.2);
}

TEST(Proposer, FollowsSigns) {
    EXPECT_EQ(contract_proposer(0.1, -0.1), Proposer::md);
    EXPECT_EQ(contract_proposer(-0.1, 0.1), Proposer::server);
    EXPECT_EQ(contract_proposer(-0.1, -0.1), Proposer::md);
    EXPECT_EQ(contract_proposer(0.0, 0.2), Proposer::server);
}

TEST(Allocation, BoundaryMaximizerWhenPriceIsFree) {
    auto rng = test_rng(36);
    auto t = random_trade(rng);
    t.ctx.deadline = 50.0;
    // Zero price: more cycles only help.
    const double f = optimal_allocation(t.ctx, 0.0);
    EXPECT_NEAR(f / t.ctx.capacity, 1.0, 1e-9);
}

TEST(Allocation, BudgetExcludesDeadline) {
    auto rng = test_rng(37);
    auto t = random_trade(rng);
    const double slack = t.ctx.deadline - t.ctx.size_bits / t.ctx.rate;
    ASSERT_GT(slack, 0.0);
    const double need_ghz = t.ctx.cycles / slack / 1e9;
    const double price = 2.0 * t.ctx.budget / need_ghz;
    EXPECT_THROW(optimal_allocation(t.ctx, price), InfeasibleAllocation);
}

TEST(Allocation, MatchesGridSearch) {
    auto rng = test_rng(38);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        auto t = random_trade(rng);
        const TradeContext& c = t.ctx;
        const double price = rng.uniform(0.0, 0.5);
        double f = 0.0;
        try {
            f = optimal_allocation(c, price);
        } catch (const InfeasibleAllocation&) {
            continue;
        }
        const double lo = c.cycles / (c.deadline - c.size_bits / c.rate);
        const double hi = std::min(c.capacity, price > 0.0 ? c.budget / price * 1e9 : c.capacity);
        ASSERT_GE(f, lo * (1.0 - 1e-12));
        ASSERT_LE(f, hi * (1.0 + 1e-12));
        const double best = oracle::grid_best_qoe(c, price, 10000);
        const double got = oracle::md_qoe(c, f, price);
        ASSERT_GE(got, best - 1e-3 * std::abs(best) - 1e-12) << "instance " << i;
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Negotiate, DealsAreIndividuallyRational) {
    auto rng = test_rng(39);
    int deals = 0;
    for (int i = 0; i < 2000; ++i) {
        auto t = random_trade(rng);
        const NegotiationResult r = negotiate(t.ctx);
        ASSERT_LE(r.iterations, 100);
        if (!r.deal) {
            ASSERT_NE(r.reason, NoDealReason::none);
            continue;
        }
        ++deals;
        const Deal& d = *r.deal;
        ASSERT_GT(d.md_utility, 0.0);
        ASSERT_GT(d.server_utility, 0.0);
        ASSERT_NEAR(d.md_utility, oracle::md_qoe(t.ctx, d.allocated_cycles, d.unit_price), 1e-12);
        ASSERT_NEAR(d.server_utility, oracle::server_revenue(t.ctx, d.allocated_cycles, d.unit_price), 1e-12);
        ASSERT_LE(d.allocated_cycles / 1e9 * d.unit_price, t.ctx.budget * (1.0 + 1e-12));
        ASSERT_LE(d.allocated_cycles, t.ctx.capacity * (1.0 + 1e-12));
        ASSERT_LE(d.delay, t.ctx.deadline);
    }
    EXPECT_GT(deals, 200);
}

TEST(Negotiate, ImmediateConsensusTakesOneIteration) {
    auto rng = test_rng(40);
    for (int i = 0; i < 2000; ++i) {
        auto t = random_trade(rng);
        const double f = t.ctx.capacity;
        const PriceSurplus b = raw_price_bounds(t.ctx, f);
        if (!b.viable()) continue;
        const Discounts l = discount_factors(t.ctx, f);
        const double p = optimal_price(b, rubinstein_partition(l.md, l.server, 2));
        if (!(t.ctx.md_utility(f, p) > 0.0 && t.ctx.server_utility(f, p) > 0.0)) continue;
        if (f / 1e9 * p > t.ctx.budget || t.ctx.delay(f) > t.ctx.deadline) continue;
        const NegotiationResult r = negotiate(t.ctx);
        ASSERT_TRUE(r.deal.has_value());
        EXPECT_EQ(r.iterations, 1);
        return;
    }
    FAIL() << "no first-round consensus instance found";
}

TEST(Negotiate, NoViableTradeGivesNoDeal) {
    auto rng = test_rng(41);
    auto t = random_trade(rng);
    t.ctx.deadline = 1e-3;
    const NegotiationResult r = negotiate(t.ctx);
    EXPECT_FALSE(r.deal.has_value());
    EXPECT_NE(r.reason, NoDealReason::none);
}

TEST(Negotiate, IsPure) {
    auto rng = test_rng(42);
    for (int i = 0; i < 200; ++i) {
        auto t = random_trade(rng);
        const NegotiationResult a = negotiate(t.ctx);
        const NegotiationResult b = negotiate(t.ctx);
        ASSERT_EQ(a.deal.has_value(), b.deal.has_value());
        ASSERT_EQ(a.iterations, b.iterations);
        if (a.deal) {
            ASSERT_EQ(a.deal->allocated_cycles, b.deal->allocated_cycles);
            ASSERT_EQ(a.deal->unit_price, b.deal->unit_price);
        }
    }
}

TEST(Discounts, ClampedToUnitInterval) {
    auto rng = test_rng(43);
    for (int i = 0; i < 500; ++i) {
        auto t = random_trade(rng);
        t.ctx.rate = rng.uniform(1e3, 1e8);
        const Discounts d = discount_factors(t.ctx, rng.uniform(1e6, 4e10));
        ASSERT_GE(d.md, 0.0);
        ASSERT_LE(d.md, 1.0);
        ASSERT_GE(d.server, 0.0);
        ASSERT_LE(d.server, 1.0);
    }
}
