#include "tjcct/bargaining.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tjcct/errors.hpp"
#include "tjcct/units.hpp"

namespace tjcct {

double TradeContext::delay(double allocated) const {
    return elapsed + edge_delay(size_bits, rate, cycles, allocated);
}

double TradeContext::upload_energy() const {
    return tjcct::upload_energy(size_bits, transmit_power, rate);
}

double TradeContext::server_energy(double allocated) const {
    return tjcct::server_energy(cycles, allocated, *server, server_speed, slot_duration);
}

double TradeContext::md_utility(double allocated, double price) const {
    QoeTerms t;
    t.weight = md_weight;
    t.deadline = deadline;
    t.delay = delay(allocated);
    t.energy = upload_energy();
    t.energy_cap = md_energy_cap;
    t.payment = units::to_ghz(allocated) * price;
    t.budget = budget;
    return md_qoe(t);
}

double TradeContext::server_utility(double allocated, double price) const {
    return server_revenue(allocated, price, server_energy(allocated), *server);
}

TradeContext make_trade_context(const MobileDevice& md, const Task& task, const EdgeServer& server,
                                const LinkState& link, int slot, double slot_duration) {
    TradeContext ctx;
    ctx.md = md.id;
    ctx.md_weight = md.weight;
    ctx.budget = md.budget;
    ctx.transmit_power = md.transmit_power;
    ctx.md_energy_cap = md.energy_cap;
    ctx.size_bits = task.size_bits;
    ctx.cycles = task.cycles;
    ctx.deadline = task.deadline;
    ctx.elapsed = task.elapsed(slot, slot_duration);
    ctx.rate = link.rate;
    ctx.server = &server;
    ctx.server_speed = server.uav ? server.uav->speed : 0.0;
    ctx.slot_duration = slot_duration;
    ctx.capacity = std::min(server.available_cycles(slot), server.core_capacity);
    return ctx;
}

PriceSurplus raw_price_bounds(const TradeContext& ctx, double allocated, const BargainParams& params) {
    const EdgeServer& s = *ctx.server;
    const double f_ghz = units::to_ghz(allocated);
    PriceSurplus b;
    if (s.weight >= 1.0) {
        b.floor = 0.0;
    } else if (s.weight <= 0.0) {
        b.floor = params.price_sentinel;
    } else {
        b.floor = (1.0 - s.weight) * ctx.server_energy(allocated) * s.price_cap *
                  units::to_ghz(s.core_capacity) / (s.weight * s.energy_cap * f_ghz);
    }
    if (ctx.md_weight >= 1.0) {
        b.ceiling = params.price_sentinel;
    } else {
        const double sat = satisfaction(ctx.deadline, ctx.delay(allocated));
        const double willingness = ctx.md_weight * sat / (1.0 - ctx.md_weight) -
                                   ctx.transmit_power * ctx.size_bits / (ctx.rate * ctx.deadline);
        b.ceiling = std::min(willingness * ctx.budget / f_ghz, params.price_sentinel);
    }
    return b;
}

PriceSurplus price_bounds(const TradeContext& ctx, double allocated, const BargainParams& params) {
    PriceSurplus b = raw_price_bounds(ctx, allocated, params);
    if (!b.viable()) {
        throw NoViableTrade("price floor " + std::to_string(b.floor) + " vs ceiling " +
                            std::to_string(b.ceiling));
    }
    return b;
}

Discounts discount_factors(const TradeContext& ctx, double allocated) {
    const auto unit = [](double x) { return std::clamp(x, 0.0, 1.0); };
    return {unit(1.0 - ctx.size_bits / (ctx.rate * ctx.deadline)),
            unit(1.0 - ctx.cycles / (allocated * ctx.deadline))};
}

namespace {

Partition proposer_partition(double own, double other, int horizon_rounds) {
    const double x = own * other;
    if (x >= 1.0) throw DegenerateDiscounts("both parties fully patient (discount product 1)");
    const int k = (horizon_rounds + 1) / 2;
    const double xk = std::pow(x, k);
    Partition p;
    // Shares from the proposer's perspective: [own share, responder share].
    p.md_share = own - (1.0 - own) * (1.0 - xk) / (1.0 - x);
    p.server_share = (1.0 - own) * (2.0 - x - xk) / (1.0 - x);
    return p;
}

}  // namespace

Partition rubinstein_partition(double md_discount, double server_discount, int horizon_rounds) {
    return proposer_partition(md_discount, server_discount, horizon_rounds);
}

Partition rubinstein_partition_server_proposing(double md_discount, double server_discount,
                                                int horizon_rounds) {
    const Partition mirrored = proposer_partition(server_discount, md_discount, horizon_rounds);
    return {mirrored.server_share, mirrored.md_share};
}

std::string_view to_string(Proposer p) { return p == Proposer::md ? "md" : "server"; }

Proposer contract_proposer(double md_utility, double server_utility) {
    if (md_utility > 0.0 && server_utility <= 0.0) return Proposer::md;
    if (md_utility <= 0.0 && server_utility > 0.0) return Proposer::server;
    return Proposer::md;
}

double optimal_price(const PriceSurplus& bounds, const Partition& partition) {
    const double p = bounds.ceiling - bounds.surplus() * partition.md_share;
    return std::clamp(p, bounds.floor, bounds.ceiling);
}

double optimal_allocation(const TradeContext& ctx, double price) {
    const double slack = ctx.deadline - ctx.elapsed - ctx.size_bits / ctx.rate;
    if (!(slack > 0.0)) throw InfeasibleAllocation("upload alone exceeds the deadline");
    const double lo = ctx.cycles / slack;
    double hi = ctx.capacity;
    if (price > 0.0) hi = std::min(hi, ctx.budget / price * units::giga);
    if (!(hi > 0.0) || lo > hi) {
        throw InfeasibleAllocation("deadline needs " + std::to_string(lo) + " cycles/s, at most " +
                                   std::to_string(hi) + " affordable");
    }
    const auto utility = [&](double f) { return ctx.md_utility(f, price); };

    // Utility is concave on the deadline-feasible interval.
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = utility(c);
    double fd = utility(d);
    for (int i = 0; i < 200 && (b - a) > 1e-6 * b; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = utility(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = utility(d);
        }
    }
    double best = 0.5 * (a + b);
    double best_u = utility(best);
    if (const double u = utility(hi); u >= best_u) {
        best = hi;
        best_u = u;
    }
    return best;
}

std::string_view to_string(NoDealReason r) {
    switch (r) {
        case NoDealReason::none: return "none";
        case NoDealReason::no_viable_trade: return "no-viable-trade";
        case NoDealReason::degenerate_discounts: return "degenerate-discounts";
        case NoDealReason::infeasible_allocation: return "infeasible-allocation";
        case NoDealReason::no_consensus: return "no-consensus";
    }
    return "unknown";
}

NegotiationResult negotiate(const TradeContext& ctx, const BargainParams& params) {
    NegotiationResult result;
    if (!(ctx.capacity > 0.0) || !(ctx.rate > 0.0)) {
        result.reason = NoDealReason::infeasible_allocation;
        return result;
    }
    double allocated = ctx.capacity;
    Proposer proposer = Proposer::md;

    for (int it = 1; it <= params.max_iterations; ++it) {
        result.iterations = it;
        const PriceSurplus bounds = raw_price_bounds(ctx, allocated, params);
        double price = 0.0;
        if (bounds.viable()) {
            try {
                const Discounts lam = discount_factors(ctx, allocated);
                const Partition part =
                    proposer == Proposer::md
                        ? rubinstein_partition(lam.md, lam.server, params.horizon_rounds)
                        : rubinstein_partition_server_proposing(lam.md, lam.server, params.horizon_rounds);
                price = optimal_price(bounds, part);
            } catch (const DegenerateDiscounts&) {
                result.reason = NoDealReason::degenerate_discounts;
                return result;
            }
        } else if (it == 1 && bounds.ceiling > 0.0) {
            // The opening allocation is the whole core; the MD bids its
            // ceiling and rescales its request before the real bargaining.
            price = bounds.ceiling;
        } else {
            result.reason = NoDealReason::no_viable_trade;
            return result;
        }

        const double md_u = ctx.md_utility(allocated, price);
        const double server_u = ctx.server_utility(allocated, price);
        const double delay = ctx.delay(allocated);
        const bool within_budget = units::to_ghz(allocated) * price <= ctx.budget;
        if (md_u > 0.0 && server_u > 0.0 && within_budget && delay <= ctx.deadline) {
            Deal deal;
            deal.md = ctx.md;
            deal.server = ctx.server->id;
            deal.allocated_cycles = allocated;
            deal.unit_price = price;
            deal.md_utility = md_u;
            deal.server_utility = server_u;
            deal.delay = delay;
            deal.upload_energy = ctx.upload_energy();
            deal.server_energy = ctx.server_energy(allocated);
            deal.rate = ctx.rate;
            result.deal = deal;
            return result;
        }
        proposer = contract_proposer(md_u, server_u);
        try {
            allocated = optimal_allocation(ctx, price);
        } catch (const InfeasibleAllocation&) {
            result.reason = NoDealReason::infeasible_allocation;
            return result;
        }
    }
    result.reason = NoDealReason::no_consensus;
    return result;
}

}  // namespace tjcct
