#pragma once

#include <optional>
#include <string_view>

#include "tjcct/channel.hpp"
#include "tjcct/cost_model.hpp"
#include "tjcct/scenario.hpp"

namespace tjcct {

struct BargainParams {
    int max_iterations = 100;  // iota_max
    int horizon_rounds = 2;    // T^b
    /// Ceiling reported when the MD weight makes the upper price bound unbounded.
    double price_sentinel = 1e12;
};

/// Everything one MD-server negotiation depends on. The server is borrowed
/// and must outlive the context.
struct TradeContext {
    int md = 0;
    double md_weight = 0.5;
    double budget = 5.0;
    double transmit_power = 0.1;
    double md_energy_cap = 10.0;

    double size_bits = 0.0;
    double cycles = 0.0;
    double deadline = 1.0;
    double elapsed = 0.0;  // seconds already waited

    double rate = 1.0;     // uplink bits/s

    const EdgeServer* server = nullptr;
    double server_speed = 0.0;
    double slot_duration = 0.1;
    /// Largest allocation the server can grant this task (cycles/s).
    double capacity = 0.0;

    [[nodiscard]] double delay(double allocated) const;
    [[nodiscard]] double upload_energy() const;
    [[nodiscard]] double server_energy(double allocated) const;
    [[nodiscard]] double md_utility(double allocated, double price) const;
    [[nodiscard]] double server_utility(double allocated, double price) const;
};

/// Builds the context for `task` of `md` against `server` at `slot`.
/// Allocations are capped at one idle core's capacity.
TradeContext make_trade_context(const MobileDevice& md, const Task& task, const EdgeServer& server,
                                const LinkState& link, int slot, double slot_duration);

struct PriceSurplus {
    double floor = 0.0;
    double ceiling = 0.0;

    [[nodiscard]] double surplus() const { return ceiling - floor; }
    [[nodiscard]] bool viable() const { return surplus() > 0.0 && floor >= 0.0 && ceiling >= 0.0; }
};

/// Price floor and ceiling without the viability check.
PriceSurplus raw_price_bounds(const TradeContext& ctx, double allocated, const BargainParams& params = {});
/// Price floor and ceiling; throws NoViableTrade when the surplus is empty.
PriceSurplus price_bounds(const TradeContext& ctx, double allocated, const BargainParams& params = {});

struct Discounts {
    double md = 0.0;
    double server = 0.0;
};

/// Patience factors from the transmission and computation delay ratios,
/// clamped to [0, 1].
Discounts discount_factors(const TradeContext& ctx, double allocated);

/// Shares of the surplus in one proposal period.
struct Partition {
    double md_share = 0.0;
    double server_share = 0.0;
};

/// Perfect partition when the MD proposes (xi_ii, xi_ji). Throws
/// DegenerateDiscounts when both parties are fully patient.
Partition rubinstein_partition(double md_discount, double server_discount, int horizon_rounds);

/// Mirror of rubinstein_partition for a server-proposing period.
Partition rubinstein_partition_server_proposing(double md_discount, double server_discount,
                                                int horizon_rounds);

enum class Proposer { md, server };

std::string_view to_string(Proposer p);

/// Trading-contract proposer for the current utility signs. Non-positive
/// utilities count as negative; both negative lets the MD propose.
Proposer contract_proposer(double md_utility, double server_utility);

/// Ceiling minus the MD's share of the surplus, clamped into the bounds.
double optimal_price(const PriceSurplus& bounds, const Partition& partition);

/// MD-optimal allocation at `price`: maximizes the MD utility over the
/// deadline-feasible, budget- and capacity-capped interval by golden-section
/// search. Throws InfeasibleAllocation when the interval is empty.
double optimal_allocation(const TradeContext& ctx, double price);

enum class NoDealReason { none, no_viable_trade, degenerate_discounts, infeasible_allocation, no_consensus };

std::string_view to_string(NoDealReason r);

struct NegotiationResult {
    std::optional<Deal> deal;
    NoDealReason reason = NoDealReason::none;
    int iterations = 0;
};

/// Alternating price/allocation negotiation. Returns a Deal only on
/// consensus (both utilities positive, within budget and deadline).
NegotiationResult negotiate(const TradeContext& ctx, const BargainParams& params = {});

}  // namespace tjcct
