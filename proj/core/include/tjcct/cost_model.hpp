#pragma once

#include <span>

#include "tjcct/scenario.hpp"

namespace tjcct {

/// Offloading target: 0 is local execution, otherwise server id + 1.
struct Target {
    int value = 0;

    static constexpr Target local() { return {0}; }
    static constexpr Target server(int id) { return {id + 1}; }
    [[nodiscard]] constexpr bool is_local() const { return value == 0; }
    [[nodiscard]] constexpr int server_id() const { return value - 1; }
    friend constexpr bool operator==(Target, Target) = default;
};

/// Agreed allocation and unit price between one MD and one server.
struct Deal {
    int md = 0;
    int server = 0;
    double allocated_cycles = 0.0;  // cycles/s
    double unit_price = 0.0;        // currency per GHz
    double md_utility = 0.0;
    double server_utility = 0.0;
    // Terms the utilities were evaluated with.
    double delay = 0.0;
    double upload_energy = 0.0;
    double server_energy = 0.0;
    double rate = 0.0;

    [[nodiscard]] double payment() const;
};

double local_delay(double cycles, double cpu);
double local_energy(double cycles, double cpu, double capacitance);
double edge_delay(double size_bits, double rate, double cycles, double allocated);
double upload_energy(double size_bits, double transmit_power, double rate);

/// Rotary-wing propulsion power at horizontal speed v.
double propulsion_power(double speed, const PropulsionParams& p);

double server_compute_energy(double cycles, double allocated, double capacitance);
/// Compute energy, plus one slot of propulsion for aerial servers (charged in
/// full to every served task).
double server_energy(double cycles, double allocated, const EdgeServer& server, double speed,
                     double slot_duration);

/// log(1 + max(0, tau - D)) / log(1 + tau): zero once the deadline is missed.
double satisfaction(double deadline, double delay);

struct QoeTerms {
    double weight = 0.5;
    double deadline = 1.0;
    double delay = 0.0;
    double energy = 0.0;       // local execution or upload energy
    double energy_cap = 1.0;
    double payment = 0.0;      // zero for local execution
    double budget = 1.0;
};

/// MD utility: weighted satisfaction minus normalized energy and payment.
double md_qoe(const QoeTerms& t);

/// Server utility: weighted normalized reward minus normalized energy.
double server_revenue(double allocated, double unit_price, double energy, const EdgeServer& server);

/// One executed decision of a slot.
struct Outcome {
    int task = 0;
    int md = 0;
    Target target;
    double md_utility = 0.0;
    double server_utility = 0.0;  // zero for local execution
};

/// Sum of MD and server utilities over the slot's decisions.
double system_utility_slot(std::span<const Outcome> outcomes);

}  // namespace tjcct
