#include "tjcct/cost_model.hpp"

#include <algorithm>
#include <cmath>

#include "tjcct/units.hpp"

namespace tjcct {

double Deal::payment() const { return units::to_ghz(allocated_cycles) * unit_price; }

double local_delay(double cycles, double cpu) { return cycles / cpu; }

double local_energy(double cycles, double cpu, double capacitance) {
    return capacitance * cpu * cpu * cycles;
}

double edge_delay(double size_bits, double rate, double cycles, double allocated) {
    return size_bits / rate + cycles / allocated;
}

double upload_energy(double size_bits, double transmit_power, double rate) {
    return transmit_power * size_bits / rate;
}

double propulsion_power(double speed, const PropulsionParams& p) {
    const double v2 = speed * speed;
    const double blade = p.blade_profile * (1.0 + 3.0 * v2 / (p.tip_speed * p.tip_speed));
    const double inner = std::sqrt(p.induced_speed4 + v2 * v2 / 4.0) - v2 / 2.0;
    const double induced = p.induced * std::sqrt(std::max(0.0, inner));
    const double parasite = p.parasite * v2 * speed;
    return blade + induced + parasite;
}

double server_compute_energy(double cycles, double allocated, double capacitance) {
    return capacitance * allocated * allocated * cycles;
}

double server_energy(double cycles, double allocated, const EdgeServer& server, double speed,
                     double slot_duration) {
    double e = server_compute_energy(cycles, allocated, server.capacitance);
    if (server.uav) e += propulsion_power(speed, server.uav->propulsion) * slot_duration;
    return e;
}

double satisfaction(double deadline, double delay) {
    return std::log1p(std::max(0.0, deadline - delay)) / std::log1p(deadline);
}

double md_qoe(const QoeTerms& t) {
    const double cost = t.energy / t.energy_cap + t.payment / t.budget;
    return t.weight * satisfaction(t.deadline, t.delay) - (1.0 - t.weight) * cost;
}

double server_revenue(double allocated, double unit_price, double energy, const EdgeServer& server) {
    const double reward = allocated * unit_price / (server.core_capacity * server.price_cap);
    return server.weight * reward - (1.0 - server.weight) * energy / server.energy_cap;
}

double system_utility_slot(std::span<const Outcome> outcomes) {
    double total = 0.0;
    for (const Outcome& o : outcomes) {
        total += o.md_utility + (o.target.is_local() ? 0.0 : o.server_utility);
    }
    return total;
}

}  // namespace tjcct
