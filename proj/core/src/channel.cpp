#include "tjcct/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tjcct/errors.hpp"
#include "tjcct/units.hpp"

namespace tjcct {

double ChannelParams::noise_power() const {
    return units::dbm_to_watt(noise_density_dbm_hz) * bandwidth;
}

double ChannelParams::reference_gain() const { return units::db_to_linear(reference_gain_db); }

void ChannelParams::validate() const {
    if (!(bandwidth > 0.0)) throw ConfigError("channel.bandwidth must be positive");
    if (!(aerial_a > 0.0) || !(aerial_b > 0.0)) throw ConfigError("aerial LoS fit parameters must be positive");
    if (exponent_los > exponent_nlos) throw ConfigError("LoS path-loss exponent must not exceed the NLoS one");
    if (nakagami_m_los < 0.5 || nakagami_m_nlos < 0.5) throw ConfigError("Nakagami m must be at least 0.5");
    if (shadow_sigma_los_db < 0.0 || shadow_sigma_nlos_db < 0.0) throw ConfigError("shadowing spread must be non-negative");
}

double LinkGeometry::distance3d() const { return std::hypot(horizontal, height); }

double los_prob_terrestrial(double d, const ChannelParams& p) {
    const double near = d > 0.0 ? std::min(p.terrestrial_d1 / d, 1.0) : 1.0;
    const double decay = std::exp(-d / p.terrestrial_d2);
    return near * (1.0 - decay) + decay;
}

double los_prob_aerial(double d_horizontal, double altitude, const ChannelParams& p) {
    const double elevation_deg = (180.0 / std::numbers::pi) * std::atan2(altitude, d_horizontal);
    return 1.0 / (1.0 + p.aerial_a * std::exp(-p.aerial_b * (elevation_deg - p.aerial_a)));
}

double los_probability(const LinkGeometry& g, const ChannelParams& p) {
    return g.aerial ? los_prob_aerial(g.horizontal, g.height, p) : los_prob_terrestrial(g.horizontal, p);
}

double path_gain(double dist3d, double exponent, const ChannelParams& p) {
    return p.reference_gain() * std::pow(dist3d, -exponent);
}

double sample_nakagami_power(double m, RngStream& rng) { return rng.gamma(m, 1.0 / m); }

double sample_shadowing(double sigma_db, RngStream& rng) {
    const double sigma_ln = sigma_db * std::numbers::ln10 / 10.0;
    return std::exp(sigma_ln * rng.normal() - 0.5 * sigma_ln * sigma_ln);
}

double channel_gain(const LinkGeometry& g, const ChannelParams& p, RngStream* rng) {
    const double prob = los_probability(g, p);
    const double dist = g.distance3d();
    double los = path_gain(dist, p.exponent_los, p);
    double nlos = path_gain(dist, p.exponent_nlos, p);
    if (p.mode == FadingMode::sampled && rng != nullptr) {
        los *= sample_nakagami_power(p.nakagami_m_los, *rng) * sample_shadowing(p.shadow_sigma_los_db, *rng);
        nlos *= sample_nakagami_power(p.nakagami_m_nlos, *rng) * sample_shadowing(p.shadow_sigma_nlos_db, *rng);
    }
    return prob * los + (1.0 - prob) * nlos;
}

double data_rate(double bandwidth, double transmit_power, double gain, double noise_power) {
    return bandwidth * std::log2(1.0 + transmit_power * gain / noise_power);
}

LinkGeometry link_geometry(const MobileDevice& md, const EdgeServer& server) {
    return {distance(md.position, server.position), server.height(), server.is_aerial()};
}

LinkState evaluate_link(const MobileDevice& md, const EdgeServer& server, const ChannelParams& p,
                        RngStream* rng) {
    const LinkGeometry g = link_geometry(md, server);
    LinkState s;
    s.md = md.id;
    s.server = server.id;
    s.horizontal_distance = g.horizontal;
    s.los_probability = los_probability(g, p);
    s.gain = channel_gain(g, p, rng);
    s.rate = data_rate(p.bandwidth, md.transmit_power, s.gain, p.noise_power());
    return s;
}

}  // namespace tjcct
