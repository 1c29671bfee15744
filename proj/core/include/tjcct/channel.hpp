#pragma once

#include "tjcct/rng.hpp"
#include "tjcct/scenario.hpp"

namespace tjcct {

enum class FadingMode { expected, sampled };

/// Radio parameters. Defaults are urban-micro class values; every field is
/// overridable from the experiment config.
struct ChannelParams {
    double bandwidth = 1e6;                  // Hz per subchannel
    double noise_density_dbm_hz = -174.0;    // dBm/Hz
    double terrestrial_d1 = 18.0;            // m
    double terrestrial_d2 = 36.0;            // m
    double aerial_a = 10.0;                  // varrho_1
    double aerial_b = 0.6;                   // varrho_2
    double exponent_los = 2.2;
    double exponent_nlos = 3.5;
    double reference_gain_db = -40.0;        // at 1 m
    double nakagami_m_los = 3.0;
    double nakagami_m_nlos = 1.0;
    double shadow_sigma_los_db = 4.0;
    double shadow_sigma_nlos_db = 8.2;
    FadingMode mode = FadingMode::expected;

    [[nodiscard]] double noise_power() const;  // W over one subchannel
    [[nodiscard]] double reference_gain() const;
    void validate() const;
};

struct LinkGeometry {
    double horizontal = 0.0;  // m
    double height = 0.0;      // server height above the MD, m
    bool aerial = false;

    [[nodiscard]] double distance3d() const;
};

struct LinkState {
    int md = 0;
    int server = 0;
    double horizontal_distance = 0.0;
    double los_probability = 0.0;
    double gain = 0.0;
    double rate = 0.0;  // bits/s
};

/// 3GPP-style MD-MBS LoS probability; d = 0 saturates the min term.
double los_prob_terrestrial(double d, const ChannelParams& p);

/// Elevation-angle LoS probability for an MD-UAV link; d = 0 is overhead.
double los_prob_aerial(double d_horizontal, double altitude, const ChannelParams& p);

double los_probability(const LinkGeometry& g, const ChannelParams& p);

/// g0 * dist^-exponent with dist the 3-D distance.
double path_gain(double dist3d, double exponent, const ChannelParams& p);

/// Channel power gain mixing LoS and NLoS components by the LoS probability.
/// Expected mode uses mean-one fading; sampled mode draws Nakagami-m power
/// fading and mean-one log-normal shadowing per component from `rng`.
double channel_gain(const LinkGeometry& g, const ChannelParams& p, RngStream* rng = nullptr);

/// Shannon rate B * log2(1 + P g / N0).
double data_rate(double bandwidth, double transmit_power, double gain, double noise_power);

/// Mean-one Nakagami-m power fading sample (Gamma(m, 1/m)).
double sample_nakagami_power(double m, RngStream& rng);
/// Mean-one log-normal shadowing sample with the given dB spread.
double sample_shadowing(double sigma_db, RngStream& rng);

LinkGeometry link_geometry(const MobileDevice& md, const EdgeServer& server);
LinkState evaluate_link(const MobileDevice& md, const EdgeServer& server, const ChannelParams& p,
                        RngStream* rng = nullptr);

}  // namespace tjcct
