#pragma once

#include <cstdint>

namespace tjcct {

/// Purpose tags that keep random streams of different subsystems disjoint.
enum class StreamDomain : std::uint64_t {
    md_setup = 1,
    md_mobility = 2,
    task_arrival = 3,
    task_parameters = 4,
    server_setup = 5,
    fading = 6,
    test = 99,
};

/// Counter-based generator: draw n of stream (seed, domain, entity) is a pure
/// function of those four values, so adding or removing an entity never shifts
/// another entity's draws.
///
/// The distributions are implemented here rather than taken from <random>
/// because the standard distributions are not bit-reproducible across library
/// implementations.
class RngStream {
public:
    RngStream(std::uint64_t seed, StreamDomain domain, std::uint64_t entity);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal (Box-Muller; consumes exactly two draws).
    double normal();
    /// Gamma(shape, scale) by Marsaglia-Tsang.
    double gamma(double shape, double scale);
    bool bernoulli(double p);

    [[nodiscard]] std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace tjcct
