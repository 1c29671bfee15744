#include "tjcct/rng.hpp"

#include <cmath>
#include <numbers>

namespace tjcct {

std::uint64_t mix64(std::uint64_t x) {
    // SplitMix64 finalizer.
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

RngStream::RngStream(std::uint64_t seed, StreamDomain domain, std::uint64_t entity)
    : key_(mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(domain)) + entity)) {}

std::uint64_t RngStream::next_u64() {
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    ++counter_;
    return mix64(key_ + counter_ * golden);
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::gamma(double shape, double scale) {
    if (shape < 1.0) {
        // Boost: Gamma(a) = Gamma(a + 1) * U^(1/a).
        double u = uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
    }
}

bool RngStream::bernoulli(double p) {
    return uniform() < p;
}

}  // namespace tjcct
