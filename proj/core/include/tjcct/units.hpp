#pragma once

#include <cmath>

namespace tjcct::units {

inline constexpr double giga = 1e9;
inline constexpr double mega = 1e6;

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Cycles/s expressed in GHz, the unit prices are quoted in.
constexpr double to_ghz(double cycles_per_second) { return cycles_per_second / giga; }

}  // namespace tjcct::units
