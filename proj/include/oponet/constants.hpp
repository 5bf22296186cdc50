#pragma once

#include <numbers>

namespace oponet {

// Vacuum speed of light, m/s.
inline constexpr double speed_of_light = 299792458.0;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// All rates and frequencies inside the library are angular (rad/s).
// User-facing values are ordinary frequencies in MHz, i.e. omega / 2pi.
template <typename Scalar>
constexpr Scalar angular_from_mhz(Scalar frequency_mhz) {
    return Scalar(two_pi) * Scalar(1e6) * frequency_mhz;
}

template <typename Scalar>
constexpr Scalar mhz_from_angular(Scalar omega) {
    return omega / (Scalar(two_pi) * Scalar(1e6));
}

}  // namespace oponet
