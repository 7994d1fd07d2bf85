#pragma once

#include <numbers>

// External quantities are linear frequencies (omega / 2pi) in GHz and times
// in ns. Everything inside a Hamiltonian is angular frequency in rad/ns.
namespace zzlab {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kMHz = 1e-3;  // MHz expressed in GHz
inline constexpr double kKHz = 1e-6;  // kHz expressed in GHz

constexpr double to_angular(double ghz) noexcept { return kTwoPi * ghz; }
constexpr double to_linear(double rad_per_ns) noexcept { return rad_per_ns / kTwoPi; }

}  // namespace zzlab
