#pragma once

#include <numbers>

namespace csl {

// CODATA 2018. m0 is the proton mass.
inline constexpr double kNucleonMass = 1.67262192e-27;   // kg
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kBoltzmann = 1.380649e-23;       // J/K

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrtPi = 1.7724538509055160273;

// 1 aN^2/Hz
inline constexpr double kAttoNewtonSquared = 1e-36;

struct PhysicalConstants {
    double m0 = kNucleonMass;
    double hbar = kHbar;
    double k_B = kBoltzmann;
};

}  // namespace csl
