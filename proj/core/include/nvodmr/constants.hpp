#pragma once

#include <numbers>

// SI units throughout: J, T, Hz, s, m, W, K.
namespace nvodmr::constants {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double kPlanck = 6.62607015e-34;          // J s
inline constexpr double kHbar = kPlanck / (2.0 * kPi);     // J s
inline constexpr double kBohrMagneton = 9.2740100783e-24;  // J/T
inline constexpr double kBoltzmann = 1.380649e-23;         // J/K
inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // J/eV

inline constexpr double kGFactor = 2.0028;
inline constexpr double kZfsGround = 2.87e9;   // Hz, T = 0
inline constexpr double kZfsExcited = 1.42e9;  // Hz
inline constexpr double kLaserWavelength = 532e-9;  // m

// Phonon model for D(T).
inline constexpr double kPhononC1 = -54.91e6;  // Hz
inline constexpr double kPhononC2 = -249.6e6;  // Hz
inline constexpr double kPhononDelta1 = 58.73e-3 * kElementaryCharge;  // J
inline constexpr double kPhononDelta2 = 145.5e-3 * kElementaryCharge;  // J

// Zero-field seven-level rates (Hz).
inline constexpr double kRadiativeRate = 63.2e6;  // k41 = k52 = k63
inline constexpr double kRate47 = 10.8e6;
inline constexpr double kRate57 = 60.7e6;  // = k67
inline constexpr double kRate71 = 0.8e6;
inline constexpr double kRate72 = 0.4e6;  // = k73

// Linewidth model.
inline constexpr double kGammaPInf = 5e6;        // Hz, polarization rate at saturation
inline constexpr double kGammaCInf = 63.2e6;     // Hz, identified with k_r
inline constexpr double kSaturationPumpRate = 1.9e7;  // Hz, W_p^sat

// Optical excitation shared across the four crystal axes.
inline constexpr double kPumpingDirectionFactor = 4.0;

}  // namespace nvodmr::constants
