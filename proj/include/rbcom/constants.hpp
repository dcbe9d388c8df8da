#pragma once

namespace rbcom {

// CODATA 2018 values. These are not user-tunable: config files may restate
// them (so a saved run is self-describing) but a restated value has to match.
struct PhysicalConstants {
    double planck_h = 6.62607015e-34;           // J*s
    double electron_charge_q = 1.602176634e-19; // C
    double boltzmann_K = 1.380649e-23;          // J/K
    double free_space_impedance_Z0 = 376.730313668; // ohm
    double light_speed_v = 299792458.0;         // m/s
};

inline constexpr double kPlanckH = 6.62607015e-34;
inline constexpr double kElectronChargeQ = 1.602176634e-19;
inline constexpr double kBoltzmannK = 1.380649e-23;
inline constexpr double kFreeSpaceImpedanceZ0 = 376.730313668;
inline constexpr double kLightSpeedV = 299792458.0;

} // namespace rbcom
