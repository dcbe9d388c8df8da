#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbcom/constants.hpp"

namespace rbcom {

// Four-level gain medium (defaults: Nd:YAG pumped at 808 nm, lasing at 1064 nm).
struct MediumParams {
    double sigma = 2.8e-23;       // stimulated emission cross section, m^2
    double tau_f = 230e-6;        // upper-level fluorescence lifetime, s
    double eta_pump = 0.65;       // pump absorption/quantum efficiency
    double cross_section_Ab = 7.854e-7; // beam cross section, m^2 (1 mm dia.)
    double length_l = 0.075;      // gain medium length, m
    double f_carrier = 282e12;    // lasing frequency, Hz
    double f_pump = 371e12;       // pump frequency, Hz
    double alpha0 = 0.0;          // internal loss coefficient, 1/m
};

// Cavity geometry and loss elements between transmitter and retroreflector.
struct CavityParams {
    double r1 = 1.0;              // transmitter reflector amplitude reflectivity
    double r2 = 1.0;              // receiver retroreflector amplitude reflectivity
    double r_s = 0.1;             // splitter amplitude reflectivity (to detector)
    double eta_diff = 0.949;      // diffraction transmission per one-way pass
    double alpha_air = 0.0;       // atmospheric attenuation, 1/m
    double distance_d = 5.0;      // transmitter-receiver separation, m
    double tau_p = 5.0 / kLightSpeedV;   // one-way propagation delay, s
    double tau_a = 0.1 / kLightSpeedV;   // internal transmitter delay, s
};

// Amplitude modulation drive m*x(t)*cos(2*pi*f_offset*t) + p and the
// ideal optical band-pass filter riding on the carrier.
struct ModulationParams {
    double depth_m = 0.1;         // modulation depth
    double bias_p = 0.9;          // DC operating point (carrier transmission)
    double f_offset = 20e9;       // local oscillation frequency, Hz
    double bandwidth_Bx = 5e9;    // information bandwidth, Hz
    double obpf_bandwidth_Bf = 10e9; // OBPF full bandwidth, Hz
    double mean_sq_x = 0.3;       // <x^2> of the normalized source
};

struct DetectorParams {
    double responsivity_rho = 0.6;   // A/W
    double detect_efficiency = 1.0;  // fraction of beam energy reaching the PD
    double load_R_L = 1e4;           // ohm
    double temperature_T = 298.0;    // K
    double background_current_Ibk = 5.1e-3; // A
    double pd_area = 1e-4;           // m^2
};

struct PumpParams {
    double power_Pin = 30.0;      // W
};

struct SystemConfig {
    PhysicalConstants constants;
    MediumParams medium;
    CavityParams cavity;
    ModulationParams modulation;
    DetectorParams detector;
    PumpParams pump;

    // Nominal operating point: every default above already encodes it.
    static SystemConfig baseline() { return SystemConfig{}; }
};

struct Violation {
    std::string field;      // offending field (or field pair)
    std::string constraint; // violated constraint, e.g. "bias_p > depth_m"
};

struct ValidationResult;

// Proof token that a SystemConfig passed validate(); modules that assume a
// physical configuration take this instead of the raw struct.
class ValidatedConfig {
  public:
    const SystemConfig& get() const { return cfg_; }
    const MediumParams& medium() const { return cfg_.medium; }
    const CavityParams& cavity() const { return cfg_.cavity; }
    const ModulationParams& modulation() const { return cfg_.modulation; }
    const DetectorParams& detector() const { return cfg_.detector; }
    const PumpParams& pump() const { return cfg_.pump; }
    const PhysicalConstants& constants() const { return cfg_.constants; }

  private:
    friend ValidationResult validate(const SystemConfig&);
    explicit ValidatedConfig(SystemConfig cfg) : cfg_(std::move(cfg)) {}
    SystemConfig cfg_;
};

struct ValidationResult {
    std::optional<ValidatedConfig> validated; // engaged iff violations empty
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    // Throws std::logic_error when !ok().
    const ValidatedConfig& config() const;
};

// Checks every physical-range and cross-field constraint; returns the complete
// list of violations (never just the first).
ValidationResult validate(const SystemConfig& cfg);

// One-way field transmission eta_d = eta_diff * exp(-alpha*d/2).
// (alpha is an intensity attenuation coefficient, hence the /2 on amplitude.)
template <typename T>
T transmission_coefficient(T eta_diff, T alpha, T distance) {
    return eta_diff * std::exp(-alpha * distance / T(2));
}

inline double transmission_coefficient(const CavityParams& c) {
    return transmission_coefficient(c.eta_diff, c.alpha_air, c.distance_d);
}

// Splitter pass-through amplitude t_s = sqrt(1 - r_s^2).
template <typename T>
T splitter_transmission(T r_s) {
    return std::sqrt(T(1) - r_s * r_s);
}

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Key/value config file I/O. Unknown sections or keys and malformed numbers
// are hard errors; keys omitted from the file keep their baseline defaults,
// except tau_p, tau_a and bias_p which are re-derived from distance_d /
// depth_m when not given explicitly.
SystemConfig load_config(const std::string& path);
SystemConfig parse_config(const std::string& text, const std::string& origin = "<string>");
std::string serialize_config(const SystemConfig& cfg);
void save_config(const SystemConfig& cfg, const std::string& path);

} // namespace rbcom
