#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbcom/config.hpp"

namespace rbcom {

// Combined mirror/splitter/modulator/propagation loss folded into a single
// equivalent output-coupler reflectivity R = t_s^2 * p^4 * eta_d^4.
template <typename T>
T equivalent_reflectivity(T t_s, T bias_p, T eta_d) {
    T p2 = bias_p * bias_p;
    T e2 = eta_d * eta_d;
    return t_s * t_s * p2 * p2 * e2 * e2;
}

// I_s = h*f_c / (sigma * tau_f): intensity halving the unsaturated gain.
template <typename T>
T saturation_intensity(T f_carrier, T sigma, T tau_f, T planck_h) {
    return planck_h * f_carrier / (sigma * tau_f);
}

// Unsaturated gain-length product g0*l = eta_pump*P_in / (I_s * A_b);
// the medium length cancels against the pump volume.
template <typename T>
T small_signal_gain_length(T eta_pump, T power_in, T sat_intensity, T cross_section) {
    return eta_pump * power_in / (sat_intensity * cross_section);
}

struct SteadyStateResult {
    double ac = 0;               // steady carrier amplitude, V/m
    double ic = 0;               // circulating intensity, W/m^2
    double reflectivity_R = 0;   // equivalent reflectivity
    double g0_l = 0;             // small-signal gain-length product
    double sat_intensity = 0;    // W/m^2
    bool lasing = false;
    std::vector<std::string> warnings;
};

// Steady-state circulating amplitude of the saturated cavity:
//   I_c = I_s * [(g0 - alpha0)*l + ln sqrt(R)]
//         / [(1 - R) * (1 - alpha0*l / ln sqrt(R))],   A_c = sqrt(Z0 * I_c).
// Below threshold (bracket <= 0) the cavity does not oscillate: ac = ic = 0.
SteadyStateResult carrier_amplitude(const ValidatedConfig& cfg);

enum class SweepVariable { depth_m, r_s, eta_d, distance_d, power_Pin };

const char* to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& name);

// Writes `value` into a copy of cfg. depth_m drags bias_p = 1 - depth_m along
// (the operating point rides the modulation depth); eta_d overwrites eta_diff
// and zeroes alpha_air so the one-way transmission equals `value` exactly.
SystemConfig apply_sweep_variable(const SystemConfig& cfg, SweepVariable var,
                                  double value);

// Lasing-condition bracket (g0 - alpha0)*l + ln sqrt(R); positive iff lasing.
double threshold_bracket(const SystemConfig& cfg);

struct ThresholdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bisects threshold_bracket over `var` to 1e-9 absolute. Throws
// ThresholdError when the bracket does not change sign over the search range.
double find_threshold(const ValidatedConfig& cfg, SweepVariable var);

} // namespace rbcom
