#pragma once

#include <cmath>

#include "rbcom/config.hpp"
#include "rbcom/steady_state.hpp"

namespace rbcom {

// Detector conversion constant k = eta_det * rho * A_b / Z0 mapping squared
// field amplitude to photocurrent.
template <typename T>
T detector_k(T detect_efficiency, T responsivity, T cross_section, T z0) {
    return detect_efficiency * responsivity * cross_section / z0;
}

// Mean photocurrent I_sig = k * r_s^2 * eta_d^2 * A_c^2 * (p^2 + m^2*<x^2>/2).
template <typename T>
T mean_photocurrent(T k, T r_s, T eta_d, T ac, T bias_p, T depth_m, T mean_sq_x) {
    T front = k * r_s * r_s * eta_d * eta_d * ac * ac;
    return front * (bias_p * bias_p + depth_m * depth_m * mean_sq_x / T(2));
}

// Demodulated electrical signal power <i_s^2> = k^2 r_s^4 eta_d^4 A_c^4 p^2 m^2 <x^2>.
template <typename T>
T signal_power(T k, T r_s, T eta_d, T ac, T bias_p, T depth_m, T mean_sq_x) {
    T front = k * r_s * r_s * eta_d * eta_d * ac * ac;
    return front * front * bias_p * bias_p * depth_m * depth_m * mean_sq_x;
}

// Shot noise 2q(I_sig + I_bk) * noise_bandwidth. The coherent receiver
// integrates over 2*B_x, the LED baseline over B_x; the caller passes the
// bandwidth its detection scheme sees.
template <typename T>
T shot_noise(T i_sig, T i_bk, T noise_bandwidth, T q) {
    return T(2) * q * (i_sig + i_bk) * noise_bandwidth;
}

// Thermal (Johnson) noise 4KT/R_L * noise_bandwidth.
template <typename T>
T thermal_noise(T temperature, T load_r, T noise_bandwidth, T boltzmann) {
    return T(4) * boltzmann * temperature / load_r * noise_bandwidth;
}

template <typename T>
T capacity_bits(T snr) {
    return std::log2(T(1) + snr);
}

struct NoiseBudget {
    double signal_power = 0;  // A^2
    double shot_power = 0;    // A^2
    double thermal_power = 0; // A^2
    double mean_current = 0;  // A
    // snr = signal_power / ((shot_power + thermal_power) / noise_divisor);
    // divisor 4 for the coherent chain, 1 for direct detection.
    double noise_divisor = 4;
    double snr = 0;
    double capacity = 0;      // bit/s/Hz
    bool lasing = false;
};

// Full electrical budget of the resonant link at its saturated steady state.
// Below threshold everything signal-related is zero (capacity = 0).
NoiseBudget rbcom_budget(const ValidatedConfig& cfg);
NoiseBudget rbcom_budget(const ValidatedConfig& cfg, const SteadyStateResult& ss);

// LED comparison baseline (Lambertian emitter + lens/filter front end).
struct LedParams {
    double power_Pt = 30.0;       // W
    double area_Ar = 1e-4;        // receiver collection area, m^2
    double lens_n = 1.5;          // concentrator refractive index
    double filter_Ts = 1.0;       // optical filter transmission
    double half_angle = 70.0 * M_PI / 180.0; // emitter half-power angle, rad
    double fov = 60.0 * M_PI / 180.0;        // receiver field of view, rad
};

// Lambertian order m = -ln2 / ln(cos(half_angle)).
template <typename T>
T lambertian_order(T half_angle) {
    return -std::log(T(2)) / std::log(std::cos(half_angle));
}

// On-axis received photocurrent
//   I = rho * A_r*(m+1)/(2*pi*d^2) * n^2/sin^2(fov) * Ts * exp(-alpha*d) * Pt.
double led_photocurrent(const LedParams& led, const DetectorParams& det,
                        double alpha, double distance);

// Direct-detection budget: snr = I^2 / (2q(I+I_bk)B_x + 4KT B_x/R_L).
NoiseBudget led_budget(const ValidatedConfig& cfg, const LedParams& led = {});

} // namespace rbcom
