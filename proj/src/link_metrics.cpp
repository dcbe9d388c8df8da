#include "rbcom/link_metrics.hpp"

namespace rbcom {

NoiseBudget rbcom_budget(const ValidatedConfig& cfg) {
    return rbcom_budget(cfg, carrier_amplitude(cfg));
}

NoiseBudget rbcom_budget(const ValidatedConfig& cfg, const SteadyStateResult& ss) {
    const auto& de = cfg.detector();
    const auto& mo = cfg.modulation();
    const auto& ca = cfg.cavity();

    NoiseBudget b;
    b.noise_divisor = 4; // coherent demodulation recovers 1/4 of the band noise
    b.lasing = ss.lasing;

    double k = detector_k(de.detect_efficiency, de.responsivity_rho,
                          cfg.medium().cross_section_Ab,
                          cfg.constants().free_space_impedance_Z0);
    double eta_d = transmission_coefficient(ca);
    double nbw = 2.0 * mo.bandwidth_Bx;

    b.mean_current = mean_photocurrent(k, ca.r_s, eta_d, ss.ac, mo.bias_p,
                                       mo.depth_m, mo.mean_sq_x);
    b.signal_power = signal_power(k, ca.r_s, eta_d, ss.ac, mo.bias_p, mo.depth_m,
                                  mo.mean_sq_x);
    b.shot_power = shot_noise(b.mean_current, de.background_current_Ibk, nbw,
                              cfg.constants().electron_charge_q);
    b.thermal_power = thermal_noise(de.temperature_T, de.load_R_L, nbw,
                                    cfg.constants().boltzmann_K);
    b.snr = b.signal_power / ((b.shot_power + b.thermal_power) / b.noise_divisor);
    b.capacity = ss.lasing ? capacity_bits(b.snr) : 0.0;
    return b;
}

double led_photocurrent(const LedParams& led, const DetectorParams& det,
                        double alpha, double distance) {
    double m = lambertian_order(led.half_angle);
    double geom = led.area_Ar * (m + 1.0) / (2.0 * M_PI * distance * distance);
    double conc = led.lens_n * led.lens_n / (std::sin(led.fov) * std::sin(led.fov));
    return det.responsivity_rho * geom * conc * led.filter_Ts *
           std::exp(-alpha * distance) * led.power_Pt;
}

NoiseBudget led_budget(const ValidatedConfig& cfg, const LedParams& led) {
    const auto& de = cfg.detector();
    const auto& mo = cfg.modulation();
    const auto& ca = cfg.cavity();

    NoiseBudget b;
    b.noise_divisor = 1; // direct detection: full band noise applies
    b.lasing = false;

    double i = led_photocurrent(led, de, ca.alpha_air, ca.distance_d);
    b.mean_current = i;
    b.signal_power = i * i;
    b.shot_power = shot_noise(i, de.background_current_Ibk, mo.bandwidth_Bx,
                              cfg.constants().electron_charge_q);
    b.thermal_power = thermal_noise(de.temperature_T, de.load_R_L, mo.bandwidth_Bx,
                                    cfg.constants().boltzmann_K);
    b.snr = b.signal_power / (b.shot_power + b.thermal_power);
    b.capacity = capacity_bits(b.snr);
    return b;
}

} // namespace rbcom
