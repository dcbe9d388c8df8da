#include "rbcom/steady_state.hpp"

namespace rbcom {

SteadyStateResult carrier_amplitude(const ValidatedConfig& cfg) {
    const auto& me = cfg.medium();
    const auto& ca = cfg.cavity();
    const auto& mo = cfg.modulation();

    SteadyStateResult res;
    double t_s = splitter_transmission(ca.r_s);
    double eta_d = transmission_coefficient(ca);
    res.reflectivity_R = equivalent_reflectivity(t_s, mo.bias_p, eta_d);
    res.sat_intensity = saturation_intensity(me.f_carrier, me.sigma, me.tau_f,
                                             cfg.constants().planck_h);
    res.g0_l = small_signal_gain_length(me.eta_pump, cfg.pump().power_Pin,
                                        res.sat_intensity, me.cross_section_Ab);

    if (ca.r1 != 1.0 || ca.r2 != 1.0)
        res.warnings.push_back(
            "closed-form carrier amplitude assumes unity retroreflectors "
            "(r1 = r2 = 1); results treat r1/r2 losses as absent");

    if (res.reflectivity_R >= 1.0 - 1e-15)
        throw std::domain_error("equivalent reflectivity R >= 1: lossless loop "
                                "has no saturated steady state");

    double ln_sqrt_R = 0.5 * std::log(res.reflectivity_R);
    double bracket = res.g0_l - me.alpha0 * me.length_l + ln_sqrt_R;
    if (bracket <= 0) return res; // below threshold: dark cavity

    double alpha0_corr = 1.0 - me.alpha0 * me.length_l / ln_sqrt_R;
    res.ic = res.sat_intensity * bracket / ((1.0 - res.reflectivity_R) * alpha0_corr);
    res.ac = std::sqrt(cfg.constants().free_space_impedance_Z0 * res.ic);
    res.lasing = true;
    return res;
}

const char* to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::depth_m: return "depth_m";
        case SweepVariable::r_s: return "r_s";
        case SweepVariable::eta_d: return "eta_d";
        case SweepVariable::distance_d: return "distance_d";
        case SweepVariable::power_Pin: return "power_Pin";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
    for (auto v : {SweepVariable::depth_m, SweepVariable::r_s, SweepVariable::eta_d,
                   SweepVariable::distance_d, SweepVariable::power_Pin})
        if (name == to_string(v)) return v;
    throw std::invalid_argument("unknown sweep variable '" + name + "'");
}

SystemConfig apply_sweep_variable(const SystemConfig& cfg, SweepVariable var,
                                  double value) {
    SystemConfig out = cfg;
    switch (var) {
        case SweepVariable::depth_m:
            out.modulation.depth_m = value;
            out.modulation.bias_p = 1.0 - value;
            break;
        case SweepVariable::r_s: out.cavity.r_s = value; break;
        case SweepVariable::eta_d:
            out.cavity.eta_diff = value;
            out.cavity.alpha_air = 0.0;
            break;
        case SweepVariable::distance_d: out.cavity.distance_d = value; break;
        case SweepVariable::power_Pin: out.pump.power_Pin = value; break;
    }
    return out;
}

double threshold_bracket(const SystemConfig& cfg) {
    double t_s = splitter_transmission(cfg.cavity.r_s);
    double eta_d = transmission_coefficient(cfg.cavity);
    double R = equivalent_reflectivity(t_s, cfg.modulation.bias_p, eta_d);
    double i_s = saturation_intensity(cfg.medium.f_carrier, cfg.medium.sigma,
                                      cfg.medium.tau_f, cfg.constants.planck_h);
    double g0_l = small_signal_gain_length(cfg.medium.eta_pump, cfg.pump.power_Pin,
                                           i_s, cfg.medium.cross_section_Ab);
    return g0_l - cfg.medium.alpha0 * cfg.medium.length_l + 0.5 * std::log(R);
}

namespace {

struct Range {
    double lo, hi;
};

Range search_range(SweepVariable var) {
    switch (var) {
        case SweepVariable::depth_m: return {0.0, 1.0 - 1e-12};
        case SweepVariable::r_s: return {0.0, 0.999};
        case SweepVariable::eta_d: return {1e-9, 1.0};
        case SweepVariable::distance_d: return {1e-9, 1e7};
        case SweepVariable::power_Pin: return {0.0, 1e6};
    }
    return {0.0, 1.0};
}

} // namespace

double find_threshold(const ValidatedConfig& cfg, SweepVariable var) {
    const SystemConfig& base = cfg.get();
    auto f = [&](double x) {
        return threshold_bracket(apply_sweep_variable(base, var, x));
    };
    auto [lo, hi] = search_range(var);
    double flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw ThresholdError(std::string("no sign change in range for ") +
                             to_string(var));
    for (int i = 0; i < 200 && hi - lo > 1e-9; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace rbcom
