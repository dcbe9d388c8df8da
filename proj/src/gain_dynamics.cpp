#include "rbcom/gain_dynamics.hpp"

#include <algorithm>

namespace rbcom {

GainState rate_derivatives(const GainState& s, const RateEquationParams& p) {
    double stim = s.n2 * s.phi * p.sigma * p.v;
    return {stim * -1.0 - s.n2 / p.tau_f + p.pump_R,
            stim - s.phi / p.tau_c + p.spont_S};
}

double steady_state_gain(const CavityParams& cavity, double bias_p, double eta_d) {
    double t_s = splitter_transmission(cavity.r_s);
    return 1.0 / (bias_p * eta_d * std::sqrt(cavity.r1 * cavity.r2 * t_s));
}

double pump_rate_from_power(const MediumParams& medium, double power_in,
                            double planck_h) {
    return medium.eta_pump * power_in /
           (planck_h * medium.f_pump * medium.cross_section_Ab * medium.length_l);
}

double loop_survival(const CavityParams& cavity, double bias_p, double eta_d) {
    double t_s = splitter_transmission(cavity.r_s);
    return cavity.r1 * cavity.r2 * t_s * bias_p * bias_p * eta_d * eta_d;
}

double photon_lifetime_from_losses(const CavityParams& cavity, double bias_p,
                                   double eta_d, double round_trip_time) {
    double s = loop_survival(cavity, bias_p, eta_d);
    if (s <= 0 || s >= 1)
        throw std::domain_error("loop survival must lie in (0,1) for a finite "
                                "photon lifetime");
    return round_trip_time / (-std::log(s * s));
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

GainState axpy(const GainState& y, double h, double k1n, double k1p) {
    return {y.n2 + h * k1n, y.phi + h * k1p};
}

bool nonneg(const GainState& s) { return s.n2 >= 0 && s.phi >= 0; }

} // namespace

IntegrationResult integrate_to_steady(const GainState& init,
                                      const RateEquationParams& p,
                                      const IntegrationOptions& opts,
                                      const StepObserver& observer) {
    if (p.tau_c <= 0 || p.tau_f <= 0)
        throw IntegrationError("tau_c and tau_f must be positive");
    double max_time = opts.max_time > 0 ? opts.max_time : 100 * p.tau_f;
    double max_step = opts.max_step > 0 ? opts.max_step : p.tau_f / 20;

    // characteristic magnitudes, for error weighting near the cold start;
    // floored so a dead pump (R_p = 0) still has a well-defined scale
    double n2_ref = std::max(p.pump_R * p.tau_f, 1.0);
    double phi_ref = std::max(p.pump_R * p.tau_c, 1.0);

    IntegrationResult res;
    res.state = init;
    double h = std::min(p.tau_c / 10, max_step);
    if (observer) observer(0.0, res.state);

    while (res.t < max_time && res.steps < opts.max_steps) {
        h = std::min({h, max_step, max_time - res.t});
        const GainState& y = res.state;
        GainState k1 = rate_derivatives(y, p);
        GainState s2 = axpy(y, h * a21, k1.n2, k1.phi);
        GainState k2 = rate_derivatives(s2, p);
        GainState s3 = {y.n2 + h * (a31 * k1.n2 + a32 * k2.n2),
                        y.phi + h * (a31 * k1.phi + a32 * k2.phi)};
        GainState k3 = rate_derivatives(s3, p);
        GainState s4 = {y.n2 + h * (a41 * k1.n2 + a42 * k2.n2 + a43 * k3.n2),
                        y.phi + h * (a41 * k1.phi + a42 * k2.phi + a43 * k3.phi)};
        GainState k4 = rate_derivatives(s4, p);
        GainState s5 = {
            y.n2 + h * (a51 * k1.n2 + a52 * k2.n2 + a53 * k3.n2 + a54 * k4.n2),
            y.phi + h * (a51 * k1.phi + a52 * k2.phi + a53 * k3.phi + a54 * k4.phi)};
        GainState k5 = rate_derivatives(s5, p);
        GainState s6 = {y.n2 + h * (a61 * k1.n2 + a62 * k2.n2 + a63 * k3.n2 +
                                    a64 * k4.n2 + a65 * k5.n2),
                        y.phi + h * (a61 * k1.phi + a62 * k2.phi + a63 * k3.phi +
                                     a64 * k4.phi + a65 * k5.phi)};
        GainState k6 = rate_derivatives(s6, p);
        GainState y5 = {
            y.n2 + h * (b1 * k1.n2 + b3 * k3.n2 + b4 * k4.n2 + b5 * k5.n2 + b6 * k6.n2),
            y.phi +
                h * (b1 * k1.phi + b3 * k3.phi + b4 * k4.phi + b5 * k5.phi + b6 * k6.phi)};
        GainState k7 = rate_derivatives(y5, p);
        GainState y4 = {y.n2 + h * (e1 * k1.n2 + e3 * k3.n2 + e4 * k4.n2 +
                                    e5 * k5.n2 + e6 * k6.n2 + e7 * k7.n2),
                        y.phi + h * (e1 * k1.phi + e3 * k3.phi + e4 * k4.phi +
                                     e5 * k5.phi + e6 * k6.phi + e7 * k7.phi)};
        ++res.steps;

        bool stage_ok = nonneg(s2) && nonneg(s3) && nonneg(s4) && nonneg(s5) &&
                        nonneg(s6) && nonneg(y5);
        double wn = opts.ode_rtol * std::max({std::abs(y.n2), std::abs(y5.n2),
                                              1e-9 * n2_ref});
        double wp = opts.ode_rtol * std::max({std::abs(y.phi), std::abs(y5.phi),
                                              1e-9 * phi_ref});
        double errn = std::abs(y5.n2 - y4.n2) / wn;
        double errp = std::abs(y5.phi - y4.phi) / wp;
        double err = std::max(errn, errp);

        if (!stage_ok) {
            h *= 0.5;
            if (h < 1e-30) throw IntegrationError("step size collapsed");
            continue;
        }
        if (err > 1.0) {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
            if (h < 1e-30) throw IntegrationError("step size collapsed");
            continue;
        }

        res.t += h;
        res.state = y5;
        if (observer) observer(res.t, res.state);
        h *= std::clamp(err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0, 0.2, 5.0);

        {
            GainState d = k7; // derivative at the accepted state
            double rn = std::abs(d.n2) * p.tau_f /
                        std::max(res.state.n2, 1e-12 * n2_ref);
            double rp = std::abs(d.phi) * p.tau_c /
                        std::max(res.state.phi, 1e-12 * phi_ref);
            if (rn < opts.rel_tol && rp < opts.rel_tol) {
                res.converged = true;
                return res;
            }
        }
    }
    return res;
}

RateEquationParams rate_params_from_config(const ValidatedConfig& cfg) {
    RateEquationParams p;
    p.sigma = cfg.medium().sigma;
    p.v = cfg.constants().light_speed_v;
    p.tau_f = cfg.medium().tau_f;
    double eta_d = transmission_coefficient(cfg.cavity());
    p.tau_c = photon_lifetime_from_losses(
        cfg.cavity(), cfg.modulation().bias_p, eta_d,
        medium_round_trip_time(cfg.medium(), p.v));
    p.pump_R = pump_rate_from_power(cfg.medium(), cfg.pump().power_Pin,
                                    cfg.constants().planck_h);
    p.spont_S = default_spont_seed(p.pump_R);
    return p;
}

} // namespace rbcom
