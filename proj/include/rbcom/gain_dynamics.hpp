#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "rbcom/config.hpp"

namespace rbcom {

struct GainState {
    double n2 = 0;  // upper-level population density, 1/m^3
    double phi = 0; // intracavity photon density, 1/m^3
};

// Coefficients of the four-level rate equations
//   dn2/dt = -n2*phi*sigma*v - n2/tau_f + pump_R
//   dphi/dt =  n2*phi*sigma*v - phi/tau_c + spont_S
struct RateEquationParams {
    double sigma = 0;   // m^2
    double v = kLightSpeedV;
    double tau_f = 0;   // s
    double tau_c = 0;   // s
    double pump_R = 0;  // 1/(m^3 s)
    double spont_S = 0; // 1/(m^3 s)
};

GainState rate_derivatives(const GainState& s, const RateEquationParams& p);

// Single-pass amplitude gain of a medium holding inversion n2 over length l.
template <typename T>
T gain_from_n2(T n2, T sigma, T length_l) {
    return std::sqrt(std::exp(n2 * sigma * length_l));
}

inline double gain_from_n2(double n2, const MediumParams& m) {
    return gain_from_n2(n2, m.sigma, m.length_l);
}

// Gain that balances the loop losses exactly: G = 1/(p*eta_d*sqrt(r1*r2*t_s)).
double steady_state_gain(const CavityParams& cavity, double bias_p, double eta_d);

// Pump transitions per unit volume per second: eta_pump*P_in/(h*f_pump*A_b*l).
double pump_rate_from_power(const MediumParams& medium, double power_in,
                            double planck_h);

// Round-trip amplitude survival of the passive loop (everything except gain):
// s = r1*r2*t_s*p^2*eta_d^2.
double loop_survival(const CavityParams& cavity, double bias_p, double eta_d);

// Cavity photon lifetime from the round-trip intensity survival s^2:
// tau_c = round_trip_time / (-ln s^2), so that exp(-t/tau_c) reproduces the
// per-round-trip decay.
//
// The lumped rate equations tick stimulated emission at rate n2*sigma*v as if
// the photon never left the medium, so the round_trip_time that makes the ODE
// steady state agree with steady_state_gain() is the in-medium round trip
// 2*l/v (see medium_round_trip_time), not the geometric cavity round trip.
double photon_lifetime_from_losses(const CavityParams& cavity, double bias_p,
                                   double eta_d, double round_trip_time);

inline double medium_round_trip_time(const MediumParams& m, double v) {
    return 2.0 * m.length_l / v;
}

// Spontaneous seed small enough (S*tau_c ~ 1e-10 * phi_steady) to start the
// oscillation from phi = 0 without perturbing the converged gain.
inline double default_spont_seed(double pump_R) { return 1e-10 * pump_R; }

struct IntegrationOptions {
    double rel_tol = 1e-6;    // stationarity threshold on both derivatives
    double ode_rtol = 1e-9;   // per-step embedded error tolerance
    double max_time = 0;      // 0 -> 100*tau_f
    double max_step = 0;      // 0 -> tau_f/20
    long max_steps = 50'000'000;
};

struct IntegrationResult {
    GainState state;
    double t = 0;
    long steps = 0;
    bool converged = false;
};

// Observer is called after every accepted step (and once at t = 0).
using StepObserver = std::function<void(double t, const GainState&)>;

struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive Dormand-Prince RK5(4) with step rejection whenever a stage or the
// candidate state would push n2 or phi negative. Integrates until both
// |dn2/dt|*tau_f/n2 and |dphi/dt|*tau_c/phi drop below rel_tol.
IntegrationResult integrate_to_steady(const GainState& init,
                                      const RateEquationParams& params,
                                      const IntegrationOptions& opts = {},
                                      const StepObserver& observer = nullptr);

// Convenience bundle: rate-equation coefficients implied by a validated
// config (pump rate, in-medium photon lifetime, default seed).
RateEquationParams rate_params_from_config(const ValidatedConfig& cfg);

} // namespace rbcom
