#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>

namespace rbcom {

// Discrete-time model of the raw (unshifted, unfiltered) retroreflective
// loop.  The transmitter keeps amplifying whatever comes back, so the
// carrier amplitude and the received amplitude become a coupled delay-line
// recursion instead of constants.
struct EchoChannelConfig {
    double tau_p = 0.0;          // transmitter-receiver single-pass time, s
    double tau_a = 0.0;          // intra-transmitter single-pass time, s
    double sample_interval = 0.0;
    double r1 = 1.0;
    double r2 = 1.0;
    double eta_d = 0.949;
    double eta_m = 0.9;          // modulator insertion loss, diagnostics only
    double duration = 0.0;
    bool noise_seed = false;     // randomize the pre-start delay line
    std::uint64_t rng_seed = 0;
};

// All series share one grid.  The delays are snapped to whole samples and
// the residuals are kept so callers can see how much the grid moved them.
struct EchoTrace {
    double sample_interval = 0.0;
    Eigen::Index delay_p = 0;
    Eigen::Index delay_a = 0;
    double tau_p_error = 0.0;
    double tau_a_error = 0.0;
    Eigen::VectorXd t;
    Eigen::VectorXd x;
    Eigen::VectorXd g;
    Eigen::VectorXd ac;
    Eigen::VectorXd ye;
};

// Runs the coupled recursion
//   ac[k] = r1*r2*eta_d * ye[k-Dp-2Da] * x[k-2Da] * g[k-2Da] * g[k]
//   ye[k] = eta_d * x[k-Dp] * ac[k-Dp]
// The loop is assumed to have been circulating before the record starts:
// x and g hold their first value for t < 0 and the ye delay line is filled
// with seed_amplitude (or, with cfg.noise_seed, a reproducible random
// fill).  Aborts if |ye| outruns 1e6 * seed_amplitude.
EchoTrace simulate_echo(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                        const EchoChannelConfig& cfg, double seed_amplitude);
EchoTrace simulate_echo(const Eigen::VectorXd& x, double g,
                        const EchoChannelConfig& cfg, double seed_amplitude);

// Loop gain over one full round trip.  The first form is the raw echo loop
// (modulator traversed twice); the second is the shifted-and-filtered link
// where the splitter and the carrier bias set the returned fraction.
double round_trip_coefficient(double r1, double r2, double eta_m, double eta_d,
                              double g);
double round_trip_coefficient(double r1, double r2, double t_s, double p,
                              double eta_d, double g);

// 1 - |corr(ye[k], x[k - delay_p])| over the settled part of the trace.
// Near zero means the loop still carries the source cleanly; near one means
// the echo products have swamped it.
double interference_metric(const EchoTrace& trace, const Eigen::VectorXd& x);

void write_echo_csv(std::ostream& os, const EchoTrace& trace);

} // namespace rbcom
