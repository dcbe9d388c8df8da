#include "rbcom/echo_channel.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "rbcom/csv.hpp"
#include "rbcom/signal_chain.hpp"

namespace rbcom {

namespace {

Eigen::Index snap_delay(double tau, double dt, const char* name) {
    auto d = static_cast<Eigen::Index>(std::llround(tau / dt));
    if (d < 1)
        throw std::invalid_argument(std::string(name) +
                                    " must span at least one sample");
    return d;
}

} // namespace

EchoTrace simulate_echo(const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                        const EchoChannelConfig& cfg, double seed_amplitude) {
    if (!(cfg.sample_interval > 0.0))
        throw std::invalid_argument("sample_interval must be positive");
    if (!(cfg.duration > 0.0))
        throw std::invalid_argument("duration must be positive");
    if (!(cfg.r1 >= 0.0 && cfg.r1 <= 1.0 && cfg.r2 >= 0.0 && cfg.r2 <= 1.0))
        throw std::invalid_argument("reflectivities must lie in [0, 1]");
    if (!(cfg.eta_d > 0.0 && cfg.eta_d <= 1.0))
        throw std::invalid_argument("eta_d must lie in (0, 1]");
    if (!(seed_amplitude > 0.0))
        throw std::invalid_argument("seed_amplitude must be positive");

    const double dt = cfg.sample_interval;
    const Eigen::Index dp = snap_delay(cfg.tau_p, dt, "tau_p");
    const Eigen::Index da = snap_delay(cfg.tau_a, dt, "tau_a");
    const auto n = static_cast<Eigen::Index>(std::llround(cfg.duration / dt));
    const Eigen::Index round_trip = 2 * dp + 2 * da;
    if (n < 10 * round_trip)
        throw std::invalid_argument("duration must cover at least 10 round trips");
    if (x.size() != n)
        throw std::invalid_argument("source record does not match the configured grid");
    if (g.size() != n)
        throw std::invalid_argument("gain record does not match the configured grid");
    if (x.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
        throw std::invalid_argument("|x| must not exceed 1");
    if (g.minCoeff() <= 0.0)
        throw std::invalid_argument("gain must be positive");

    // pre-start content of the ye delay line: what the loop amplifies first
    const Eigen::Index depth = dp + 2 * da;
    Eigen::VectorXd history =
        Eigen::VectorXd::Constant(round_trip, seed_amplitude);
    if (cfg.noise_seed) {
        std::mt19937_64 rng(cfg.rng_seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (Eigen::Index i = 0; i < round_trip; ++i)
            history[i] = seed_amplitude * std::fabs(gauss(rng));
    }

    EchoTrace trace;
    trace.sample_interval = dt;
    trace.delay_p = dp;
    trace.delay_a = da;
    trace.tau_p_error = cfg.tau_p - static_cast<double>(dp) * dt;
    trace.tau_a_error = cfg.tau_a - static_cast<double>(da) * dt;
    trace.t = dt * Eigen::VectorXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    trace.x = x;
    trace.g = g;
    trace.ac = Eigen::VectorXd::Zero(n);
    trace.ye = Eigen::VectorXd::Zero(n);

    const double loop_r = cfg.r1 * cfg.r2 * cfg.eta_d;
    const double guard = 1e6 * seed_amplitude;
    auto x_at = [&](Eigen::Index k) { return x[std::max<Eigen::Index>(k, 0)]; };
    auto g_at = [&](Eigen::Index k) { return g[std::max<Eigen::Index>(k, 0)]; };
    auto ye_at = [&](Eigen::Index k) {
        return k >= 0 ? trace.ye[k] : history[k + round_trip];
    };
    // Eq-form for the cavity amplitude, valid at negative times through the
    // pre-start extensions
    auto ac_at = [&](Eigen::Index k) {
        if (k >= 0) return trace.ac[k];
        return loop_r * ye_at(k - depth) * x_at(k - 2 * da) *
               g_at(k - 2 * da) * g_at(k);
    };
    for (Eigen::Index k = 0; k < n; ++k) {
        trace.ac[k] = loop_r * ye_at(k - depth) * x_at(k - 2 * da) *
                      g_at(k - 2 * da) * g[k];
        trace.ye[k] = cfg.eta_d * x_at(k - dp) * ac_at(k - dp);
        if (std::fabs(trace.ye[k]) > guard)
            throw std::runtime_error("loop gain exceeds unity with modulated signal");
    }
    return trace;
}

EchoTrace simulate_echo(const Eigen::VectorXd& x, double g,
                        const EchoChannelConfig& cfg, double seed_amplitude) {
    return simulate_echo(x, Eigen::VectorXd::Constant(x.size(), g), cfg,
                         seed_amplitude);
}

double round_trip_coefficient(double r1, double r2, double eta_m, double eta_d,
                              double g) {
    return r1 * r2 * eta_m * eta_m * eta_d * eta_d * g * g;
}

double round_trip_coefficient(double r1, double r2, double t_s, double p,
                              double eta_d, double g) {
    return r1 * r2 * t_s * p * p * eta_d * eta_d * g * g;
}

double interference_metric(const EchoTrace& trace, const Eigen::VectorXd& x) {
    if (x.size() != trace.ye.size())
        throw std::invalid_argument("trace and source must share one grid");
    const Eigen::Index start = trace.delay_p + 2 * trace.delay_a;
    const Eigen::Index len = trace.ye.size() - start;
    Eigen::VectorXd ye_win = trace.ye.segment(start, len);
    Eigen::VectorXd x_win = x.segment(start - trace.delay_p, len);
    return 1.0 - std::fabs(pearson_correlation(ye_win, x_win));
}

void write_echo_csv(std::ostream& os, const EchoTrace& trace) {
    os << "t,x,g,ac,ye\n";
    for (Eigen::Index k = 0; k < trace.t.size(); ++k)
        os << format_number(trace.t[k]) << ',' << format_number(trace.x[k])
           << ',' << format_number(trace.g[k]) << ','
           << format_number(trace.ac[k]) << ',' << format_number(trace.ye[k])
           << '\n';
}

} // namespace rbcom
