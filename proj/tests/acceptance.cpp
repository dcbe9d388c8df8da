// End-to-end acceptance run over the shipped claims. Each criterion prints a
// single verdict line carrying its measured values and the pinned tolerances;
// the exit status is the number of failed criteria so CI flags any regression.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rbcom/config.hpp"
#include "rbcom/echo_channel.hpp"
#include "rbcom/gain_dynamics.hpp"
#include "rbcom/link_metrics.hpp"
#include "rbcom/signal_chain.hpp"
#include "rbcom/spectral.hpp"
#include "rbcom/steady_state.hpp"
#include "rbcom/sweep.hpp"

using namespace rbcom;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

std::string strf(const char* format, ...) {
    char buf[1024];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const char* yn(bool b) { return b ? "yes" : "no"; }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// --- tiny subprocess harness for the installed CLI ------------------------

struct CliRun {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string(RBCOM_CLI_PATH) + " " + args +
                      " >/tmp/rbcom_acceptance_out.txt"
                      " 2>/tmp/rbcom_acceptance_err.txt";
    int rc = std::system(cmd.c_str());
    CliRun r;
    if (rc != -1 && WIFEXITED(rc)) r.exit_code = WEXITSTATUS(rc);
    r.out = slurp("/tmp/rbcom_acceptance_out.txt");
    return r;
}

double value_after(const std::string& text, const std::string& key) {
    auto pos = text.find(key);
    if (pos == std::string::npos) return std::nan("");
    return std::strtod(text.c_str() + pos + key.size(), nullptr);
}

// random real band-limited baseband: Hermitian bins inside |f| <= max_bin*bin
Spectrum random_baseband(Eigen::Index n, double bin_width, Eigen::Index max_bin,
                         std::mt19937_64& rng) {
    Spectrum x = make_spectrum(n, bin_width);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Eigen::Index c = x.carrier_index();
    for (Eigen::Index k = 1; k <= max_bin; ++k) {
        std::complex<double> v(u(rng), u(rng));
        x.values[c + k] = v;
        x.values[c - k] = std::conj(v);
    }
    return x;
}

// --- criterion 1: the baseline link comes out near 19 bit/s/Hz, fast ------

Verdict criterion_point_capacity() {
    const double expect = 18.9263562716527490;
    auto t0 = Clock::now();
    auto run = run_cli(std::string("point ") + RBCOM_PRESET_DIR + "/baseline.cfg");
    double secs = seconds_since(t0);
    double cap = value_after(run.out, "capacity = ");

    Verdict v;
    v.pass = run.exit_code == 0 && cap > 15.0 && std::fabs(cap - expect) <= 0.5 &&
             secs < 1.0;
    v.detail = strf("point capacity %.6f bit/s/Hz in %.3f s, exit %d"
                    "  [need > 15, within 0.5 of %.6f, < 1 s, exit 0]",
                    cap, secs, run.exit_code, expect);
    return v;
}

// --- criterion 2: saturation intensity of the gain medium -----------------

Verdict criterion_saturation_intensity() {
    auto cfg = SystemConfig::baseline();
    double i_s = saturation_intensity(cfg.medium.f_carrier, cfg.medium.sigma,
                                      cfg.medium.tau_f, cfg.constants.planck_h);
    const double target = 2.901e7;
    double rel = std::fabs(i_s - target) / target;

    Verdict v;
    v.pass = rel < 0.01;
    v.detail = strf("I_s = %.6e W/m^2, %.3f%% from %.3e  [need within 1%%]", i_s,
                    100.0 * rel, target);
    return v;
}

// --- criterion 3: modulation-depth sweep shape and threshold --------------

Verdict criterion_depth_sweep() {
    const double m_th_expect = 0.311330500523573190;
    auto base = SystemConfig::baseline();

    auto t0 = Clock::now();
    auto recs = run_sweep(base, {SweepVariable::depth_m, 0.001, 0.5, 200, false});
    double m_th = find_threshold(validate(base).config(), SweepVariable::depth_m);
    double secs = seconds_since(t0);

    bool mono = true;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i)
        if (recs[i].lasing && recs[i + 1].lasing &&
            !(recs[i + 1].ac < recs[i].ac))
            mono = false;
    double cap_small = recs.front().capacity;
    bool small_ok = cap_small < 0.1;
    bool above_ok = true;
    for (const auto& r : recs)
        if (r.value >= m_th_expect && !(r.capacity < 0.1)) above_ok = false;
    double th_err = std::fabs(m_th - m_th_expect);
    bool th_ok = th_err < 1e-6;
    bool time_ok = secs < 5.0;

    Verdict v;
    v.pass = mono && small_ok && above_ok && th_ok && time_ok;
    v.detail = strf("ac strictly decreasing while lasing: %s; "
                    "capacity(m=0.001) = %.6f [need < 0.1]; "
                    "capacity < 0.1 beyond m_th: %s; "
                    "m_th = %.9f off by %.1e [need < 1e-6]; %.3f s [need < 5 s]",
                    yn(mono), cap_small, yn(above_ok), m_th, th_err, secs);
    return v;
}

// --- criterion 4: splitter-reflectivity headroom shrinks with depth -------

Verdict criterion_splitter_thresholds() {
    auto rs_at = [](double m) {
        auto cfg = SystemConfig::baseline();
        cfg.modulation.depth_m = m;
        cfg.modulation.bias_p = 1.0 - m;
        return find_threshold(validate(cfg).config(), SweepVariable::r_s);
    };
    double shallow = rs_at(0.05);
    double deep = rs_at(0.2);
    const double shallow_expect = 0.852413648394504392;
    const double deep_expect = 0.675537518524315827;

    Verdict v;
    v.pass = shallow > deep && std::fabs(shallow - shallow_expect) < 1e-6 &&
             std::fabs(deep - deep_expect) < 1e-6;
    v.detail = strf("r_s threshold %.9f at m=0.05 vs %.9f at m=0.2"
                    "  [need former > latter, each within 1e-6 of reference]",
                    shallow, deep);
    return v;
}

// --- criterion 5: range sweeps beat the LED baseline up to threshold ------

Verdict criterion_distance_vs_led() {
    Verdict v;
    std::string parts;
    for (double alpha : {1e-4, 1e-3, 1e-2}) {
        auto cfg = SystemConfig::baseline();
        cfg.cavity.alpha_air = alpha;
        auto res = validate(cfg);
        double d_th = find_threshold(res.config(), SweepVariable::distance_d);
        auto recs =
            run_sweep(cfg, {SweepVariable::distance_d, 1.0, 50.0, 200, true});

        bool led_mono = true, beats = true;
        double margin = INFINITY;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            if (i + 1 < recs.size() &&
                !(recs[i + 1].led_capacity < recs[i].led_capacity))
                led_mono = false;
            if (recs[i].value < d_th) {
                if (!(recs[i].capacity >= recs[i].led_capacity)) beats = false;
                margin = std::min(margin, recs[i].capacity - recs[i].led_capacity);
            }
        }
        v.pass = v.pass && led_mono && beats;
        parts += strf("%salpha=%.0e: d_th %.0f m, min margin %.2f bit",
                      parts.empty() ? "" : "; ", alpha, d_th, margin);
    }
    v.detail = parts + "  [need capacity >= LED for d < d_th and LED strictly "
                       "decreasing, 200 points over 1..50 m]";
    return v;
}

// --- criterion 6: rate-equation steady state matches the closed form ------

Verdict criterion_dynamics_agree() {
    auto cfg = SystemConfig::baseline();
    auto res = validate(cfg);
    auto params = rate_params_from_config(res.config());
    auto sim = integrate_to_steady({0.0, 0.0}, params);
    double g_dyn = gain_from_n2(sim.state.n2, cfg.medium);
    double g_cf = steady_state_gain(cfg.cavity, cfg.modulation.bias_p,
                                    transmission_coefficient(cfg.cavity));
    double rel = std::fabs(g_dyn - g_cf) / g_cf;

    Verdict v;
    v.pass = sim.converged && rel < 1e-4;
    v.detail = strf("dynamic gain %.9f vs closed form %.9f, rel err %.1e, "
                    "converged: %s  [need < 1e-4]",
                    g_dyn, g_cf, rel, yn(sim.converged));
    return v;
}

// --- criterion 7: OBPF strips every in-bound information layout -----------

Verdict criterion_filterability() {
    std::mt19937_64 rng(771);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    int bad_valid = 0;
    double worst_valid = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        double bx = (0.5 + 7.5 * u(rng)) * 1e9;
        double bin = bx / 64.0;
        auto x = random_baseband(4096, bin, 64, rng);
        Eigen::Index shift = 3 * 64 + 1 + static_cast<Eigen::Index>(u(rng) * 191);
        double fo = static_cast<double>(shift) * bin;
        double bf = (0.05 + 0.9 * u(rng)) * (2.0 * fo - 2.0 * bx);
        double m = 0.02 + 0.3 * u(rng);

        auto y = modulated_spectrum(x, m, 1.0 - m, fo);
        double resid =
            residual_information_energy(apply_obpf(y, ObpfSpec{0.0, bf}));
        worst_valid = std::max(worst_valid, resid);
        if (!(resid < 1e-12)) ++bad_valid;
    }

    int bad_violated = 0;
    double least_violated = INFINITY;
    for (int trial = 0; trial < 100; ++trial) {
        double bx = (0.5 + 7.5 * u(rng)) * 1e9;
        double bin = bx / 64.0;
        auto x = random_baseband(4096, bin, 64, rng);
        Eigen::Index shift = 3 * 64 + 1 + static_cast<Eigen::Index>(u(rng) * 191);
        double fo = static_cast<double>(shift) * bin;
        // passband deliberately wide enough to leak the lower sideband
        double bf = (1.1 + 0.5 * u(rng)) * (2.0 * fo - 2.0 * bx);
        double m = 0.02 + 0.3 * u(rng);

        auto y = modulated_spectrum(x, m, 1.0 - m, fo);
        double resid =
            residual_information_energy(apply_obpf(y, ObpfSpec{0.0, bf}));
        least_violated = std::min(least_violated, resid);
        if (!(resid > 0.0)) ++bad_violated;
    }

    Verdict v;
    v.pass = bad_valid == 0 && bad_violated == 0;
    v.detail = strf("1000 in-bound draws, worst residual %.1e [need < 1e-12]; "
                    "100 out-of-bound draws, smallest residual %.1e [need > 0]",
                    worst_valid, least_violated);
    return v;
}

// --- criterion 8: echo carries no source imprint; raw loop would ----------

Verdict criterion_echo_elimination() {
    auto base = SystemConfig::baseline();
    auto res = validate(base);
    const auto& mo = base.modulation;
    const double fs = 160e9;
    const Eigen::Index n = 8192;
    double eta_d = transmission_coefficient(base.cavity);
    double ac = carrier_amplitude(res.config()).ac;
    ObpfSpec filt{0.0, mo.obpf_bandwidth_Bf};

    auto echo_of = [&](const SampledSignal& x) {
        auto drive = preprocess_source(x, mo.depth_m, mo.bias_p, mo.f_offset);
        auto at_receiver = propagate(modulate(ac, drive), eta_d);
        return echo_field(split(at_receiver, base.cavity.r_s).to_retro,
                          base.cavity.r2, eta_d, mo.bias_p, filt);
    };
    auto e1 = echo_of(random_band_signal(fs, n, 4e9, 201));
    auto e2 = echo_of(random_band_signal(fs, n, 4e9, 202));
    auto e3 = echo_of(multitone_signal(
        fs, n, {{100.0 * fs / static_cast<double>(n), 0.77, 0.1}}));
    double mean = e1.samples.mean();
    double spread = std::max((e1.samples - e2.samples).cwiseAbs().maxCoeff(),
                             (e1.samples - e3.samples).cwiseAbs().maxCoeff());
    double ripple = std::sqrt((e1.samples.array() - mean).square().mean());
    double spread_rel = std::max(spread, ripple) / mean;
    bool source_free = spread_rel < 1e-10;

    // interference-free chain on a fresh source
    auto x = random_band_signal(fs, n, 4e9, 55);
    auto drive = preprocess_source(x, mo.depth_m, mo.bias_p, mo.f_offset);
    auto arms = split(propagate(modulate(ac, drive), eta_d), base.cavity.r_s);
    auto trace = photodetect(arms.to_detector, base.detector,
                             base.medium.cross_section_Ab,
                             base.constants.free_space_impedance_Z0);
    auto out = coherent_demodulate(trace, mo.f_offset, mo.bandwidth_Bx);
    Eigen::VectorXd ref = x.samples.segment(out.start, out.samples.size());
    double corr = pearson_correlation(out.samples, ref);
    double chain_metric = 1.0 - std::fabs(corr);

    // unfiltered echo loop fed the identical source
    EchoChannelConfig echo_cfg;
    echo_cfg.tau_p = 100.0;
    echo_cfg.tau_a = 2.0;
    echo_cfg.sample_interval = 1.0;
    echo_cfg.duration = static_cast<double>(n);
    echo_cfg.r1 = 0.99;
    echo_cfg.r2 = 0.6;
    echo_cfg.eta_d = eta_d;
    double g = static_cast<double>(
        oracle::echo_balance_gain(echo_cfg.r1, echo_cfg.r2, 1.0L, eta_d));
    auto echo = simulate_echo(x.samples, g, echo_cfg, eta_d * ac);
    double echo_metric = interference_metric(echo, x.samples);

    Verdict v;
    v.pass = source_free && corr >= 0.999 && echo_metric > chain_metric;
    v.detail = strf("echo field spread %.1e of carrier [need < 1e-10]; "
                    "demod correlation %.6f [need >= 0.999]; "
                    "interference metric raw %.3f vs filtered %.1e [need raw > "
                    "filtered]",
                    spread_rel, corr, echo_metric, chain_metric);
    return v;
}

// --- criterion 9: every closed form against long-double references --------

Verdict criterion_closed_form_oracles() {
    std::mt19937_64 rng(9001);
    auto u = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    double worst = 0.0;
    std::string worst_op = "none";
    auto compare = [&](const char* name, double got, long double want) {
        double w = static_cast<double>(want);
        double err;
        if (w == 0.0)
            err = got == 0.0 ? 0.0 : INFINITY;
        else
            err = std::fabs(got - w) / std::fabs(w);
        if (err > worst) {
            worst = err;
            worst_op = name;
        }
    };

    int draws = 0, lasing_draws = 0;
    for (int attempt = 0; attempt < 1000 && draws < 100; ++attempt) {
        SystemConfig cfg = SystemConfig::baseline();
        cfg.medium.sigma = u(1.5e-23, 4e-23);
        cfg.medium.tau_f = u(1e-4, 4e-4);
        cfg.medium.eta_pump = u(0.4, 0.9);
        cfg.medium.cross_section_Ab = u(5e-7, 1e-6);
        cfg.medium.length_l = u(0.05, 0.12);
        cfg.medium.f_carrier = u(2.5e14, 3.2e14);
        cfg.medium.f_pump = cfg.medium.f_carrier * u(1.1, 1.4);
        cfg.cavity.r1 = u(0.8, 1.0);
        cfg.cavity.r2 = u(0.6, 1.0);
        cfg.cavity.r_s = u(0.05, 0.4);
        cfg.cavity.eta_diff = u(0.85, 1.0);
        cfg.cavity.alpha_air = u(0.0, 2e-3);
        cfg.cavity.distance_d = u(1.0, 20.0);
        double m = u(0.02, 0.25);
        cfg.modulation.depth_m = m;
        cfg.modulation.bias_p = 1.0 - m;
        double bx = u(1e9, 8e9);
        cfg.modulation.bandwidth_Bx = bx;
        cfg.modulation.f_offset = 4.0 * bx;
        cfg.modulation.obpf_bandwidth_Bf = 2.0 * bx;
        cfg.modulation.mean_sq_x = u(0.1, 0.5);
        cfg.detector.responsivity_rho = u(0.4, 0.9);
        cfg.detector.detect_efficiency = u(0.5, 1.0);
        cfg.detector.load_R_L = u(2e3, 5e4);
        cfg.detector.temperature_T = u(260.0, 330.0);
        cfg.detector.background_current_Ibk = u(1e-4, 8e-3);
        cfg.pump.power_Pin = u(15.0, 60.0);
        double eta_m = u(0.5, 1.0);
        double g_loop = u(0.8, 1.5);
        LedParams led;
        led.power_Pt = u(5.0, 60.0);
        led.area_Ar = u(5e-5, 2e-4);
        led.lens_n = u(1.2, 1.8);
        led.filter_Ts = u(0.8, 1.0);
        led.half_angle = u(40.0, 75.0) * M_PI / 180.0;
        led.fov = u(30.0, 80.0) * M_PI / 180.0;

        auto vres = validate(cfg);
        if (!vres.ok()) continue;
        const auto& vc = vres.config();

        using ld = long double;
        ld ts_o = oracle::splitter_t(cfg.cavity.r_s);
        ld ed_o = oracle::eta_d(cfg.cavity.eta_diff, cfg.cavity.alpha_air,
                                cfg.cavity.distance_d);
        ld p_o = 1.0L - static_cast<ld>(m);
        ld R_o = oracle::reflectivity(ts_o, p_o, ed_o);
        ld is_o = oracle::sat_intensity(cfg.medium.f_carrier, cfg.medium.sigma,
                                        cfg.medium.tau_f);
        ld g0l_o = oracle::g0l(cfg.medium.eta_pump, cfg.pump.power_Pin, is_o,
                               cfg.medium.cross_section_Ab);
        // skip draws parked on the lasing threshold, where the bracket
        // cancels to zero and relative comparison stops meaning anything
        if (fabsl(oracle::bracket(g0l_o, R_o)) < 0.05L) continue;
        ++draws;

        ld ac_o = oracle::carrier_amp(is_o, g0l_o, R_o);
        ld k_o = oracle::detector_k(cfg.detector.detect_efficiency,
                                    cfg.detector.responsivity_rho,
                                    cfg.medium.cross_section_Ab);
        ld mx2 = cfg.modulation.mean_sq_x;
        ld i_o = oracle::mean_current(k_o, cfg.cavity.r_s, ed_o, ac_o, p_o, m, mx2);
        ld sig_o =
            oracle::signal_power(k_o, cfg.cavity.r_s, ed_o, ac_o, p_o, m, mx2);
        ld shot_o = oracle::shot(i_o, cfg.detector.background_current_Ibk,
                                 2.0L * static_cast<ld>(bx));
        ld th_o = oracle::thermal(cfg.detector.temperature_T,
                                  cfg.detector.load_R_L, 2.0L * static_cast<ld>(bx));
        ld snr_o = oracle::coherent_snr(sig_o, shot_o, th_o);
        ld gbal_o = oracle::balance_gain(cfg.cavity.r1, cfg.cavity.r2, ts_o, p_o,
                                         ed_o);
        ld surv_o =
            oracle::loop_survival(cfg.cavity.r1, cfg.cavity.r2, ts_o, p_o, ed_o);
        ld rt = 2.0L * static_cast<ld>(cfg.medium.length_l) / oracle::c0;
        ld tauc_o = oracle::photon_lifetime(surv_o, rt);
        ld pump_o = oracle::pump_rate(cfg.medium.eta_pump, cfg.pump.power_Pin,
                                      cfg.medium.f_pump,
                                      cfg.medium.cross_section_Ab,
                                      cfg.medium.length_l);
        ld ert_o = oracle::echo_round_trip(cfg.cavity.r1, cfg.cavity.r2, eta_m,
                                           ed_o, g_loop);
        ld crt_o = oracle::chain_round_trip(cfg.cavity.r1, cfg.cavity.r2, ts_o,
                                            p_o, ed_o, g_loop);
        ld efa_o = oracle::echo_field_amp(cfg.cavity.r2, ts_o, p_o, ed_o, ac_o);
        ld mL_o = oracle::lambertian(led.half_angle);
        ld iled_o = oracle::led_current(cfg.detector.responsivity_rho,
                                        led.area_Ar, mL_o, cfg.cavity.distance_d,
                                        led.lens_n, led.fov, led.filter_Ts,
                                        cfg.cavity.alpha_air, led.power_Pt);
        ld lsnr_o = oracle::led_snr(iled_o, cfg.detector.background_current_Ibk,
                                    bx, cfg.detector.temperature_T,
                                    cfg.detector.load_R_L);

        double ts = splitter_transmission(cfg.cavity.r_s);
        double ed = transmission_coefficient(cfg.cavity);
        compare("splitter_transmission", ts, ts_o);
        compare("transmission_coefficient", ed, ed_o);
        compare("equivalent_reflectivity",
                equivalent_reflectivity(ts, 1.0 - m, ed), R_o);
        compare("saturation_intensity",
                saturation_intensity(cfg.medium.f_carrier, cfg.medium.sigma,
                                     cfg.medium.tau_f, cfg.constants.planck_h),
                is_o);

        auto ss = carrier_amplitude(vc);
        if (ss.lasing) ++lasing_draws;
        compare("small_signal_gain_length", ss.g0_l, g0l_o);
        compare("reflectivity_R", ss.reflectivity_R, R_o);
        compare("carrier_amplitude", ss.ac, ac_o);

        double kd = detector_k(cfg.detector.detect_efficiency,
                               cfg.detector.responsivity_rho,
                               cfg.medium.cross_section_Ab,
                               cfg.constants.free_space_impedance_Z0);
        compare("detector_k", kd, k_o);
        compare("mean_photocurrent",
                mean_photocurrent(kd, cfg.cavity.r_s, ed, ss.ac, 1.0 - m, m,
                                  cfg.modulation.mean_sq_x),
                i_o);
        compare("signal_power",
                signal_power(kd, cfg.cavity.r_s, ed, ss.ac, 1.0 - m, m,
                             cfg.modulation.mean_sq_x),
                sig_o);

        auto nb = rbcom_budget(vc, ss);
        compare("budget mean_current", nb.mean_current, i_o);
        compare("budget signal_power", nb.signal_power, sig_o);
        compare("budget shot_power", nb.shot_power, shot_o);
        compare("budget thermal_power", nb.thermal_power, th_o);
        compare("budget snr", nb.snr, snr_o);
        compare("budget capacity", nb.capacity, oracle::capacity(snr_o));

        compare("steady_state_gain",
                steady_state_gain(cfg.cavity, 1.0 - m, ed), gbal_o);
        compare("loop_survival", loop_survival(cfg.cavity, 1.0 - m, ed), surv_o);
        compare("photon_lifetime",
                photon_lifetime_from_losses(
                    cfg.cavity, 1.0 - m, ed,
                    medium_round_trip_time(cfg.medium,
                                           cfg.constants.light_speed_v)),
                tauc_o);
        compare("pump_rate",
                pump_rate_from_power(cfg.medium, cfg.pump.power_Pin,
                                     cfg.constants.planck_h),
                pump_o);
        compare("echo round trip",
                round_trip_coefficient(cfg.cavity.r1, cfg.cavity.r2, eta_m, ed,
                                       g_loop),
                ert_o);
        compare("chain round trip",
                round_trip_coefficient(cfg.cavity.r1, cfg.cavity.r2, ts, 1.0 - m,
                                       ed, g_loop),
                crt_o);

        if (ss.lasing) {
            FieldEnvelope retro{160e9,
                                Eigen::VectorXd::Constant(
                                    64, ts * (1.0 - m) * ed * ss.ac),
                                cfg.medium.f_carrier};
            auto ef = echo_field(retro, cfg.cavity.r2, ed, 1.0 - m,
                                 ObpfSpec{0.0, 4e9});
            compare("echo_field amplitude", ef.samples.mean(), efa_o);
        }

        compare("lambertian_order", lambertian_order(led.half_angle), mL_o);
        compare("led_photocurrent",
                led_photocurrent(led, cfg.detector, cfg.cavity.alpha_air,
                                 cfg.cavity.distance_d),
                iled_o);
        auto lb = led_budget(vc, led);
        compare("led snr", lb.snr, lsnr_o);
        compare("led capacity", lb.capacity, oracle::capacity(lsnr_o));
    }

    Verdict v;
    v.pass = draws == 100 && worst <= 1e-10;
    v.detail = strf("%d draws (%d lasing), worst relative error %.1e in %s"
                    "  [need 100 draws, <= 1e-10]",
                    draws, lasing_draws, worst, worst_op.c_str());
    return v;
}

} // namespace

int main() {
    struct Entry {
        const char* title;
        Verdict (*run)();
    };
    const Entry entries[] = {
        {"baseline point capacity", criterion_point_capacity},
        {"saturation intensity", criterion_saturation_intensity},
        {"modulation-depth sweep", criterion_depth_sweep},
        {"splitter reflectivity thresholds", criterion_splitter_thresholds},
        {"range sweep against LED baseline", criterion_distance_vs_led},
        {"rate-equation steady state", criterion_dynamics_agree},
        {"interference filterability", criterion_filterability},
        {"echo interference elimination", criterion_echo_elimination},
        {"closed forms vs references", criterion_closed_form_oracles},
    };

    int failed = 0;
    int id = 0;
    for (const auto& e : entries) {
        ++id;
        Verdict v;
        try {
            v = e.run();
        } catch (const std::exception& ex) {
            v.pass = false;
            v.detail = std::string("exception: ") + ex.what();
        }
        if (!v.pass) ++failed;
        std::printf("criterion %d (%s): %s  %s\n", id, e.title,
                    v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed;
}
