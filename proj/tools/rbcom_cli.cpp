#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "rbcom/config.hpp"
#include "rbcom/csv.hpp"
#include "rbcom/echo_channel.hpp"
#include "rbcom/gain_dynamics.hpp"
#include "rbcom/link_metrics.hpp"
#include "rbcom/signal_chain.hpp"
#include "rbcom/steady_state.hpp"
#include "rbcom/sweep.hpp"

namespace {

using namespace rbcom;

const ValidatedConfig& checked_or_throw(const ValidationResult& res) {
    if (!res.ok()) {
        std::string msg = "invalid config:";
        for (const auto& v : res.violations)
            msg += "\n  " + v.field + ": " + v.constraint;
        throw ConfigError(msg);
    }
    return res.config();
}

void print_field(const char* name, double value, const char* unit = "") {
    std::cout << name << " = " << format_number(value);
    if (*unit) std::cout << ' ' << unit;
    std::cout << '\n';
}

int run_point(const std::string& path) {
    SystemConfig cfg = load_config(path);
    ValidationResult res = validate(cfg);
    const ValidatedConfig& vc = checked_or_throw(res);
    SteadyStateResult ss = carrier_amplitude(vc);
    NoiseBudget nb = rbcom_budget(vc, ss);
    double eta_d = transmission_coefficient(cfg.cavity);

    std::cout << "lasing = " << (nb.lasing ? "yes" : "no") << '\n';
    print_field("carrier_amplitude", ss.ac, "V/m");
    print_field("circulating_intensity", ss.ic, "W/m^2");
    print_field("equivalent_reflectivity", ss.reflectivity_R);
    print_field("small_signal_gain_g0l", ss.g0_l);
    print_field("saturation_intensity", ss.sat_intensity, "W/m^2");
    print_field("one_way_transmission", eta_d);
    print_field("steady_gain",
                steady_state_gain(cfg.cavity, cfg.modulation.bias_p, eta_d));
    print_field("signal_current", nb.mean_current, "A");
    print_field("signal_power", nb.signal_power, "A^2");
    print_field("shot_power", nb.shot_power, "A^2");
    print_field("thermal_power", nb.thermal_power, "A^2");
    print_field("noise_divisor", nb.noise_divisor);
    print_field("snr", nb.snr);
    print_field("capacity", nb.capacity, "bit/s/Hz");
    for (const auto& w : ss.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
}

std::tuple<double, double, int> parse_range(const std::string& spec) {
    double a = 0, b = 0;
    int n = 0;
    char tail = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &tail) != 3)
        throw std::invalid_argument("range must look like start:stop:points");
    return {a, b, n};
}

int run_sweep_cmd(const std::string& path, const std::string& var,
                  const std::string& range, bool led) {
    SystemConfig cfg = load_config(path);
    ValidationResult res = validate(cfg);
    checked_or_throw(res);
    SweepRequest req;
    req.variable = sweep_variable_from_string(var);
    std::tie(req.start, req.stop, req.num_points) = parse_range(range);
    req.with_led = led;
    write_sweep_csv(std::cout, run_sweep(cfg, req), req);
    return 0;
}

int run_threshold(const std::string& path, const std::string& var) {
    SystemConfig cfg = load_config(path);
    ValidationResult res = validate(cfg);
    const ValidatedConfig& vc = checked_or_throw(res);
    double value = find_threshold(vc, sweep_variable_from_string(var));
    std::printf("%.9f\n", value);
    return 0;
}

int run_dynamics(const std::string& path) {
    SystemConfig cfg = load_config(path);
    ValidationResult checked = validate(cfg);
    const ValidatedConfig& vc = checked_or_throw(checked);
    RateEquationParams params = rate_params_from_config(vc);

    std::vector<std::pair<double, GainState>> rows;
    auto observer = [&](double t, const GainState& s) {
        rows.emplace_back(t, s);
    };
    IntegrationResult res = integrate_to_steady({0.0, 0.0}, params, {}, observer);

    const size_t stride = std::max<size_t>(1, rows.size() / 4000);
    std::cout << "t,n2,phi,g\n";
    for (size_t i = 0; i < rows.size(); i += stride) {
        if (i + stride >= rows.size()) i = rows.size() - 1; // keep the endpoint
        const auto& [t, s] = rows[i];
        std::cout << format_number(t) << ',' << format_number(s.n2) << ','
                  << format_number(s.phi) << ','
                  << format_number(gain_from_n2(s.n2, cfg.medium)) << '\n';
        if (i == rows.size() - 1) break;
    }

    double g_dyn = gain_from_n2(res.state.n2, cfg.medium);
    double g_closed = steady_state_gain(cfg.cavity, cfg.modulation.bias_p,
                                        transmission_coefficient(cfg.cavity));
    std::cerr << "dynamic_gain=" << format_number(g_dyn)
              << " closed_form=" << format_number(g_closed) << " rel_err="
              << format_number(std::fabs(g_dyn - g_closed) / g_closed) << '\n';
    if (!res.converged) {
        std::cerr << "did not converge by t=" << format_number(res.t)
                  << ": n2=" << format_number(res.state.n2)
                  << " phi=" << format_number(res.state.phi) << '\n';
        return 1;
    }
    return 0;
}

int run_echo_demo(const std::string& path, std::uint64_t seed, bool scaled,
                  const std::string& source) {
    SystemConfig cfg = load_config(path);
    ValidationResult checked = validate(cfg);
    const ValidatedConfig& vc = checked_or_throw(checked);
    const auto& mod = cfg.modulation;
    const double eta_d = transmission_coefficient(cfg.cavity);
    const double g_steady =
        steady_state_gain(cfg.cavity, mod.bias_p, eta_d);
    SteadyStateResult ss = carrier_amplitude(vc);
    const double ac = ss.lasing ? ss.ac : 1.0;

    // one shared grid for the chain and the echo loop
    double fs = std::max(32.0 * mod.bandwidth_Bx,
                         4.0 * (mod.f_offset + 2.0 * mod.bandwidth_Bx));
    EchoChannelConfig echo;
    echo.r1 = cfg.cavity.r1;
    echo.r2 = cfg.cavity.r2;
    echo.eta_d = eta_d;
    echo.eta_m = 1.0; // config carries no modulator insertion loss
    Eigen::Index n = 8192;
    if (scaled) {
        // desk-scale delays: 100 and 2 samples regardless of geometry
        echo.tau_p = 100.0 / fs;
        echo.tau_a = 2.0 / fs;
    } else {
        echo.tau_p = cfg.cavity.tau_p;
        echo.tau_a = cfg.cavity.tau_a;
        auto dp = std::max<Eigen::Index>(
            1, static_cast<Eigen::Index>(std::llround(echo.tau_p * fs)));
        auto da = std::max<Eigen::Index>(
            1, static_cast<Eigen::Index>(std::llround(echo.tau_a * fs)));
        double gap = std::min((mod.f_offset - 3.0 * mod.bandwidth_Bx) / 2.0,
                              mod.bandwidth_Bx / 2.0);
        auto len = static_cast<Eigen::Index>(std::ceil(2.75 * fs / gap));
        Eigen::Index need = 10 * (2 * dp + 2 * da) + 12 * (len | 1);
        while (n < need) n *= 2;
    }
    echo.sample_interval = 1.0 / fs;
    echo.duration = static_cast<double>(n) / fs;

    SampledSignal x{fs, Eigen::VectorXd::Constant(n, 0.5)};
    if (source == "random")
        x = random_band_signal(fs, n, 0.8 * mod.bandwidth_Bx, seed);
    else if (source != "constant")
        throw std::invalid_argument("source must be 'random' or 'constant'");

    // interference-free chain, noiseless
    auto drive = preprocess_source(x, mod.depth_m, mod.bias_p, mod.f_offset);
    auto field = propagate(modulate(ac, drive), eta_d);
    auto arms = split(field, cfg.cavity.r_s);
    auto trace = photodetect(arms.to_detector, cfg.detector,
                             cfg.medium.cross_section_Ab,
                             cfg.constants.free_space_impedance_Z0);
    auto out = coherent_demodulate(trace, mod.f_offset, mod.bandwidth_Bx);

    // raw echo loop on the identical source
    auto echo_trace = simulate_echo(x.samples, g_steady, echo, eta_d * ac);

    std::cout << "t,x,g,ac,ye,chain\n";
    for (Eigen::Index k = 0; k < n; ++k) {
        double chain = 0.0;
        if (k >= out.start && k < out.start + out.samples.size())
            chain = out.samples[k - out.start];
        std::cout << format_number(echo_trace.t[k]) << ','
                  << format_number(echo_trace.x[k]) << ','
                  << format_number(echo_trace.g[k]) << ','
                  << format_number(echo_trace.ac[k]) << ','
                  << format_number(echo_trace.ye[k]) << ','
                  << format_number(chain) << '\n';
    }

    double t_s = splitter_transmission(cfg.cavity.r_s);
    std::cerr << "loop_gain_raw="
              << format_number(round_trip_coefficient(echo.r1, echo.r2, 1.0,
                                                      eta_d, g_steady))
              << " loop_gain_filtered="
              << format_number(round_trip_coefficient(
                     echo.r1, echo.r2, t_s, mod.bias_p, eta_d, g_steady))
              << '\n';
    try {
        Eigen::VectorXd ref = x.samples.segment(out.start, out.samples.size());
        double chain_metric =
            1.0 - std::fabs(pearson_correlation(out.samples, ref));
        double echo_metric = interference_metric(echo_trace, x.samples);
        std::cerr << "chain_metric=" << format_number(chain_metric)
                  << " echo_metric=" << format_number(echo_metric) << '\n';
    } catch (const std::domain_error& e) {
        std::cerr << "warning: " << e.what()
                  << "; interference metrics skipped\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonant-beam link calculator"};
    app.require_subcommand(1);

    std::string cfg_path, var_name, range_spec, source = "random";
    bool led = false, scaled = false;
    std::uint64_t seed = 1;

    auto* point = app.add_subcommand(
        "point", "steady state and noise budget at one operating point");
    point->add_option("config", cfg_path, "config file")->required();

    auto* sweep = app.add_subcommand("sweep", "1-D parameter sweep, CSV out");
    sweep->add_option("config", cfg_path, "config file")->required();
    sweep->add_option("--var", var_name, "swept variable")->required();
    sweep->add_option("--range", range_spec, "start:stop:points")->required();
    sweep->add_flag("--led", led, "append the LED baseline column");

    auto* threshold =
        app.add_subcommand("threshold", "bisect the lasing threshold");
    threshold->add_option("config", cfg_path, "config file")->required();
    threshold->add_option("--var", var_name, "threshold variable")->required();

    auto* echo = app.add_subcommand(
        "echo-demo", "paired raw-echo vs clean-chain traces, CSV out");
    echo->add_option("config", cfg_path, "config file")->required();
    echo->add_option("--seed", seed, "source seed");
    echo->add_flag("--scaled", scaled, "desk-scale delays");
    echo->add_option("--source", source, "random|constant");

    auto* dynamics =
        app.add_subcommand("dynamics", "rate-equation transient, CSV out");
    dynamics->add_option("config", cfg_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*point) return run_point(cfg_path);
        if (*sweep) return run_sweep_cmd(cfg_path, var_name, range_spec, led);
        if (*threshold) return run_threshold(cfg_path, var_name);
        if (*echo) return run_echo_demo(cfg_path, seed, scaled, source);
        if (*dynamics) return run_dynamics(cfg_path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
